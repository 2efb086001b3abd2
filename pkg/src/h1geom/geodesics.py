"""Closed-form Riemannian geodesics of the left-invariant metric, and
Jacobi fields of one-parameter geodesic families.

With Euclidean initial data (x0, y0, t0), velocity (A, B, C) and the
conserved vertical momentum l = C - A y0 + B x0, the flow is

    x(s) = x0 + s (A f(2ls) + B g(2ls))
    y(s) = y0 + s (-A g(2ls) + B f(2ls))
    t(s) = t0 + l s + (A^2+B^2) s^2 h(2ls)
         + (A x0 + B y0) s g(2ls) + (A y0 - B x0) s f(2ls)

where f = sin(x)/x, g = (1-cos x)/x, h = (x - sin x)/x^2.  Horizontal or
vertical initial velocities give straight lines.  Jacobi fields are
obtained by differentiating this closed flow across the family parameter,
not by integrating the Jacobi equation; the equation residual serves as a
test oracle only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import (FrameVector, Point, connection_apply, curvature_R, dot,
                   euclidean_to_frame, frame_to_euclidean, jop)

SERIES_CUTOFF = 1e-4


def helpers_fgh(x: float) -> tuple[float, float, float]:
    """(sin x / x, (1 - cos x)/x, (x - sin x)/x^2), series-stabilized near 0.

    Three Maclaurin terms below |x| = 1e-4; the truncation (~1e-28) is far
    under round-off, so the switch is seamless.
    """
    if abs(x) < SERIES_CUTOFF:
        x2 = x * x
        f = 1.0 - x2 / 6.0 + x2 * x2 / 120.0
        g = x * (0.5 - x2 / 24.0 + x2 * x2 / 720.0)
        h = x * (1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0)
        return f, g, h
    s, c = math.sin(x), math.cos(x)
    return s / x, (1.0 - c) / x, (x - s) / (x * x)


@dataclass(frozen=True)
class GeodesicArc:
    """Initial data of a geodesic; ``lam`` is the conserved T-component."""

    p0: Point
    v0: FrameVector

    def __post_init__(self):
        if self.v0.base.coords() != self.p0.coords():
            raise ValueError("initial velocity must be based at p0")

    @property
    def lam(self) -> float:
        return self.v0.c


def exp_geodesic(arc: GeodesicArc, s: float) -> tuple[Point, FrameVector]:
    """Point and velocity of the geodesic at arc-parameter ``s``."""
    p = arc.p0
    A, B, _ = frame_to_euclidean(arc.v0)
    lam = arc.lam
    x2ls = 2.0 * lam * s
    f, g, h = helpers_fgh(x2ls)
    x = p.x + s * (A * f + B * g)
    y = p.y + s * (-A * g + B * f)
    t = (p.t + lam * s + (A * A + B * B) * s * s * h
         + (A * p.x + B * p.y) * s * g + (A * p.y - B * p.x) * s * f)
    q = Point(x, y, t)
    co, si = math.cos(x2ls), math.sin(x2ls)
    vx = A * co + B * si
    vy = -A * si + B * co
    vt = lam + (A * A + B * B) * s * g + (A * p.x + B * p.y) * si + (A * p.y - B * p.x) * co
    return q, euclidean_to_frame(q, (vx, vy, vt))


def exp_point(p: Point, v: FrameVector, s: float = 1.0) -> Point:
    return exp_geodesic(GeodesicArc(p, v), s)[0]


def exp_euclidean(p: tuple[float, float, float], v: tuple[float, float, float],
                  s: float = 1.0) -> tuple[float, float, float]:
    """Geodesic endpoint on raw Euclidean coordinates (hot-loop variant)."""
    x0, y0, t0 = p
    A, B, C = v
    lam = C - A * y0 + B * x0
    f, g, h = helpers_fgh(2.0 * lam * s)
    return (x0 + s * (A * f + B * g),
            y0 + s * (-A * g + B * f),
            t0 + lam * s + (A * A + B * B) * s * s * h
            + (A * x0 + B * y0) * s * g + (A * y0 - B * x0) * s * f)


@dataclass(frozen=True)
class JacobiSample:
    """Variation field of a geodesic family and its covariant s-derivatives."""

    V: FrameVector
    Vprime: FrameVector
    Vsecond: FrameVector


Curve = Callable[[float], Point]
FieldAlong = Callable[[float], FrameVector]

EPS_STEP = 1e-5          # family-parameter stencil, one Richardson level
JACOBI_S_STEP = 1e-2     # s-stencil for covariant derivatives


def _family_point(alpha: Curve, U: FieldAlong, eps: float, s: float) -> Point:
    a = alpha(eps)
    u = U(eps)
    if u.base.coords() != a.coords():
        u = FrameVector(u.a, u.b, u.c, a)
    return exp_geodesic(GeodesicArc(a, u), s)[0]


def _vec_richardson(fn: Callable[[float], tuple], x: float, h: float) -> tuple:
    """First derivative of a tuple-valued function, one Richardson level."""
    lo = fn(x - h)
    hi = fn(x + h)
    lo2 = fn(x - h / 2)
    hi2 = fn(x + h / 2)
    out = []
    for i in range(len(lo)):
        d1 = (hi[i] - lo[i]) / (2.0 * h)
        d2 = (hi2[i] - lo2[i]) / h
        out.append((4.0 * d2 - d1) / 3.0)
    return tuple(out)


def covariant_derivative_along(field: FieldAlong, velocity: FieldAlong,
                               s: float, h: float = JACOBI_S_STEP) -> FrameVector:
    """Covariant derivative of a field sampled along a curve.

    Differentiates the frame coefficients in the curve parameter and adds
    the connection correction contracted with the curve velocity.
    """
    dcoeff = _vec_richardson(lambda u: field(u).coeffs(), s, h)
    w = field(s)
    vel = velocity(s)
    out = list(dcoeff)
    for k in range(3):
        corr = connection_apply(vel.coeffs(), k)
        wk = w.coeffs()[k]
        out[0] += wk * corr[0]
        out[1] += wk * corr[1]
        out[2] += wk * corr[2]
    return FrameVector(out[0], out[1], out[2], w.base)


def jacobi_field(alpha: Curve, U: FieldAlong, eps: float, s: float,
                 eps_step: float = EPS_STEP,
                 s_step: float = JACOBI_S_STEP) -> JacobiSample:
    """Variation field V = dF/d(eps) of F(eps, s) = exp_{alpha(eps)}(s U).

    V comes from a Richardson-extrapolated central difference across the
    family (step ``eps_step``); V' and V'' from covariant s-differentiation
    of the sampled field.
    """

    def v_at(s_val: float) -> FrameVector:
        base = _family_point(alpha, U, eps, s_val)
        de = _vec_richardson(
            lambda e: _family_point(alpha, U, e, s_val).coords(), eps, eps_step)
        return euclidean_to_frame(base, de)

    def vel_at(s_val: float) -> FrameVector:
        a = alpha(eps)
        u = U(eps)
        if u.base.coords() != a.coords():
            u = FrameVector(u.a, u.b, u.c, a)
        return exp_geodesic(GeodesicArc(a, u), s_val)[1]

    def vprime_at(s_val: float) -> FrameVector:
        return covariant_derivative_along(v_at, vel_at, s_val, s_step)

    vsecond = covariant_derivative_along(vprime_at, vel_at, s, s_step)
    return JacobiSample(v_at(s), vprime_at(s), vsecond)


def jacobi_residual(sample: JacobiSample, gammavel: FrameVector) -> float:
    """Norm of V'' + R(gamma', V) gamma' at the sample point."""
    rv = curvature_R(gammavel, sample.V, gammavel)
    return (sample.Vsecond + rv).norm()


def straight_line_residual(sample: JacobiSample, gammavel: FrameVector) -> float:
    """Residual of the reduced Jacobi equation along horizontal lines:
    V'' - 3 <V, J(gamma')> J(gamma') + |gamma'|^2 <V, T> T.
    """
    jg = jop(gammavel)
    tvec = FrameVector(0.0, 0.0, 1.0, gammavel.base)
    speed2 = dot(gammavel, gammavel)
    term = (sample.Vsecond
            - jg.scaled(3.0 * dot(sample.V, jg))
            + tvec.scaled(speed2 * dot(sample.V, tvec)))
    return term.norm()


def commutation_residual(alpha: Curve, U: FieldAlong, eps: float, s: float,
                         eps_step: float = EPS_STEP,
                         s_step: float = JACOBI_S_STEP) -> float:
    """Norm of [gamma', V] = D_{gamma'} V - D_V gamma' along the family."""

    def v_at(s_val: float) -> FrameVector:
        base = _family_point(alpha, U, eps, s_val)
        de = _vec_richardson(
            lambda e: _family_point(alpha, U, e, s_val).coords(), eps, eps_step)
        return euclidean_to_frame(base, de)

    def arc_at(e: float) -> GeodesicArc:
        a = alpha(e)
        u = U(e)
        if u.base.coords() != a.coords():
            u = FrameVector(u.a, u.b, u.c, a)
        return GeodesicArc(a, u)

    def vel_at(s_val: float) -> FrameVector:
        return exp_geodesic(arc_at(eps), s_val)[1]

    d_gamma_v = covariant_derivative_along(v_at, vel_at, s, s_step)

    # D_V gamma': differentiate the velocity field across the family and
    # contract the connection with V.
    dcoeff = _vec_richardson(
        lambda e: exp_geodesic(arc_at(e), s)[1].coeffs(), eps, eps_step)
    vel = vel_at(s)
    v = v_at(s)
    out = list(dcoeff)
    for k in range(3):
        corr = connection_apply(v.coeffs(), k)
        wk = vel.coeffs()[k]
        out[0] += wk * corr[0]
        out[1] += wk * corr[1]
        out[2] += wk * corr[2]
    d_v_gamma = FrameVector(out[0], out[1], out[2], vel.base)
    return (d_gamma_v - d_v_gamma).norm()
