"""Second-variation machinery: the index form, the stability operator, the
helicoid quadratic form with its singular-curve terms, vertical variations,
and numerical instability certificates.

For a minimal surface the second derivative of area under a compactly
supported nonsingular deformation v N + w T equals

    I(u, u) = int |N_h|^{-1} { Z(u)^2 - q u^2 } dA,     u = v + <N,T> w,

with q = |B(Z)+S|^2 - 4 |N_h|^2, and integrates by parts against the
operator

    L(u) = |N_h|^{-1} { Z(Z(u)) + 2 |N_h|^{-1} <N,T> <B(Z),S> Z(u) + q u }.

On a helicoid, variations crossing the singular helices contribute the
extra terms -4 int u^2 dl + int S(u)^2 dl along the singular curves; the
resulting quadratic form Q is the object the instability certificates make
negative.  Directional derivatives along Z are finite differences sampled
along the characteristic curve (a straight line on minimal surfaces), kept
deliberately independent of the closed-form route so the two can
cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ._gauss import NODES_WEIGHTS
from .core import frame_to_euclidean
from .errors import (CertificateNotFound, NonFiniteValue,
                     TubeConditionViolated, TubeTooSmall)
from .geodesics import exp_euclidean
from .numerics import (DiffSpec, QuadratureSpec, Rect, gauss_legendre_1d,
                       integrate_2d, kahan_sum)
from .surfaces import (Chart, RuledChart, integrate_tangent_field,
                       ruled_coordinates, surface_frame)

# ---------------------------------------------------------------------------
# 1-D profiles and separable test functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """A compactly supported scalar profile with its derivative.

    ``breakpoints`` lists interior kinks; quadrature cells never straddle
    them (or the support endpoints).
    """

    value: Callable[[float], float]
    deriv: Callable[[float], float]
    support: tuple[float, float]
    breakpoints: tuple[float, ...] = ()

    def __call__(self, x: float) -> float:
        return self.value(x)

    def cuts(self) -> list[float]:
        lo, hi = self.support
        inner = [b for b in self.breakpoints if lo < b < hi]
        return sorted({lo, hi, *inner})


def cosine_bump(center: float, halfwidth: float) -> Profile:
    """cos^2 arch: C^1, value 1 at the center."""
    w = halfwidth

    def val(x: float) -> float:
        y = (x - center) / w
        return math.cos(0.5 * math.pi * y) ** 2 if abs(y) < 1.0 else 0.0

    def der(x: float) -> float:
        y = (x - center) / w
        return -0.5 * math.pi / w * math.sin(math.pi * y) if abs(y) < 1.0 else 0.0

    return Profile(val, der, (center - w, center + w))


def smooth_bump(center: float, halfwidth: float) -> Profile:
    """The standard C-infinity mollifier bump, normalized to 1 at the center."""
    w = halfwidth

    def val(x: float) -> float:
        y = (x - center) / w
        if abs(y) >= 1.0:
            return 0.0
        return math.exp(1.0 - 1.0 / (1.0 - y * y))

    def der(x: float) -> float:
        y = (x - center) / w
        if abs(y) >= 1.0:
            return 0.0
        d = 1.0 - y * y
        return val(x) * (-2.0 * y / (d * d)) / w

    return Profile(val, der, (center - w, center + w))


def cos_arch(eps0: float) -> Profile:
    """cos(pi x / (2 eps0)) on [-eps0, eps0]: the certificate envelope."""
    def val(x: float) -> float:
        return math.cos(0.5 * math.pi * x / eps0) if abs(x) < eps0 else 0.0

    def der(x: float) -> float:
        return -0.5 * math.pi / eps0 * math.sin(0.5 * math.pi * x / eps0) if abs(x) < eps0 else 0.0

    return Profile(val, der, (-eps0, eps0))


def plateau_ramp(k: float, delta: float) -> Profile:
    """Symmetric cutoff: 1 on [-k, k], linear ramp to 0 over width delta."""
    if not (k > 0.0 and delta > 0.0):
        raise ValueError("k and delta must be positive")

    def val(s: float) -> float:
        a = abs(s)
        if a <= k:
            return 1.0
        if a >= k + delta:
            return 0.0
        return (k + delta - a) / delta

    def der(s: float) -> float:
        a = abs(s)
        if a <= k or a >= k + delta:
            return 0.0
        return -math.copysign(1.0 / delta, s)

    return Profile(val, der, (-k - delta, k + delta), (-k, k))


@dataclass(frozen=True)
class PhiKDelta:
    """Plateau-ramp cutoff with the plateau past the pitch-2 singular radius."""

    k: float
    delta: float

    def __post_init__(self):
        if not self.k > 0.5:
            raise ValueError("k must exceed 1/2")
        if not self.delta > 0.0:
            raise ValueError("delta must be positive")

    def profile(self) -> Profile:
        return plateau_ramp(self.k, self.delta)


@dataclass(frozen=True)
class TestFunction:
    """A compactly supported scalar field on a chart domain with partials."""

    value: Callable[[float, float], float]
    d1: Callable[[float, float], float]
    d2: Callable[[float, float], float]
    support: Rect
    sep: Optional[tuple[Profile, Profile]] = None

    def __call__(self, u1: float, u2: float) -> float:
        return self.value(u1, u2)


def separable(p1: Profile, p2: Profile) -> TestFunction:
    return TestFunction(
        value=lambda a, b: p1.value(a) * p2.value(b),
        d1=lambda a, b: p1.deriv(a) * p2.value(b),
        d2=lambda a, b: p1.value(a) * p2.deriv(b),
        support=(p1.support, p2.support),
        sep=(p1, p2),
    )


def zero_function() -> TestFunction:
    z2 = lambda a, b: 0.0
    return TestFunction(z2, z2, z2, ((0.0, 0.0), (0.0, 0.0)))


def times_nh(chart: Chart, f: TestFunction) -> TestFunction:
    """The test function f * |N_h| with exact chart partials."""

    def value(a: float, b: float) -> float:
        fv = f.value(a, b)
        if fv == 0.0:
            return 0.0
        return fv * surface_frame(chart, (a, b)).Nh_norm

    def make_d(i: int):
        def d(a: float, b: float) -> float:
            fv = f.value(a, b)
            dv = (f.d1 if i == 0 else f.d2)(a, b)
            if fv == 0.0 and dv == 0.0:
                return 0.0
            fr = surface_frame(chart, (a, b))
            return dv * fr.Nh_norm + fv * fr.dNh[i]
        return d

    return TestFunction(value, make_d(0), make_d(1), f.support, None)


def combined_normal_component(chart: Chart, v: TestFunction, w: TestFunction) -> TestFunction:
    """u = v + <N,T> w: the normal component of the deformation v N + w T."""

    def value(a: float, b: float) -> float:
        wv = w.value(a, b)
        vv = v.value(a, b)
        if wv == 0.0:
            return vv
        return vv + surface_frame(chart, (a, b)).NT * wv

    def make_d(i: int):
        def d(a: float, b: float) -> float:
            dv = (v.d1 if i == 0 else v.d2)(a, b)
            wv = w.value(a, b)
            dw = (w.d1 if i == 0 else w.d2)(a, b)
            if wv == 0.0 and dw == 0.0:
                return dv
            fr = surface_frame(chart, (a, b))
            return dv + fr.dNT[i] * wv + fr.NT * dw
        return d

    s1 = (min(v.support[0][0], w.support[0][0]), max(v.support[0][1], w.support[0][1]))
    s2 = (min(v.support[1][0], w.support[1][0]), max(v.support[1][1], w.support[1][1]))
    return TestFunction(value, make_d(0), make_d(1), (s1, s2))


# ---------------------------------------------------------------------------
# Directional derivatives along the characteristic field
# ---------------------------------------------------------------------------

Z_DIFF = DiffSpec(step=1e-4, richardson_levels=1)


def _curve_samples(chart: Chart, u: tuple[float, float], offsets: Sequence[float],
                   which: str) -> dict[float, tuple[float, float]]:
    """Chart points at the given arclength offsets along the Z or S curve."""
    out = {0.0: u}
    for sign in (1.0, -1.0):
        legs = sorted({abs(o) for o in offsets if math.copysign(1.0, o) == sign and o != 0.0})
        cur = u
        pos = 0.0
        for a in legs:
            cur = integrate_tangent_field(chart, cur, sign * a - pos, 2, which)[-1]
            pos = sign * a
            out[pos] = cur
    return out


def tangent_derivative(chart: Chart, fieldfn: Callable[[tuple[float, float]], float],
                       u: tuple[float, float], order: int = 1,
                       which: str = "Z", spec: DiffSpec = Z_DIFF) -> float:
    """Arclength derivative of a chart-coordinate scalar along Z or S.

    Central differences with one Richardson level, sampled on the RK4
    integral curve of the unit field (on minimal surfaces the Z-curve is an
    exact straight line, so the samples sit on the ruling itself).
    """
    h = spec.step
    offs = (h, -h, 0.5 * h, -0.5 * h) if order == 1 else (h, -h, 0.5 * h, -0.5 * h, 0.0)
    pts = _curve_samples(chart, u, offs, which)
    vals = {o: fieldfn(pts[o]) for o in pts}
    for vv in vals.values():
        if not math.isfinite(vv):
            raise NonFiniteValue("non-finite field sample in tangent_derivative")
    if order == 1:
        d1 = (vals[h] - vals[-h]) / (2.0 * h)
        d2 = (vals[0.5 * h] - vals[-0.5 * h]) / h
        return (4.0 * d2 - d1) / 3.0
    s1 = (vals[h] - 2.0 * vals[0.0] + vals[-h]) / (h * h)
    s2 = (vals[0.5 * h] - 2.0 * vals[0.0] + vals[-0.5 * h]) / (0.25 * h * h)
    return (4.0 * s2 - s1) / 3.0


def z_derivative(chart: Chart, fieldfn: Callable[[tuple[float, float]], float],
                 u: tuple[float, float], order: int = 1,
                 spec: DiffSpec = Z_DIFF) -> float:
    """First or second derivative along the characteristic field Z."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    return tangent_derivative(chart, fieldfn, u, order, "Z", spec)


def operator_L(chart: Chart, fieldfn: Callable[[tuple[float, float]], float],
               u: tuple[float, float], spec: DiffSpec = Z_DIFF) -> float:
    """Direct application of the stability operator to a scalar field.

    Uses finite-difference Z-derivatives; independent of ``l_nh_closed``.
    """
    fr = surface_frame(chart, u)
    zv = tangent_derivative(chart, fieldfn, u, 1, "Z", spec)
    zzv = tangent_derivative(chart, fieldfn, u, 2, "Z", spec)
    nh = fr.Nh_norm
    return (zzv + 2.0 / nh * fr.NT * fr.BZS * zv + fr.q * fieldfn(u)) / nh


def l_nh_closed(chart: Chart, u: tuple[float, float]) -> float:
    """Closed form of L applied to |N_h| on a minimal surface:
    4 (|N_h|^{-2} <B(Z),S> - 1), read off the pointwise frame alone.
    """
    fr = surface_frame(chart, u)
    return 4.0 * (fr.BZS / (fr.Nh_norm * fr.Nh_norm) - 1.0)


def jacobi_vertical_quadratic(chart: Chart, u0: tuple[float, float]
                              ) -> tuple[float, float, float, float]:
    """Coefficients (a, b, c) of the vertical component of the ruling Jacobi
    field seeded with S at ``u0``, plus the discriminant b^2 - 4ac.

    The discriminant equals -|N_h|^2 L(|N_h|) at the base point.
    """
    fr = surface_frame(chart, u0)
    nh, nt = fr.Nh_norm, fr.NT
    a = -(fr.BZS + nt * nt - nh * nh) / nh
    b = -2.0 * nt
    c = -nh
    return a, b, c, b * b - 4.0 * a * c


# ---------------------------------------------------------------------------
# Index form and direct second variation
# ---------------------------------------------------------------------------

def _axis_cuts(lo: float, hi: float, fs: Sequence[TestFunction], axis: int) -> list[float]:
    cuts = {lo, hi}
    for f in fs:
        (s1, s2) = f.support
        sup = s1 if axis == 0 else s2
        for c in (sup[0], sup[1]):
            if lo < c < hi:
                cuts.add(c)
        if f.sep is not None:
            for b in f.sep[axis].breakpoints:
                if lo < b < hi:
                    cuts.add(b)
    return sorted(cuts)


def _piecewise_2d(fn, rect: Rect, fs: Sequence[TestFunction],
                  quad: QuadratureSpec) -> float:
    """Tensor quadrature with cells split at support edges and profile kinks."""
    (a1, b1), (a2, b2) = rect
    cuts1 = _axis_cuts(a1, b1, fs, 0)
    cuts2 = _axis_cuts(a2, b2, fs, 1)
    total = []
    for i in range(len(cuts1) - 1):
        for j in range(len(cuts2) - 1):
            piece = ((cuts1[i], cuts1[i + 1]), (cuts2[j], cuts2[j + 1]))
            n1 = max(1, round(quad.cells[0] * (piece[0][1] - piece[0][0]) / (b1 - a1)))
            n2 = max(1, round(quad.cells[1] * (piece[1][1] - piece[1][0]) / (b2 - a2)))
            spec = QuadratureSpec(quad.points_per_cell, (n1, n2))
            total.append(integrate_2d(fn, piece, spec))
    return kahan_sum(total)


def _support_intersection(chart: Chart, fs: Sequence[TestFunction]) -> Rect | None:
    (d1, d2) = chart.domain
    lo1 = max(d1[0], *(f.support[0][0] for f in fs))
    hi1 = min(d1[1], *(f.support[0][1] for f in fs))
    lo2 = max(d2[0], *(f.support[1][0] for f in fs))
    hi2 = min(d2[1], *(f.support[1][1] for f in fs))
    if lo1 >= hi1 or lo2 >= hi2:
        return None
    return ((lo1, hi1), (lo2, hi2))


def index_form_I(chart: Chart, uf: TestFunction, vf: TestFunction,
                 quad: QuadratureSpec) -> float:
    """The second-variation bilinear form
    I(u, v) = int |N_h|^{-1} { Z(u) Z(v) - q u v } dA
    over the (regular) intersection of the supports.
    """
    rect = _support_intersection(chart, (uf, vf))
    if rect is None:
        return 0.0

    def integrand(a: float, b: float) -> float:
        fr = surface_frame(chart, (a, b))
        z1, z2 = fr.z_chart
        zu = z1 * uf.d1(a, b) + z2 * uf.d2(a, b)
        zv = z1 * vf.d1(a, b) + z2 * vf.d2(a, b)
        return (zu * zv - fr.q * uf.value(a, b) * vf.value(a, b)) / fr.Nh_norm * fr.riem_area

    return _piecewise_2d(integrand, rect, (uf, vf), quad)


def _deformed_area(chart: Chart, nodes, s: float) -> float:
    """Area of the deformed patch at variation parameter ``s``.

    ``nodes`` carries, per quadrature node, the weight and the 9-point
    chart-coordinate stencil with precomputed base points and deformation
    vectors; the deformed density is the horizontal cross-product norm of
    finite-difference partials of the composed map.
    """
    terms = []
    for weight, h1, h2, stencil in nodes:
        moved = {}
        for key, (pc, uc) in stencil.items():
            moved[key] = exp_euclidean(pc, uc, s)

        def d_axis(plus, minus, plus2, minus2, h):
            return tuple((4.0 * (plus2[i] - minus2[i]) / h - (plus[i] - minus[i]) / (2.0 * h)) / 3.0
                         for i in range(3))

        f1 = d_axis(moved["p1"], moved["m1"], moved["p1h"], moved["m1h"], h1)
        f2 = d_axis(moved["p2"], moved["m2"], moved["p2h"], moved["m2h"], h2)
        cx, cy, _ct = moved["c"]
        # frame T-coefficients of the partials at the moved center
        c1 = f1[2] - cy * f1[0] + cx * f1[1]
        c2 = f2[2] - cy * f2[0] + cx * f2[1]
        cra = f1[1] * c2 - c1 * f2[1]
        crb = c1 * f2[0] - f1[0] * c2
        dens = math.hypot(cra, crb)
        if not math.isfinite(dens):
            raise NonFiniteValue("deformed area density is not finite")
        terms.append(weight * dens)
    return kahan_sum(terms)


def _variation_nodes(chart: Chart, v: TestFunction, w: TestFunction,
                     quad: QuadratureSpec):
    """Precompute quadrature nodes and exp stencils for a deformation vN+wT."""
    live = [f.support for f in (v, w) if not _is_zero(f)]
    if not live:
        return []
    (d1, d2) = chart.domain
    lo1 = max(d1[0], min(s[0][0] for s in live))
    hi1 = min(d1[1], max(s[0][1] for s in live))
    lo2 = max(d2[0], min(s[1][0] for s in live))
    hi2 = min(d2[1], max(s[1][1] for s in live))
    if lo1 >= hi1 or lo2 >= hi2:
        return []

    gnodes, gweights = NODES_WEIGHTS[quad.points_per_cell]
    (a1, b1), (a2, b2) = ((lo1, hi1), (lo2, hi2))
    n1, n2 = quad.cells
    hc1 = (b1 - a1) / n1
    hc2 = (b2 - a2) / n2
    nodes = []
    for i1 in range(n1):
        m1 = a1 + (i1 + 0.5) * hc1
        for i2 in range(n2):
            m2 = a2 + (i2 + 0.5) * hc2
            for x1, w1 in zip(gnodes, gweights):
                u1 = m1 + 0.5 * hc1 * x1
                for x2, w2 in zip(gnodes, gweights):
                    u2 = m2 + 0.5 * hc2 * x2
                    h1 = 1e-5 * max(1.0, abs(u1))
                    h2 = 1e-5 * max(1.0, abs(u2))
                    stencil = {}
                    for key, (du1, du2) in (
                            ("c", (0.0, 0.0)),
                            ("p1", (h1, 0.0)), ("m1", (-h1, 0.0)),
                            ("p1h", (0.5 * h1, 0.0)), ("m1h", (-0.5 * h1, 0.0)),
                            ("p2", (0.0, h2)), ("m2", (0.0, -h2)),
                            ("p2h", (0.0, 0.5 * h2)), ("m2h", (0.0, -0.5 * h2))):
                        uu = (u1 + du1, u2 + du2)
                        fr = surface_frame(chart, uu)
                        ne = frame_to_euclidean(fr.N)
                        vv = v.value(*uu)
                        ww = w.value(*uu)
                        uvec = (vv * ne[0], vv * ne[1], vv * ne[2] + ww)
                        stencil[key] = (fr.N.base.coords(), uvec)
                    nodes.append((0.25 * hc1 * hc2 * w1 * w2, h1, h2, stencil))
    return nodes


def _is_zero(f: TestFunction) -> bool:
    (s1, s2) = f.support
    return s1[0] >= s1[1] or s2[0] >= s2[1]


def second_variation_direct(chart: Chart, v: TestFunction, w: TestFunction,
                            quad: QuadratureSpec, s_step: float = 1e-3) -> float:
    """A''(0) by deforming the surface pointwise along geodesics.

    Central second difference with two Richardson levels; for nonsingular
    compactly supported variations of a minimal surface this must reproduce
    the index form I(u, u) with u = v + <N,T> w.
    """
    nodes = _variation_nodes(chart, v, w, quad)
    if not nodes:
        return 0.0

    def a_of(s: float) -> float:
        return _deformed_area(chart, nodes, s)

    a0 = a_of(0.0)
    diffs = []
    for h in (s_step, s_step / 2, s_step / 4):
        diffs.append((a_of(h) - 2.0 * a0 + a_of(-h)) / (h * h))
    for level in (1, 2):
        fac = 4.0 ** level
        diffs = [(fac * diffs[i + 1] - diffs[i]) / (fac - 1.0) for i in range(len(diffs) - 1)]
    return diffs[0]


def first_variation_direct(chart: Chart, v: TestFunction, w: TestFunction,
                           quad: QuadratureSpec, s_step: float = 1e-3
                           ) -> tuple[float, float]:
    """(A'(0), A(0)) for the same deformation machinery."""
    nodes = _variation_nodes(chart, v, w, quad)

    def a_of(s: float) -> float:
        return _deformed_area(chart, nodes, s)

    diffs = []
    for h in (s_step, s_step / 2, s_step / 4):
        diffs.append((a_of(h) - a_of(-h)) / (2.0 * h))
    for level in (1, 2):
        fac = 4.0 ** level
        diffs = [(fac * diffs[i + 1] - diffs[i]) / (fac - 1.0) for i in range(len(diffs) - 1)]
    return diffs[0], a_of(0.0)


# ---------------------------------------------------------------------------
# Helicoid closed forms and the singular quadratic form Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HelicoidPointData:
    f: float
    W: float
    Nh: float
    NT: float
    BZS: float
    q: float


def helicoid_closed_forms(R: float, s: float) -> HelicoidPointData:
    """Closed forms of the frame quantities of the pitch-R helicoid at
    ruling parameter s (independent of the angle coordinate)."""
    f = 1.0 / R - R * s * s
    w = math.hypot(f, R * s)
    nh = abs(f) / w
    nt = -R * s / w
    bzs = 1.0 - (1.0 + R * R * s * s) / (w * w)
    q = (R * R - 4.0) * f * f / w ** 4
    return HelicoidPointData(f, w, nh, nt, bzs, q)


def bracket_integral(k: float, delta: float) -> float:
    """C(k, delta) = (1/delta^2) [F(k+delta) - F(k)] with the closed
    antiderivative F(s) = 4 s^3/3 + 3 s + log((2s-1)/(2s+1)) of the ramp
    integrand (16 s^4 + 8 s^2 + 1)/(4 s^2 - 1)."""
    if not k > 0.5:
        raise ValueError("k must exceed 1/2")
    if not delta > 0.0:
        raise ValueError("delta must be positive")

    def F(s: float) -> float:
        return 4.0 * s ** 3 / 3.0 + 3.0 * s + math.log((2.0 * s - 1.0) / (2.0 * s + 1.0))

    return (F(k + delta) - F(k)) / (delta * delta)


def bracket_integral_quadrature(k: float, delta: float,
                                quad: QuadratureSpec) -> float:
    """Independent evaluation of C(k, delta) by quadrature of the rational
    integrand; cross-checks the closed antiderivative."""
    if not k > 0.5:
        raise ValueError("k must exceed 1/2")
    val = gauss_legendre_1d(
        lambda s: (16.0 * s ** 4 + 8.0 * s ** 2 + 1.0) / (4.0 * s * s - 1.0),
        k, k + delta, quad)
    return val / (delta * delta)


def _profile_integral(p: Profile, fn: Callable[[float], float],
                      quad: QuadratureSpec) -> float:
    """Integral of fn over the support of p, split at its kinks."""
    cuts = p.cuts()
    total = []
    span = cuts[-1] - cuts[0]
    for i in range(len(cuts) - 1):
        cells = max(1, round(quad.cells[0] * (cuts[i + 1] - cuts[i]) / span))
        total.append(gauss_legendre_1d(fn, cuts[i], cuts[i + 1],
                                       QuadratureSpec(quad.points_per_cell, (cells, 1))))
    return kahan_sum(total)


TUBE_MARGIN = 0.05


def _check_tube(s_prof: Profile, R: float, margin: float) -> None:
    for s0 in (1.0 / R, -1.0 / R):
        for j in range(33):
            s = s0 - margin + 2.0 * margin * j / 32
            if s_prof.deriv(s) != 0.0:
                raise TubeConditionViolated(
                    f"test function varies along rulings near s = {s0}")


def q_form(R: float, u: TestFunction, quad: QuadratureSpec,
           margin: float = TUBE_MARGIN) -> float:
    """The helicoid stability form

    Q(u) = int |N_h|^{-1} (Z(u)^2 - q u^2) dA
           - 4 int_{singular} u^2 dl + int_{singular} S(u)^2 dl

    in the (eps, s) ruled coordinates of the pitch-R helicoid; the angular
    coordinate is arclength on both singular helices s = +-1/R.  ``u`` must
    be separable with the s-factor constant around the singular helices.
    """
    if u.sep is None:
        raise TubeConditionViolated("q_form requires a separable test function")
    phi, psi = u.sep
    _check_tube(psi, R, margin)
    if abs(helicoid_closed_forms(R, 1.0 / R).W - 1.0) > 1e-12:
        raise NonFiniteValue("singular helix is not arclength-parameterized")

    int_phi2 = _profile_integral(phi, lambda e: phi.value(e) ** 2, quad)
    int_dphi2 = _profile_integral(phi, lambda e: phi.deriv(e) ** 2, quad)

    # ramp term: |N_h|^{-1} Z(u)^2 dA = (W^2/|f|) (du/ds)^2 deps ds
    def ramp(s: float) -> float:
        d = helicoid_closed_forms(R, s)
        return d.W * d.W / abs(d.f) * psi.deriv(s) ** 2

    cuts = sorted({*psi.cuts(), *(c for c in (1.0 / R, -1.0 / R)
                                  if psi.support[0] < c < psi.support[1])})
    span = cuts[-1] - cuts[0]
    ramp_parts = []
    pot_parts = []
    for i in range(len(cuts) - 1):
        lo, hi = cuts[i], cuts[i + 1]
        mid = 0.5 * (lo + hi)
        cells = max(1, round(quad.cells[0] * (hi - lo) / span))
        spec = QuadratureSpec(quad.points_per_cell, (cells, 1))
        if psi.deriv(mid) != 0.0 or psi.deriv(0.5 * (lo + mid)) != 0.0:
            ramp_parts.append(gauss_legendre_1d(ramp, lo, hi, spec))
        if R != 2.0:
            def pot(s: float) -> float:
                d = helicoid_closed_forms(R, s)
                return abs(d.f) / (d.W * d.W) * psi.value(s) ** 2
            pot_parts.append(gauss_legendre_1d(pot, lo, hi, spec))

    t1 = int_phi2 * kahan_sum(ramp_parts)
    t2 = -(R * R - 4.0) * int_phi2 * kahan_sum(pot_parts) if R != 2.0 else 0.0
    trace2 = psi.value(1.0 / R) ** 2 + psi.value(-1.0 / R) ** 2
    t3 = -4.0 * trace2 * int_phi2
    t4 = trace2 * int_dphi2
    return t1 + t2 + t3 + t4


# ---------------------------------------------------------------------------
# Instability certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InstabilityCertificate:
    """An explicit test function plus quadrature evidence that the relevant
    quadratic form is negative.  ``delta`` and ``C`` are set for helicoid
    certificates; ruled-coordinate certificates carry the scanned k only.
    """

    surface: str
    k: float
    eps0: float
    Q_value: float
    quad: QuadratureSpec
    delta: Optional[float] = None
    C: Optional[float] = None

    def to_text(self) -> str:
        lines = [f"surface={self.surface}",
                 f"k={self.k:.17g}",
                 f"delta={'' if self.delta is None else format(self.delta, '.17g')}",
                 f"eps0={self.eps0:.17g}",
                 f"C={'' if self.C is None else format(self.C, '.17g')}",
                 f"Q_value={self.Q_value:.17g}",
                 f"quad_points_per_cell={self.quad.points_per_cell}",
                 f"quad_cells={self.quad.cells[0]},{self.quad.cells[1]}"]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "InstabilityCertificate":
        kv = {}
        for line in text.strip().splitlines():
            key, _, val = line.partition("=")
            kv[key.strip()] = val.strip()
        cells = tuple(int(c) for c in kv["quad_cells"].split(","))
        return cls(
            surface=kv["surface"],
            k=float(kv["k"]),
            eps0=float(kv["eps0"]),
            Q_value=float(kv["Q_value"]),
            quad=QuadratureSpec(int(kv["quad_points_per_cell"]), cells),
            delta=float(kv["delta"]) if kv.get("delta") else None,
            C=float(kv["C"]) if kv.get("C") else None,
        )


def h2_certificate_test_function(k: float, delta: float, eps0: float) -> TestFunction:
    return separable(cos_arch(eps0), PhiKDelta(k, delta).profile())


def certify_instability_h2(k_values: Sequence[float] | None = None,
                           eps0_values: Sequence[float] | None = None,
                           quad: QuadratureSpec | None = None) -> InstabilityCertificate:
    """Deterministic certificate search for the pitch-2 helicoid.

    Scans k with delta = 2k + 1 for a bracket value C(k, delta) < 8, then
    the smallest power-of-two envelope halfwidth eps0 whose Rayleigh
    quotient 2 (pi/(2 eps0))^2 falls under 8 - C; the certificate is the
    lexicographically first passing grid point, with Q evaluated by
    quadrature.
    """
    if k_values is None:
        k_values = [0.51 + 0.01 * j for j in range(250)]
    if eps0_values is None:
        eps0_values = [float(2 ** m) for m in range(16)]
    if quad is None:
        quad = QuadratureSpec(16, (64, 1))
    for k in k_values:
        if k < 0.5 + TUBE_MARGIN:
            continue  # plateau must cover the singular helices with margin
        delta = 2.0 * k + 1.0
        c = bracket_integral(k, delta)
        if not c < 8.0:
            continue
        for eps0 in eps0_values:
            rayleigh = 2.0 * (math.pi / (2.0 * eps0)) ** 2
            if not rayleigh < 8.0 - c:
                continue
            u = h2_certificate_test_function(k, delta, eps0)
            q_val = q_form(2.0, u, quad)
            if q_val < 0.0:
                return InstabilityCertificate("helicoid R=2", k, eps0, q_val,
                                              quad, delta=delta, C=c)
    raise CertificateNotFound("no (k, eps0) grid point produced Q < 0")


def scaled_helicoid_certificate(base: InstabilityCertificate,
                                R: float) -> InstabilityCertificate:
    """Certificate for the pitch-R helicoid derived from the pitch-2 one.

    The dilation with lam = log(2/R) carries the pitch-2 helicoid onto the
    pitch-R one, maps variations to variations, and scales every area (hence
    the second derivative) by exactly e^{3 lam}; the certificate therefore
    reports e^{3 lam} times the base Q value, with the ruled-coordinate
    parameters scaled by e^{lam}.  Note the pulled-back scalar test function
    is not itself the deformation data on the pitch-R surface, so its own
    quadratic form is a different (and not always negative) quantity.
    """
    lam = math.log(2.0 / R)
    scale = math.exp(lam)
    return InstabilityCertificate(f"helicoid R={R:g}", scale * base.k,
                                  scale * base.eps0,
                                  math.exp(3.0 * lam) * base.Q_value,
                                  base.quad, delta=scale * base.delta, C=None)


def ruled_index_value(chart: Chart, ruled: RuledChart, phi: Profile, k: float,
                      quad: QuadratureSpec) -> float:
    """The reduced index value of the test function phi(eps) phi(s/k) in
    ruled coordinates:

        int (du/ds)^2 deps ds - (3/4) int L(|N_h|) u^2 deps ds.

    L(|N_h|) along each ruling comes from the vertical Jacobi quadratic at
    the base point: the discriminant is translation-invariant along the
    ruling, so L at ruling parameter s is -(b^2-4ac)/(a s^2 + b s + c)^2.
    """
    gnodes, gweights = NODES_WEIGHTS[quad.points_per_cell]

    lo, hi = phi.support
    ncells = quad.cells[0]
    h = (hi - lo) / ncells
    eps_nodes = []
    for cidx in range(ncells):
        mid = lo + (cidx + 0.5) * h
        for x, w in zip(gnodes, gweights):
            eps_nodes.append((mid + 0.5 * h * x, 0.5 * h * w))

    int_phi2 = kahan_sum([w * phi.value(e) ** 2 for e, w in eps_nodes])
    int_dphi2 = kahan_sum([w * phi.deriv(e) ** 2 for e, w in eps_nodes])

    coeffs = []
    for e, w in eps_nodes:
        uc = ruled.curve_chart_point(e)
        a, b, c, disc = jacobi_vertical_quadratic(chart, uc)
        coeffs.append((a, b, c, -disc))

    s_lo, s_hi = k * lo, k * hi
    s_cells = max(quad.cells[1], int(math.ceil(k)) * 2)
    hs = (s_hi - s_lo) / s_cells
    s_nodes = []
    for cidx in range(s_cells):
        mid = s_lo + (cidx + 0.5) * hs
        for x, w in zip(gnodes, gweights):
            s_nodes.append((mid + 0.5 * hs * x, 0.5 * hs * w))

    second_terms = []
    for (e, we), (a, b, c, d) in zip(eps_nodes, coeffs):
        pe2 = phi.value(e) ** 2
        if pe2 == 0.0 or d == 0.0:
            continue
        acc = []
        for s, ws in s_nodes:
            vt = a * s * s + b * s + c
            acc.append(ws * phi.value(s / k) ** 2 * d / (vt * vt))
        second_terms.append(we * pe2 * kahan_sum(acc))
    second = kahan_sum(second_terms)
    return int_dphi2 * int_phi2 / k - 0.75 * second


def certify_instability_nosing(chart: Chart, u0: tuple[float, float],
                               k_list: Sequence[int], phi: Profile,
                               quad: QuadratureSpec | None = None
                               ) -> tuple[InstabilityCertificate, RuledChart]:
    """Instability certificate for a complete minimal surface patch with no
    singular points and <N,T> != 0 somewhere (e.g. the catenoid): scan the
    widening test functions phi(eps) phi(s/k) until the reduced index value
    turns negative.
    """
    if quad is None:
        quad = QuadratureSpec(16, (8, 8))
    lo, hi = phi.support
    eps_range = max(abs(lo), abs(hi))
    k_max = max(k_list)
    ruled = ruled_coordinates(chart, u0, eps_range,
                              (-k_max * eps_range, k_max * eps_range))
    for k in k_list:
        val = ruled_index_value(chart, ruled, phi, float(k), quad)
        if val < 0.0:
            return (InstabilityCertificate(
                f"{type(chart).__name__} ruled at {u0!r}", float(k), eps_range,
                val, quad), ruled)
    raise CertificateNotFound(f"index value stayed nonnegative for k in {list(k_list)!r}")


# ---------------------------------------------------------------------------
# Vertical variations near the singular helices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerticalVariation:
    """A vertical deformation profile w(eps), constant along rulings.

    ``h_curv`` is the Euclidean geodesic curvature of the xy-projection of
    the singular curve; for the pitch-R helicoid it is the constant -R.
    """

    w: Profile
    r_stencil: float = 1e-3
    h_curv: Optional[float] = None


def vertical_variation_area(R: float, vv: VerticalVariation, r: float,
                            quad: QuadratureSpec, s0: float = 0.25) -> float:
    """Area of the vertically deformed tube around one singular helix:

        A(r) = int int | s(-2 + s h) + r wdot(eps) | ds deps,

    over supp(w) x [-s0, s0].  The kink in |.| is split at the exact root
    of the quadratic, so each s-piece integrates exactly; TubeTooSmall is
    raised when the kink leaves the window.
    """
    h = vv.h_curv if vv.h_curv is not None else -R

    def prim(s: float, rw: float) -> float:
        return h * s ** 3 / 3.0 - s * s + rw * s

    def inner(e: float) -> float:
        rw = r * vv.w.deriv(e)
        if h == 0.0:
            s_star = 0.5 * rw
        else:
            disc = 1.0 - h * rw
            if disc <= 0.0:
                raise TubeTooSmall("deformation too large for the tube")
            s_star = (1.0 - math.sqrt(disc)) / h
            far = (1.0 + math.sqrt(disc)) / h
            if abs(far) <= s0:
                raise TubeTooSmall("second kink entered the window")
        if abs(s_star) >= s0:
            raise TubeTooSmall("kink left the window")
        return abs(prim(s_star, rw) - prim(-s0, rw)) + abs(prim(s0, rw) - prim(s_star, rw))

    return _profile_integral(vv.w, inner, quad)


def vertical_variation_second_difference(R: float, vv: VerticalVariation,
                                         quad: QuadratureSpec, s0: float = 0.25
                                         ) -> tuple[float, float]:
    """(second, first) central r-differences of A at r = 0."""
    h = vv.r_stencil
    a_p = vertical_variation_area(R, vv, h, quad, s0)
    a_0 = vertical_variation_area(R, vv, 0.0, quad, s0)
    a_m = vertical_variation_area(R, vv, -h, quad, s0)
    return (a_p - 2.0 * a_0 + a_m) / (h * h), (a_p - a_m) / (2.0 * h)


# ---------------------------------------------------------------------------
# Boundary flux of the divergence terms
# ---------------------------------------------------------------------------

def boundary_flux(R: float, v: TestFunction, sigma: float,
                  quad: QuadratureSpec | None = None) -> float:
    """Flux of the second-variation divergence terms through the boundary of
    the tube of radius sigma around the singular helices.

    The integrand is (xi + mu) <Z, eta> with xi = <N,T>(1 - <B(Z),S>) v^2
    and mu the vertical-deformation counterpart with w = v/<N,T>; eta is
    the outward conormal.  As sigma -> 0 the total tends to
    4 int_{singular} v^2 dl.
    """
    if not (0.0 < sigma < 1.0 / (2.0 * R)):
        raise ValueError("sigma must lie in (0, 1/(2R))")
    if quad is None:
        quad = QuadratureSpec(16, (32, 1))
    phi_sq_cache: dict[float, float] = {}

    def eps_integral(level: float) -> float:
        if level not in phi_sq_cache:
            (lo, hi) = v.support[0]
            phi_sq_cache[level] = gauss_legendre_1d(
                lambda e: v.value(e, level) ** 2, lo, hi, quad)
        return phi_sq_cache[level]

    total = []
    for s_curve, sgn in ((1.0 / R, -1.0), (-1.0 / R, 1.0)):
        for level in (s_curve - sigma, s_curve + sigma):
            d = helicoid_closed_forms(R, level)
            xi = d.NT * (1.0 - d.BZS)
            mu = d.Nh * d.Nh * (1.0 - 3.0 * d.BZS) / d.NT
            total.append(sgn * (xi + mu) * d.W * eps_integral(level))
    return kahan_sum(total)


def boundary_flux_extrapolated(R: float, v: TestFunction,
                               sigmas: Sequence[float] = (1e-2, 1e-3, 1e-4),
                               quad: QuadratureSpec | None = None) -> float:
    """Richardson extrapolation of the flux over a decreasing sigma ladder
    (ratio-10 first-order rule on the two smallest values)."""
    vals = [boundary_flux(R, v, s, quad) for s in sigmas]
    return (10.0 * vals[-1] - vals[-2]) / 9.0
