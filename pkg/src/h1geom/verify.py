"""Named residual checks for every identity the library claims to satisfy.

Each check evaluates one identity over deterministic sample sets and
reports the worst residual together with its pass threshold.  The CLI
``verify`` command renders these as one line per check; the test suite
asserts them individually.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Iterable

from . import surfaces
from .core import (FrameField, FrameVector, Point, ORIGIN, T_FIELD, X_FIELD,
                   Y_FIELD, covariant_derivative, covariant_field,
                   curvature_R, dilate, dot, euclidean_to_frame, flow,
                   frame_at, frame_to_euclidean, group_inverse, group_mul,
                   jop, left_translation_jacobian, lie_bracket, ricci,
                   rotate_z)
from .geodesics import (GeodesicArc, commutation_residual,
                        covariant_derivative_along, exp_geodesic, helpers_fgh,
                        jacobi_field, jacobi_residual, straight_line_residual)
from .numerics import QuadratureSpec, gauss_legendre_1d, integrate_2d
from .stability import (InstabilityCertificate, Profile, VerticalVariation,
                        boundary_flux_extrapolated, bracket_integral,
                        bracket_integral_quadrature, certify_instability_h2,
                        certify_instability_nosing, cosine_bump,
                        first_variation_direct, h2_certificate_test_function,
                        helicoid_closed_forms, index_form_I,
                        jacobi_vertical_quadratic, l_nh_closed, operator_L,
                        q_form, ruled_index_value, second_variation_direct,
                        separable, smooth_bump, tangent_derivative, times_nh,
                        vertical_variation_second_difference, zero_function)
from .surfaces import (CatenoidChart, Chart, GraphChart, HelicoidChart,
                       VerticalPlaneChart, area, characteristic_ray, dilated,
                       integrate_tangent_field, paraboloid_chart, rotated,
                       ruled_coordinates, singular_locus, surface_frame)


@dataclass(frozen=True)
class CheckResult:
    name: str
    identity: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.threshold

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return (f"{self.name:40s} {self.identity:44s} "
                f"{self.residual:12.3e} {self.threshold:9.1e}  {flag}")


def _nmax(*vals: float) -> float:
    return max(abs(v) for v in vals)


def _vnorm(v: FrameVector) -> float:
    return v.norm()


_GRID = {
    "catenoid": [(th, ph) for th in (0.3, 1.4, 2.6, 3.9, 5.1)
                 for ph in (-1.3, -0.6, -0.1, 0.0, 0.4, 0.9, 1.4)],
    "helicoid": [(s, e) for s in (-1.3, -0.8, -0.35, -0.1, 0.2, 0.42, 0.62, 1.1)
                 for e in (-1.1, 0.0, 0.8)],
    "paraboloid": [(x, y) for x in (0.3, 0.75, 1.3) for y in (-0.9, -0.2, 0.6, 1.2)],
    "plane": [(x, y) for x in (-0.8, 0.1, 0.9) for y in (-0.7, 0.4)],
}


def _random_regular_points(chart: Chart, n: int, seed: int,
                           ranges: tuple[tuple[float, float], tuple[float, float]],
                           min_nh: float = 0.05) -> list[tuple[float, float]]:
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        u = (rng.uniform(*ranges[0]), rng.uniform(*ranges[1]))
        fr = surface_frame(chart, u, singular_ok=True)
        if fr.Nh_norm > min_nh:
            pts.append(u)
    return pts


# ---------------------------------------------------------------------------
# core suite
# ---------------------------------------------------------------------------

_CONNECTION_TABLE = {
    (0, 0): (0.0, 0.0, 0.0), (0, 1): (0.0, 0.0, -1.0), (0, 2): (0.0, 1.0, 0.0),
    (1, 0): (0.0, 0.0, 1.0), (1, 1): (0.0, 0.0, 0.0), (1, 2): (-1.0, 0.0, 0.0),
    (2, 0): (0.0, 1.0, 0.0), (2, 1): (-1.0, 0.0, 0.0), (2, 2): (0.0, 0.0, 0.0),
}

_CURVATURE_TABLE = {
    (0, 1, 0): (0.0, -3.0, 0.0), (0, 1, 1): (3.0, 0.0, 0.0), (0, 1, 2): (0.0, 0.0, 0.0),
    (0, 2, 0): (0.0, 0.0, 1.0), (0, 2, 1): (0.0, 0.0, 0.0), (0, 2, 2): (-1.0, 0.0, 0.0),
    (1, 2, 0): (0.0, 0.0, 0.0), (1, 2, 1): (0.0, 0.0, 1.0), (1, 2, 2): (0.0, -1.0, 0.0),
}


def _frame_vectors(p: Point) -> tuple[FrameVector, FrameVector, FrameVector]:
    return (FrameVector(1, 0, 0, p), FrameVector(0, 1, 0, p), FrameVector(0, 0, 1, p))


def check_connection_table() -> CheckResult:
    fields = (X_FIELD, Y_FIELD, T_FIELD)
    worst = 0.0
    for p in (ORIGIN, Point(1.3, -0.7, 2.1)):
        for (i, j), want in _CONNECTION_TABLE.items():
            got = covariant_derivative(fields[i], fields[j], p).coeffs()
            worst = max(worst, _nmax(*(g - w for g, w in zip(got, want))))
    return CheckResult("connection_table", "D_X Y=-T, D_X T=Y, ... (9 entries)", worst, 1e-12)


def check_curvature_table() -> CheckResult:
    worst = 0.0
    for p in (ORIGIN, Point(0.4, 1.1, -0.9)):
        es = _frame_vectors(p)
        for (i, j, k), want in _CURVATURE_TABLE.items():
            got = curvature_R(es[i], es[j], es[k]).coeffs()
            worst = max(worst, _nmax(*(g - w for g, w in zip(got, want))))
            # antisymmetry in the first slot
            neg = curvature_R(es[j], es[i], es[k]).coeffs()
            worst = max(worst, _nmax(*(g + n for g, n in zip(got, neg))))
    return CheckResult("curvature_table", "R(X,Y)Y=3X, R(X,T)T=-X, ...", worst, 1e-12)


def check_ricci_table() -> CheckResult:
    p = Point(0.2, -0.5, 0.7)
    es = _frame_vectors(p)
    want = {(0, 0): -2.0, (1, 1): -2.0, (2, 2): 2.0}
    worst = 0.0
    for i in range(3):
        for j in range(3):
            worst = max(worst, abs(ricci(es[i], es[j]) - want.get((i, j), 0.0)))
    return CheckResult("ricci_table", "Ric=diag(-2,-2,2) on the frame", worst, 1e-12)


def check_ricci_normal() -> CheckResult:
    rng = random.Random(7)
    worst = 0.0
    p = Point(0.3, 0.1, -1.0)
    for _ in range(25):
        v = [rng.uniform(-1, 1) for _ in range(3)]
        n = math.sqrt(sum(x * x for x in v))
        u = FrameVector(v[0] / n, v[1] / n, v[2] / n, p)
        nh2 = u.a * u.a + u.b * u.b
        worst = max(worst, abs(ricci(u, u) - (2.0 - 4.0 * nh2)))
    return CheckResult("ricci_normal_identity", "Ric(N,N) = 2 - 4|N_h|^2", worst, 1e-12)


def check_associativity() -> CheckResult:
    rng = random.Random(11)
    worst = 0.0
    for _ in range(200):
        p, q, r = (Point(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10))
                   for _ in range(3))
        lhs = group_mul(group_mul(p, q), r)
        rhs = group_mul(p, group_mul(q, r))
        worst = max(worst, _nmax(lhs.x - rhs.x, lhs.y - rhs.y, lhs.t - rhs.t))
    return CheckResult("group_associativity", "(p*q)*r = p*(q*r)", worst, 1e-12)


def check_group_inverse() -> CheckResult:
    rng = random.Random(13)
    worst = 0.0
    for _ in range(50):
        p = Point(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
        e = group_mul(p, group_inverse(p))
        worst = max(worst, _nmax(e.x, e.y, e.t))
    return CheckResult("group_inverse", "p * p^{-1} = 0", worst, 1e-12)


def check_left_invariance() -> CheckResult:
    rng = random.Random(17)
    worst = 0.0
    frame0 = frame_at(ORIGIN)
    for _ in range(40):
        p = Point(rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8))
        jac = left_translation_jacobian(p)
        frame_p = frame_at(p)
        for k in range(3):
            pushed = tuple(sum(jac[i][m] * frame0[k][m] for m in range(3)) for i in range(3))
            worst = max(worst, _nmax(*(a - b for a, b in zip(pushed, frame_p[k]))))
    return CheckResult("left_invariance", "dL_p (frame at 0) = frame at p", worst, 1e-12)


def check_bracket_flows() -> CheckResult:
    h = 1e-2
    p = Point(0.4, -0.3, 0.8)
    pairs = ((X_FIELD, Y_FIELD, (0.0, 0.0, -2.0)),
             (X_FIELD, T_FIELD, (0.0, 0.0, 0.0)),
             (Y_FIELD, T_FIELD, (0.0, 0.0, 0.0)))
    worst = 0.0
    for U, V, want in pairs:
        q = flow(V, flow(U, flow(V, flow(U, p, h, 8), h, 8), -h, 8), -h, 8)
        got = ((q.x - p.x) / (h * h), (q.y - p.y) / (h * h), (q.t - p.t) / (h * h))
        worst = max(worst, _nmax(*(g - w for g, w in zip(got, want))))
    return CheckResult("bracket_flows", "[X,Y]=-2T, [X,T]=[Y,T]=0 (flows)", worst, 1e-6)


def _poly_fields() -> tuple[FrameField, FrameField, FrameField]:
    u = FrameField(lambda p: 1.0 + 0.3 * p.x, lambda p: 0.5 * p.y - p.t,
                   lambda p: 0.2 * p.x * p.y)
    v = FrameField(lambda p: p.y, lambda p: 1.0 - 0.4 * p.t,
                   lambda p: 0.1 + p.x)
    w = FrameField(lambda p: 0.7 * p.t, lambda p: p.x * p.x,
                   lambda p: 0.5 - 0.2 * p.y)
    return u, v, w


def check_torsion_free() -> CheckResult:
    u, v, _ = _poly_fields()
    worst = 0.0
    for p in (Point(0.3, -0.2, 0.5), Point(-1.1, 0.8, -0.4)):
        tor = (covariant_derivative(u, v, p) - covariant_derivative(v, u, p)
               - lie_bracket(u, v, p))
        worst = max(worst, tor.norm())
    return CheckResult("torsion_free", "D_U V - D_V U - [U,V] = 0", worst, 1e-8)


def check_metric_compatibility() -> CheckResult:
    u, v, w = _poly_fields()
    worst = 0.0
    h = 1e-5
    for p in (Point(0.2, 0.4, -0.3), Point(-0.6, 0.1, 0.9)):
        ue = frame_to_euclidean(u.at(p))

        def inner(q: Point) -> float:
            return dot(v.at(q), w.at(q))

        def sample(t: float) -> float:
            return inner(Point(p.x + t * ue[0], p.y + t * ue[1], p.t + t * ue[2]))

        d1 = (sample(h) - sample(-h)) / (2 * h)
        d2 = (sample(h / 2) - sample(-h / 2)) / h
        deriv = (4 * d2 - d1) / 3
        lhs = deriv - dot(covariant_derivative(u, v, p), w.at(p)) \
            - dot(v.at(p), covariant_derivative(u, w, p))
        worst = max(worst, abs(lhs))
    return CheckResult("metric_compatibility", "U<V,W> = <D_U V,W> + <V,D_U W>", worst, 1e-8)


def check_curvature_from_connection() -> CheckResult:
    fields = (X_FIELD, Y_FIELD, T_FIELD)
    worst = 0.0
    p = Point(0.5, -0.8, 0.2)
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            br = lie_bracket(fields[i], fields[j], p)
            br_field = FrameField.constant(*br.coeffs())
            for k in range(3):
                duw = covariant_field(fields[i], fields[k])
                dvw = covariant_field(fields[j], fields[k])
                got = (covariant_derivative(fields[j], duw, p)
                       - covariant_derivative(fields[i], dvw, p)
                       + covariant_derivative(br_field, fields[k], p))
                es = _frame_vectors(p)
                want = curvature_R(es[i], es[j], es[k])
                worst = max(worst, (got - want).norm())
    return CheckResult("curvature_from_connection",
                       "R(U,V)W = D_V D_U W - D_U D_V W + D_[U,V] W", worst, 1e-8)


def check_horizontal_curvature_form() -> CheckResult:
    rng = random.Random(23)
    p = Point(0.1, 0.9, -0.4)
    worst = 0.0
    for _ in range(30):
        th = rng.uniform(0, 2 * math.pi)
        w = FrameVector(math.cos(th), math.sin(th), 0.0, p)
        v = FrameVector(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), p)
        jw = jop(w)
        tvec = FrameVector(0, 0, 1, p)
        want = jw.scaled(-3.0 * dot(v, jw)) + tvec.scaled(dot(v, tvec))
        worst = max(worst, (curvature_R(w, v, w) - want).norm())
    return CheckResult("horizontal_curvature_form",
                       "R(w,v)w = -3<v,Jw>Jw + <v,T>T, |w|=1 horiz", worst, 1e-12)


def check_jop() -> CheckResult:
    rng = random.Random(29)
    p = Point(0.0, 0.0, 0.0)
    worst = 0.0
    x, y, t = _frame_vectors(p)
    worst = max(worst, (jop(x) - y).norm(), (jop(y) + x).norm(), jop(t).norm())
    worst = max(worst, (jop(jop(x)) + x).norm())
    for _ in range(30):
        u = FrameVector(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), p)
        v = FrameVector(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), p)
        worst = max(worst, abs(dot(jop(u), v) + dot(u, jop(v))))
    return CheckResult("jop_rotation", "J(X)=Y, J(Y)=-X, <Ju,v>+<u,Jv>=0", worst, 1e-12)


def check_symmetry_groups() -> CheckResult:
    rng = random.Random(31)
    worst = 0.0
    for _ in range(25):
        p = Point(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3))
        q = dilate(-0.7, dilate(0.7, p))
        worst = max(worst, _nmax(q.x - p.x, q.y - p.y, q.t - p.t))
        r = rotate_z(-1.1, rotate_z(1.1, p))
        worst = max(worst, _nmax(r.x - p.x, r.y - p.y, r.t - p.t))
    d = dilate(math.log(2.0), Point(1, 1, 1))
    worst = max(worst, _nmax(d.x - 2, d.y - 2, d.t - 4))
    r = rotate_z(math.pi / 2, Point(1, 0, 5))
    worst = max(worst, _nmax(r.x, r.y - 1, r.t - 5))
    return CheckResult("symmetry_groups", "dilations/rotations compose and invert", worst, 1e-12)


# ---------------------------------------------------------------------------
# geodesics suite
# ---------------------------------------------------------------------------

def check_fgh() -> CheckResult:
    worst = 0.0
    f0, g0, h0 = helpers_fgh(0.0)
    worst = max(worst, abs(f0 - 1.0), abs(g0), abs(h0))
    fpi, gpi, _ = helpers_fgh(math.pi)
    worst = max(worst, abs(fpi), abs(gpi - 2.0 / math.pi))
    for x in (1e-4, -1e-4):
        # cancellation-free closed forms: (1-cos x)/x = 2 sin^2(x/2)/x, and
        # x h(x) = (x - sin x)/x carries the subtraction at full accuracy
        fs, gs, hs = helpers_fgh(x * (1 - 1e-12))
        half = math.sin(0.5 * x)
        worst = max(worst, abs(fs - math.sin(x) / x))
        worst = max(worst, abs(gs - 2.0 * half * half / x))
        worst = max(worst, abs(x * hs - (x - math.sin(x)) / x))
    return CheckResult("fgh_helpers", "series/closed agree at the switch", worst, 1e-14)


def check_horgeo() -> CheckResult:
    rng = random.Random(37)
    worst = 0.0
    for _ in range(30):
        p = Point(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3))
        a, b = rng.uniform(-2, 2), rng.uniform(-2, 2)
        v = FrameVector(a, b, 0.0, p)
        s = rng.uniform(-4, 4)
        q, _ = exp_geodesic(GeodesicArc(p, v), s)
        ve = frame_to_euclidean(v)
        worst = max(worst, _nmax(q.x - p.x - s * ve[0], q.y - p.y - s * ve[1],
                                 q.t - p.t - s * ve[2]))
        vv = FrameVector(0.0, 0.0, rng.uniform(-2, 2), p)
        qv, _ = exp_geodesic(GeodesicArc(p, vv), s)
        worst = max(worst, _nmax(qv.x - p.x, qv.y - p.y, qv.t - p.t - s * vv.c))
    q, _ = exp_geodesic(GeodesicArc(ORIGIN, euclidean_to_frame(ORIGIN, (1, 0, 1))), math.pi)
    worst = max(worst, _nmax(q.x, q.y, q.t - 1.5 * math.pi))
    return CheckResult("straight_line_geodesics",
                       "exp_p(sv) = p + sv for horizontal/vertical v", worst, 1e-12)


def _random_arcs(n: int, seed: int) -> list[GeodesicArc]:
    rng = random.Random(seed)
    arcs = []
    for _ in range(n):
        p = Point(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))
        v = FrameVector(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                        rng.uniform(-1.5, 1.5), p)
        arcs.append(GeodesicArc(p, v))
    return arcs


def check_conserved() -> tuple[CheckResult, CheckResult]:
    worst_lam = 0.0
    worst_speed = 0.0
    svals = [-10.0 + 20.0 * i / 40 for i in range(41)]
    for arc in _random_arcs(12, 41):
        speed0 = arc.v0.norm()
        for s in svals:
            _, vel = exp_geodesic(arc, s)
            worst_lam = max(worst_lam, abs(vel.c - arc.lam))
            worst_speed = max(worst_speed, abs(vel.norm() - speed0))
    return (CheckResult("lambda_conserved", "<gamma',T> constant on [-10,10]", worst_lam, 1e-10),
            CheckResult("speed_conserved", "|gamma'| constant on [-10,10]", worst_speed, 1e-10))


def check_semigroup() -> CheckResult:
    worst = 0.0
    for arc in _random_arcs(10, 43):
        for s1, s in ((0.7, 2.4), (-1.2, 0.9), (2.0, -3.0)):
            q1, v1 = exp_geodesic(arc, s1)
            direct, _ = exp_geodesic(arc, s)
            rest, _ = exp_geodesic(GeodesicArc(q1, v1), s - s1)
            worst = max(worst, _nmax(direct.x - rest.x, direct.y - rest.y,
                                     direct.t - rest.t))
    return CheckResult("geodesic_semigroup", "flow restarted at gamma(s1) matches", worst, 1e-9)


def _helicoid_ruling_family(R: float):
    def alpha(e: float) -> Point:
        return Point(0.0, 0.0, e / R)

    def u_of(e: float) -> FrameVector:
        return euclidean_to_frame(alpha(e), (math.sin(R * e), math.cos(R * e), 0.0))

    return alpha, u_of


def check_jacobi_trivial() -> CheckResult:
    alpha = lambda e: Point(0.0, e, 0.0)
    u_of = lambda e: FrameVector(0.0, 1.0, 0.0, alpha(e))
    worst = 0.0
    for s in (-1.0, 0.4, 2.0):
        sample = jacobi_field(alpha, u_of, 0.1, s)
        # documented stencil accuracy: 1e-6 on V, 1e-4 on V''
        worst = max(worst, (sample.V - FrameVector(0, 1, 0, sample.V.base)).norm() * 1e2)
        worst = max(worst, sample.Vsecond.norm())
    return CheckResult("jacobi_trivial_family", "line translations: V const, V''=0", worst, 1e-4)


def check_jacobi_helicoid() -> tuple[CheckResult, CheckResult, CheckResult]:
    alpha, u_of = _helicoid_ruling_family(2.0)
    worst_eq = 0.0
    worst_comm = 0.0
    for eps, s in ((0.0, 0.3), (0.5, -0.8), (-0.4, 1.5)):
        sample = jacobi_field(alpha, u_of, eps, s)
        a = alpha(eps)
        u = u_of(eps)
        _, vel = exp_geodesic(GeodesicArc(a, u), s)
        worst_eq = max(worst_eq, straight_line_residual(sample, vel))
        worst_eq = max(worst_eq, jacobi_residual(sample, vel))
        worst_comm = max(worst_comm, commutation_residual(alpha, u_of, eps, s))

    # vertical component of V must be an exact quadratic in s
    svals = [-1.0 + 0.25 * i for i in range(9)]
    worst_fit = 0.0
    for eps in (0.0, 0.7):
        vt = []
        for s in svals:
            sample = jacobi_field(alpha, u_of, eps, s)
            vt.append(dot(sample.V, FrameVector(0, 0, 1, sample.V.base)))
        coef = _quad_fit(svals, vt)
        worst_fit = max(worst_fit, max(abs(coef[0] * s * s + coef[1] * s + coef[2] - v)
                                       for s, v in zip(svals, vt)))
    return (CheckResult("jacobi_equation_rulings", "V'' - 3<V,JZ>JZ + <V,T>T = 0", worst_eq, 1e-5),
            CheckResult("jacobi_commutation", "[gamma', V] = 0", worst_comm, 1e-5),
            CheckResult("jacobi_vertical_quadratic_fit", "<V,T>(s) quadratic on rulings",
                        worst_fit, 1e-8))


def check_jacobi_random() -> CheckResult:
    def alpha(e: float) -> Point:
        return Point(math.sin(e), e, 0.3 * e * e)

    def u_of(e: float) -> FrameVector:
        return FrameVector(0.8 + 0.1 * e, -0.5 * e, 0.9 + 0.2 * math.cos(e), alpha(e))

    worst = 0.0
    for eps, s in ((0.0, 0.5), (0.3, -1.0), (-0.2, 1.2)):
        sample = jacobi_field(alpha, u_of, eps, s)
        a = alpha(eps)
        u = u_of(eps)
        _, vel = exp_geodesic(GeodesicArc(a, u), s)
        worst = max(worst, jacobi_residual(sample, vel))
    return CheckResult("jacobi_equation_general", "V'' + R(gamma',V)gamma' = 0", worst, 1e-4)


def _quad_fit(xs: Iterable[float], ys: Iterable[float]) -> tuple[float, float, float]:
    import numpy as np
    arr = np.polynomial.polynomial.polyfit(list(xs), list(ys), 2)
    return float(arr[2]), float(arr[1]), float(arr[0])


# ---------------------------------------------------------------------------
# surfaces suite
# ---------------------------------------------------------------------------

def _catalog() -> dict[str, Chart]:
    return {
        "catenoid": CatenoidChart(1.0),
        "helicoid": HelicoidChart(2.0),
        "paraboloid": paraboloid_chart(domain=((0.2, 1.5), (-1.0, 1.3))),
        "plane": surfaces.plane_chart(0.4, -0.7, 0.3),
    }


def check_frame_relations() -> CheckResult:
    worst = 0.0
    for name, chart in _catalog().items():
        for u in _GRID[name]:
            fr = surface_frame(chart, u)
            worst = max(worst, abs(fr.Nh_norm ** 2 + fr.NT ** 2 - 1.0))
            # tangential projections onto {Z, S}
            nu_t = fr.Z.scaled(dot(fr.nu_h, fr.Z)) + fr.S.scaled(dot(fr.nu_h, fr.S))
            worst = max(worst, (nu_t - fr.S.scaled(fr.NT)).norm())
            tvec = FrameVector(0, 0, 1, fr.N.base)
            t_t = fr.Z.scaled(dot(tvec, fr.Z)) + fr.S.scaled(dot(tvec, fr.S))
            worst = max(worst, (t_t + fr.S.scaled(fr.Nh_norm)).norm())
            worst = max(worst, abs(fr.N.norm() - 1.0), abs(dot(fr.Z, fr.S)))
            worst = max(worst, abs(2.0 * fr.H * fr.Nh_norm - fr.BZZ))
    return CheckResult("frame_relations",
                       "|N_h|^2+<N,T>^2=1; projections of nu_h, T", worst, 1e-10)


def _field_along_ray(chart: Chart, u0, getter, which: str = "Z"):
    """Sampled frame field tau -> getter(surface_frame) along the Z/S curve."""
    cache: dict[float, object] = {}

    def at(tau: float):
        if tau not in cache:
            u = integrate_tangent_field(chart, u0, tau, 4, which)[-1] if tau != 0.0 else u0
            cache[tau] = surface_frame(chart, u)
        return getter(cache[tau])

    return at


def check_characteristic_derivatives() -> tuple[CheckResult, CheckResult]:
    # includes a non-minimal graph so the 2H terms are exercised
    bowl = GraphChart(lambda x, y: x * x + y * y, lambda x, y: 2 * x, lambda x, y: 2 * y,
                      lambda x, y: 2.0, lambda x, y: 0.0, lambda x, y: 2.0,
                      domain=((0.3, 1.5), (-1.0, 1.0)))
    cases = [(CatenoidChart(1.0), (1.2, 0.5)), (HelicoidChart(2.0), (0.25, 0.4)),
             (bowl, (0.8, 0.3))]
    worst_zz = 0.0
    for chart, u0 in cases:
        fr0 = surface_frame(chart, u0)
        z_field = _field_along_ray(chart, u0, lambda fr: fr.Z)
        nu_field = _field_along_ray(chart, u0, lambda fr: fr.nu_h)
        vel = _field_along_ray(chart, u0, lambda fr: fr.Z)
        dzz = covariant_derivative_along(z_field, vel, 0.0, 1e-3)
        worst_zz = max(worst_zz, (dzz - fr0.nu_h.scaled(2.0 * fr0.H)).norm())
        dznu = covariant_derivative_along(nu_field, vel, 0.0, 1e-3)
        tvec = FrameVector(0, 0, 1, fr0.N.base)
        want = tvec - fr0.Z.scaled(2.0 * fr0.H)
        worst_zz = max(worst_zz, (dznu - want).norm())

    worst_sc = 0.0
    for chart, u0 in cases:
        fr0 = surface_frame(chart, u0)
        znt = tangent_derivative(chart, lambda u: surface_frame(chart, u).NT, u0, 1, "Z")
        worst_sc = max(worst_sc, abs(znt - fr0.Nh_norm * (fr0.BZS - 1.0)))
        snt = tangent_derivative(chart, lambda u: surface_frame(chart, u).NT, u0, 1, "S")
        worst_sc = max(worst_sc, abs(snt - fr0.Nh_norm * fr0.BSS))
        znh = tangent_derivative(chart, lambda u: surface_frame(chart, u).Nh_norm, u0, 1, "Z")
        worst_sc = max(worst_sc, abs(znh - fr0.NT * (1.0 - fr0.BZS)))
    return (CheckResult("characteristic_flow_derivatives",
                        "D_Z Z = 2H nu_h; D_Z nu_h = T - 2H Z", worst_zz, 1e-5),
            CheckResult("scalar_flow_derivatives",
                        "Z<N,T>, S<N,T>, Z|N_h| closed forms", worst_sc, 1e-5))


def check_zbzs() -> CheckResult:
    worst = 0.0
    for chart, u0 in ((CatenoidChart(1.0), (0.9, 0.6)), (HelicoidChart(2.0), (0.3, -0.5)),
                      (CatenoidChart(1.0), (2.4, -0.8))):
        fr = surface_frame(chart, u0)
        zb = tangent_derivative(chart, lambda u: surface_frame(chart, u).BZS, u0, 1, "Z")
        want = (4.0 * fr.Nh_norm * fr.NT
                - 2.0 / fr.Nh_norm * fr.NT * fr.BZS * (1.0 + fr.BZS))
        worst = max(worst, abs(zb - want))
    return CheckResult("shape_term_flow_derivative",
                       "Z<B(Z),S> = 4|N_h|<N,T> - 2<N,T><B(Z),S>(1+<B(Z),S>)/|N_h|",
                       worst, 1e-4)


def check_helicoid_closed_forms() -> tuple[CheckResult, CheckResult, CheckResult]:
    worst_frame = 0.0
    for R in (1.0, 2.0):
        chart = HelicoidChart(R)
        for s, e in _GRID["helicoid"]:
            fr = surface_frame(chart, (s, e))
            d = helicoid_closed_forms(R, s)
            worst_frame = max(worst_frame, abs(fr.Nh_norm - d.Nh), abs(fr.NT - d.NT),
                              abs(fr.BZS - d.BZS), abs(fr.riem_area - d.W))
    worst_q2 = max(abs(surface_frame(HelicoidChart(2.0), u).q) for u in _GRID["helicoid"])
    worst_q1 = 0.0
    chart1 = HelicoidChart(1.0)
    for s, e in _GRID["helicoid"]:
        fr = surface_frame(chart1, (s, e))
        worst_q1 = max(worst_q1, abs(fr.q - helicoid_closed_forms(1.0, s).q))
    return (CheckResult("helicoid_frame_closed_forms",
                        "|N_h|, <N,T>, <B(Z),S> closed forms", worst_frame, 1e-8),
            CheckResult("q_identically_zero_R2", "|B(Z)+S|^2 = 4|N_h|^2 at R=2", worst_q2, 1e-8),
            CheckResult("q_closed_form_R1", "q = (R^2-4) f^2 / W^4 at R=1", worst_q1, 1e-6))


def check_minimality() -> CheckResult:
    worst = 0.0
    charts = {
        "paraboloid": paraboloid_chart(domain=((0.2, 1.5), (-1.0, 1.3))),
        "catenoid": CatenoidChart(1.0),
        "helicoid1": HelicoidChart(1.0),
        "helicoid2": HelicoidChart(2.0),
    }
    grids = {"helicoid1": _GRID["helicoid"], "helicoid2": _GRID["helicoid"],
             "paraboloid": _GRID["paraboloid"], "catenoid": _GRID["catenoid"]}
    for name, chart in charts.items():
        for u in grids[name]:
            worst = max(worst, abs(surface_frame(chart, u).H))
    return CheckResult("catalog_minimality", "H = 0 on the minimal catalog", worst, 1e-8)


def check_vertical_plane() -> CheckResult:
    chart = VerticalPlaneChart()
    worst = 0.0
    for u in ((0.0, 0.0), (0.5, -0.7), (-0.9, 0.3)):
        fr = surface_frame(chart, u)
        worst = max(worst, abs(fr.NT), abs(fr.BZS - 1.0), abs(fr.Nh_norm - 1.0))
        worst = max(worst, abs(l_nh_closed(chart, u)))
        worst = max(worst, abs(operator_L(chart,
                                          lambda uu: surface_frame(chart, uu).Nh_norm, u)))
    return CheckResult("vertical_plane_frame",
                       "<N,T>=0, <B(Z),S>=1, L(|N_h|)=0 on x=0", worst, 1e-8)


def _straightness(points: list[Point]) -> float:
    p0, p1 = points[0], points[1]
    d = (p1.x - p0.x, p1.y - p0.y, p1.t - p0.t)
    n = math.sqrt(sum(c * c for c in d))
    d = (d[0] / n, d[1] / n, d[2] / n)
    worst = 0.0
    for p in points:
        w = (p.x - p0.x, p.y - p0.y, p.t - p0.t)
        proj = sum(wi * di for wi, di in zip(w, d))
        perp2 = sum(wi * wi for wi in w) - proj * proj
        worst = max(worst, math.sqrt(max(0.0, perp2)))
    return worst


def check_characteristic_rays() -> tuple[CheckResult, CheckResult]:
    hel = HelicoidChart(2.0)
    worst_h = _straightness(characteristic_ray(hel, (0.0, 0.4), 0.4, 32))
    ray = characteristic_ray(VerticalPlaneChart(domain=((-3, 3), (-3, 3))), (0.2, 0.5), 1.0, 16)
    worst_h = max(worst_h, max(_nmax(p.x, p.t - ray[0].t) for p in ray))
    cat = CatenoidChart(1.0)
    worst_c = _straightness(characteristic_ray(cat, (0.7, 0.4), 2.0, 64))
    return (CheckResult("characteristic_ray_helicoid", "rulings are straight lines",
                        worst_h, 1e-8),
            CheckResult("characteristic_ray_catenoid", "rulings straight over length 2",
                        worst_c, 1e-6))


def check_ruled_charts() -> tuple[CheckResult, CheckResult, CheckResult]:
    # vertical plane: stays in x = 0
    vp = VerticalPlaneChart(domain=((-4, 4), (-4, 4)))
    rv = ruled_coordinates(vp, (0.3, -0.2), 0.8, (-1.5, 1.5))
    worst_v = max(abs(rv.point(e, s).x)
                  for e in (-0.7, 0.0, 0.5) for s in (-1.2, 0.0, 1.0))

    cat = CatenoidChart(1.0)
    rc = ruled_coordinates(cat, cat.locate(Point(math.sqrt(2.0), 0.0, 1.0)), 1.0, (-3, 3))
    worst_c = max(abs(cat.implicit_residual(rc.point(e, s)))
                  for e in (-0.9, -0.3, 0.2, 0.8) for s in (-2.5, -1.0, 0.5, 2.0))

    hel = HelicoidChart(2.0)
    rh = ruled_coordinates(hel, (0.1, 0.0), 0.6, (-1.0, 1.0))
    worst_h = 0.0
    for e in (-0.5, 0.0, 0.4):
        for s in (-0.8, 0.2, 0.9):
            p = rh.point(e, s)
            eps = 2.0 * p.t  # t = eps/R on the pitch-2 chart
            th = 2.0 * eps
            srec = p.x * math.sin(th) + p.y * math.cos(th)
            q = hel.point(srec, eps)
            worst_h = max(worst_h, _nmax(q.x - p.x, q.y - p.y, q.t - p.t))
    return (CheckResult("ruled_vertical_plane", "ruled chart stays in the plane", worst_v, 1e-10),
            CheckResult("ruled_catenoid_implicit", "t^2 = x^2+y^2-1 on ruled points", worst_c, 1e-6),
            CheckResult("ruled_helicoid_pointset", "ruled chart lands on the pitch-2 chart",
                        worst_h, 1e-6))


def check_singular_locus() -> CheckResult:
    worst = 0.0
    hel = HelicoidChart(2.0)
    loc = singular_locus(hel, (10, 6), 1e-6)
    if not loc.points:
        return CheckResult("singular_locus", "no crossings found", math.inf, 1e-8)
    worst = max(worst, max(abs(abs(pt[0]) - 0.5) for pt in loc.points))
    cat = singular_locus(CatenoidChart(1.0), (8, 8), 1e-6)
    worst = max(worst, float(bool(cat.cells or cat.points)))
    par = singular_locus(paraboloid_chart(domain=((-1.0, 1.0), (-1.0, 1.0))), (9, 9), 1e-6)
    if not par.points:
        return CheckResult("singular_locus", "paraboloid crossings missing", math.inf, 1e-8)
    worst = max(worst, max(abs(pt[0]) for pt in par.points))
    return CheckResult("singular_locus",
                       "helices s=+-1/R; empty catenoid; line x=0 on t=xy", worst, 1e-8)


def check_area_scaling() -> tuple[CheckResult, CheckResult]:
    hel = HelicoidChart(2.0)
    patch = ((0.0, 0.4), (0.0, 1.0))
    quad = QuadratureSpec(16, (8, 8))
    base = area(hel, patch, quad)
    lam = 0.3
    scaled = area(dilated(hel, lam), patch, quad)
    worst_d = abs(scaled - math.exp(3.0 * lam) * base) / abs(scaled)
    rot = area(rotated(hel, 1.234), patch, quad)
    worst_r = abs(rot - base) / abs(base)
    # closed 1-D oracle: integral of |f| over the strip
    closed = (0.4 / 2.0 - 2.0 * 0.4 ** 3 / 3.0) * 1.0
    worst_d = max(worst_d, abs(base - closed) / closed)
    vp_area = area(VerticalPlaneChart(), ((0.0, 1.0), (0.0, 1.0)), quad)
    worst_d = max(worst_d, abs(vp_area - 1.0))
    return (CheckResult("area_dilation_scaling", "A(dilated) = e^{3 lam} A", worst_d, 1e-6),
            CheckResult("area_rotation_invariance", "A invariant under rotations", worst_r, 1e-10))


# ---------------------------------------------------------------------------
# stability suite
# ---------------------------------------------------------------------------

def _regular_sample_points(n_each: int = 50) -> list[tuple[Chart, tuple[float, float]]]:
    cat = CatenoidChart(1.0)
    hel = HelicoidChart(2.0)
    pts = [(cat, u) for u in _random_regular_points(cat, n_each, 101,
                                                    ((0.0, 2 * math.pi), (-1.4, 1.4)))]
    pts += [(hel, u) for u in _random_regular_points(hel, n_each, 103,
                                                     ((-1.3, 1.3), (-1.5, 1.5)), min_nh=0.2)]
    return pts


def check_lnh_closed_vs_direct() -> CheckResult:
    worst = 0.0
    for chart, u in _regular_sample_points(50):
        lc = l_nh_closed(chart, u)
        ld = operator_L(chart, lambda uu: surface_frame(chart, uu).Nh_norm, u)
        worst = max(worst, abs(ld - lc) / max(1.0, abs(lc)))
    return CheckResult("lnh_closed_vs_direct",
                       "L(|N_h|) = 4(<B(Z),S>/|N_h|^2 - 1)", worst, 1e-4)


def check_lnh_sign_catenoid() -> CheckResult:
    cat = CatenoidChart(1.0)
    low = min(l_nh_closed(cat, u) for u in
              _random_regular_points(cat, 100, 107, ((0.0, 2 * math.pi), (-1.4, 1.4))))
    return CheckResult("lnh_nonnegative_catenoid",
                       "L(|N_h|) >= 0 (empty singular set)", max(0.0, -low), 1e-8)


def check_lnh_sign_helicoid() -> CheckResult:
    # q = 0 at pitch 2 forces L(|N_h|) = -4 (1 -+ |N_h|)^2 / |N_h|^2 <= 0:
    # the helicoid is outside the scope of the nonnegativity statement.
    hel = HelicoidChart(2.0)
    worst = 0.0
    for u in _random_regular_points(hel, 100, 109, ((-1.3, 1.3), (-1.5, 1.5)), min_nh=0.2):
        fr = surface_frame(hel, u)
        val = l_nh_closed(hel, u)
        nh = fr.Nh_norm
        sign = 1.0 if abs(u[0]) < 0.5 else -1.0
        want = -4.0 * (1.0 + sign * nh) ** 2 / (nh * nh)
        worst = max(worst, abs(val - want), max(0.0, val))
    return CheckResult("lnh_nonpositive_helicoid2",
                       "L(|N_h|) = -4(1 -+ |N_h|)^2/|N_h|^2 <= 0", worst, 1e-8)


def check_indexform3() -> CheckResult:
    cat = CatenoidChart(1.0)
    quad = QuadratureSpec(16, (4, 4))
    worst = 0.0
    profiles = [
        separable(cosine_bump(1.5, 0.8), cosine_bump(0.3, 0.5)),
        separable(cosine_bump(2.4, 0.6), cosine_bump(-0.4, 0.6)),
        separable(smooth_bump(1.0, 0.9), cosine_bump(0.5, 0.7)),
        separable(cosine_bump(3.5, 1.0), smooth_bump(-0.2, 0.8)),
        separable(smooth_bump(4.0, 0.7), smooth_bump(0.1, 0.4)),
    ]
    for f in profiles:
        fnh = times_nh(cat, f)
        lhs = index_form_I(cat, fnh, fnh, quad)

        def rhs_int(a: float, b: float) -> float:
            fr = surface_frame(cat, (a, b))
            zf = fr.z_chart[0] * f.d1(a, b) + fr.z_chart[1] * f.d2(a, b)
            return fr.Nh_norm * (zf * zf - l_nh_closed(cat, (a, b)) * f.value(a, b) ** 2) \
                * fr.riem_area

        rhs = integrate_2d(rhs_int, f.support, quad)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return CheckResult("index_form_weighted_identity",
                       "I(f|N_h|, f|N_h|) = int |N_h|(Z(f)^2 - L(|N_h|) f^2)", worst, 1e-3)


def check_discriminant() -> CheckResult:
    worst = 0.0
    for chart, u in _regular_sample_points(50):
        _, _, _, disc = jacobi_vertical_quadratic(chart, u)
        fr = surface_frame(chart, u)
        worst = max(worst, abs(disc + fr.Nh_norm ** 2 * l_nh_closed(chart, u)))
    return CheckResult("discriminant_identity",
                       "b^2 - 4ac = -|N_h|^2 L(|N_h|)", worst, 1e-8)


def check_jacobi_coefficients() -> CheckResult:
    """Least-squares fit of <V,T>(s) against the closed quadratic seeds."""
    cat = CatenoidChart(1.0)
    u0 = (0.9, 0.5)
    a_cl, b_cl, c_cl, _ = jacobi_vertical_quadratic(cat, u0)

    def alpha(e: float) -> Point:
        if e == 0.0:
            u = u0
        else:
            u = integrate_tangent_field(cat, u0, e, 8, "S")[-1]
        return cat.point(*u)

    def u_of(e: float) -> FrameVector:
        if e == 0.0:
            u = u0
        else:
            u = integrate_tangent_field(cat, u0, e, 8, "S")[-1]
        return surface_frame(cat, u).Z

    svals = [-1.0 + 0.25 * i for i in range(9)]
    vt = []
    for s in svals:
        sample = jacobi_field(alpha, u_of, 0.0, s)
        vt.append(dot(sample.V, FrameVector(0, 0, 1, sample.V.base)))
    a_f, b_f, c_f = _quad_fit(svals, vt)
    worst = _nmax(a_f - a_cl, b_f - b_cl, c_f - c_cl)
    return CheckResult("jacobi_vertical_coefficients",
                       "fit of <V,T> matches (a, b, c) closed forms", worst, 1e-5)


def check_qform_regular() -> CheckResult:
    quad = QuadratureSpec(16, (32, 1))
    u = separable(cosine_bump(0.0, 1.0), cosine_bump(1.0, 0.35))
    val = q_form(2.0, u, quad)
    return CheckResult("qform_regular_support",
                       "Q(u) >= 0 away from the singular helices", max(0.0, -val), 1e-10)


def check_bracket() -> tuple[CheckResult, CheckResult]:
    quad = QuadratureSpec(16, (64, 1))
    worst = 0.0
    for k, d in ((0.6, 2.2), (1.0, 3.0)):
        worst = max(worst, abs(bracket_integral(k, d) - bracket_integral_quadrature(k, d, quad)))
    c06 = bracket_integral(0.6, 2.2)
    worst2 = 0.0 if (c06 < 8.0 and bracket_integral(0.5001, 2.0002) > 8.0) else 1.0
    return (CheckResult("bracket_integral_dual", "closed antiderivative vs quadrature",
                        worst, 1e-10),
            CheckResult("bracket_integral_bounds", "C(0.6,2.2) < 8 < C(0.5001,2.0002)",
                        worst2, 0.5))


def check_second_variation() -> tuple[CheckResult, CheckResult]:
    cat = CatenoidChart(1.0)
    v = separable(cosine_bump(1.5, 0.7), cosine_bump(0.3, 0.5))
    w = zero_function()
    quad = QuadratureSpec(16, (4, 4))
    iform = index_form_I(cat, v, v, quad)
    a2 = second_variation_direct(cat, v, w, quad)
    rel = abs(a2 - iform) / max(1e-30, abs(iform))
    a1, a0 = first_variation_direct(cat, v, w, quad)
    return (CheckResult("second_variation_consistency",
                        "direct A''(0) matches the index form", rel, 1e-2),
            CheckResult("area_stationarity", "A'(0) = 0 under compact variations",
                        abs(a1) / a0, 1e-6))


def check_h2_certificate() -> tuple[CheckResult, InstabilityCertificate]:
    cert = certify_instability_h2()
    u = h2_certificate_test_function(cert.k, cert.delta, cert.eps0)
    q2 = q_form(2.0, u, cert.quad.doubled())
    ok = cert.Q_value < 0.0 and q2 < 0.0 and cert.C < 8.0
    return (CheckResult("h2_instability_certificate",
                        "Q(u) < 0, stable under resolution doubling",
                        0.0 if ok else 1.0, 0.5), cert)


def check_catenoid_certificate() -> tuple[CheckResult, InstabilityCertificate]:
    cat = CatenoidChart(1.0)
    phi = cosine_bump(0.0, 1.0)
    cert, ruled = certify_instability_nosing(cat, cat.locate(Point(math.sqrt(2.0), 0.0, 1.0)),
                                             list(range(1, 65)), phi)
    val2 = ruled_index_value(cat, ruled, phi, cert.k, cert.quad.doubled())
    ok = cert.Q_value < 0.0 and val2 < 0.0
    return (CheckResult("catenoid_instability_certificate",
                        "reduced index < 0, stable under doubling",
                        0.0 if ok else 1.0, 0.5), cert)


def check_vertical_variation() -> tuple[CheckResult, CheckResult]:
    quad = QuadratureSpec(16, (16, 1))
    vv = VerticalVariation(cosine_bump(0.0, 1.0))
    d2, d1 = vertical_variation_second_difference(2.0, vv, quad, s0=0.3)
    exact = gauss_legendre_1d(lambda e: vv.w.deriv(e) ** 2, -1.0, 1.0, quad)
    return (CheckResult("vertical_variation_second", "d^2A/dr^2 = int wdot^2",
                        abs(d2 - exact) / exact, 1e-3),
            CheckResult("vertical_variation_first", "dA/dr = 0 at r = 0", abs(d1), 1e-6))


def check_boundary_flux() -> tuple[CheckResult, CheckResult]:
    phi = cosine_bump(0.0, 1.0)
    v = separable(phi, Profile(lambda s: 1.0, lambda s: 0.0, (-10.0, 10.0)))
    quad = QuadratureSpec(16, (32, 1))
    extrap = boundary_flux_extrapolated(2.0, v, quad=quad)
    target = 8.0 * gauss_legendre_1d(lambda e: phi.value(e) ** 2, -1.0, 1.0, quad)
    rel = abs(extrap - target) / target

    worst_mono = 1.0
    vals_out = [helicoid_closed_forms(2.0, 0.5 + s).BZS for s in (1e-2, 1e-3, 1e-4)]
    vals_in = [helicoid_closed_forms(2.0, 0.5 - s).BZS for s in (1e-2, 1e-3, 1e-4)]
    if (vals_out[0] > vals_out[1] > vals_out[2] > -1.0
            and vals_in[0] < vals_in[1] < vals_in[2] < -1.0):
        worst_mono = 0.0
    return (CheckResult("boundary_flux_limit",
                        "flux -> 4 int v^2 dl as the tube shrinks", rel, 1e-2),
            CheckResult("shape_term_near_singular", "<B(Z),S> -> -1 monotonically",
                        worst_mono, 0.5))


def check_singular_curve_geometry() -> CheckResult:
    worst = 0.0
    for R in (1.0, 2.0):
        hel = HelicoidChart(R)
        worst = max(worst, abs(helicoid_closed_forms(R, 1.0 / R).W - 1.0))
        # planar curvature of the xy-projection of the singular helix
        h = 1e-4
        for s0 in (1.0 / R, -1.0 / R):
            def xy(e: float) -> tuple[float, float]:
                p = hel.point(s0, e)
                return p.x, p.y
            x0, y0 = xy(0.0)
            xp, yp = xy(h)
            xm, ym = xy(-h)
            dx, dy = (xp - xm) / (2 * h), (yp - ym) / (2 * h)
            ddx, ddy = (xp - 2 * x0 + xm) / (h * h), (yp - 2 * y0 + ym) / (h * h)
            worst = max(worst, abs(dx * ddy - dy * ddx + R))
    return CheckResult("singular_helix_geometry",
                       "arclength parameterization; planar curvature -R", worst, 1e-6)


# ---------------------------------------------------------------------------
# suite registry
# ---------------------------------------------------------------------------

def run_core() -> list[CheckResult]:
    out = [check_connection_table(), check_curvature_table(), check_ricci_table(),
           check_ricci_normal(), check_associativity(), check_group_inverse(),
           check_left_invariance(), check_bracket_flows(), check_torsion_free(),
           check_metric_compatibility(), check_curvature_from_connection(),
           check_horizontal_curvature_form(), check_jop(), check_symmetry_groups()]
    return out


def run_geodesics() -> list[CheckResult]:
    out = [check_fgh(), check_horgeo()]
    out.extend(check_conserved())
    out.append(check_semigroup())
    out.append(check_jacobi_trivial())
    out.extend(check_jacobi_helicoid())
    out.append(check_jacobi_random())
    return out


def run_surfaces() -> list[CheckResult]:
    out = [check_frame_relations()]
    out.extend(check_characteristic_derivatives())
    out.append(check_zbzs())
    out.append(check_helicoid_closed_forms()[0])
    out.append(check_minimality())
    out.append(check_vertical_plane())
    out.extend(check_characteristic_rays())
    out.extend(check_ruled_charts())
    out.append(check_singular_locus())
    out.extend(check_area_scaling())
    return out


def run_stability() -> list[CheckResult]:
    out = list(check_helicoid_closed_forms()[1:])  # q at R=2 and R=1
    out += [check_lnh_closed_vs_direct(), check_lnh_sign_catenoid(),
            check_lnh_sign_helicoid(), check_indexform3(), check_discriminant(),
            check_jacobi_coefficients(), check_qform_regular()]
    out.extend(check_bracket())
    out.extend(check_second_variation())
    out.append(check_h2_certificate()[0])
    out.append(check_catenoid_certificate()[0])
    out.extend(check_vertical_variation())
    out.extend(check_boundary_flux())
    out.append(check_singular_curve_geometry())
    return out


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "core": run_core,
    "geodesics": run_geodesics,
    "surfaces": run_surfaces,
    "stability": run_stability,
}


def run_suites(names: Iterable[str],
               tol_overrides: dict[str, float] | None = None) -> list[CheckResult]:
    results: list[CheckResult] = []
    for name in names:
        results.extend(SUITES[name]())
    if tol_overrides:
        results = [replace(r, threshold=tol_overrides.get(r.name, r.threshold))
                   for r in results]
    return results
