"""Parameterized surface patches and their sub-Riemannian invariants.

A chart supplies Euclidean partials of the immersion through second order;
everything else (unit normal N, horizontal normal N_h, horizontal Gauss map
nu_h, characteristic field Z = J(nu_h), the tangent field
S = <N,T> nu_h - |N_h| T, shape-operator entries and mean curvatures) is
derived pointwise in frame coefficients.  The second fundamental form is
computed as II_ij = <N, D_{F_i} F_j> from the connection table, so analytic
charts incur no finite differencing; ruled charts differentiate their
generating curve numerically and inherit ~1e-6 accuracy.

Points where the tangent plane is horizontal (|N_h| = 0) are singular: the
characteristic quantities are undefined there and requesting them raises
``SingularPoint``.  The sub-Riemannian area density |N_h| |F_1 x F_2| equals
the horizontal norm of F_1 x F_2 and extends continuously by zero across the
singular locus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import (FrameVector, Point, Vec3, connection_apply, cross, dot,
                   frame_to_euclidean, jop)
from .errors import NonFiniteValue, SingularPoint, StoppedAtSingular
from .numerics import QuadratureSpec, Rect, integrate_2d

SINGULAR_TOL = 1e-9


@dataclass(frozen=True)
class ChartJet:
    """Euclidean partials of the immersion at one parameter point."""

    p: Point
    f1: Vec3
    f2: Vec3
    f11: Vec3
    f12: Vec3
    f22: Vec3


class Chart:
    """Base class: a C^2 map from a parameter rectangle into the group."""

    domain: Rect = ((-1.0, 1.0), (-1.0, 1.0))

    def point(self, u1: float, u2: float) -> Point:
        return self.jet(u1, u2).p

    def jet(self, u1: float, u2: float) -> ChartJet:
        raise NotImplementedError


@dataclass(frozen=True)
class SurfaceFrame:
    """Pointwise geometric package of a surface at a chart point.

    ``riem_area`` is |F_1 x F_2| (Riemannian density against du1 du2) and
    ``q`` is the index-form potential |B(Z)+S|^2 - 4|N_h|^2.  Characteristic
    entries are None at singular points when they were allowed through.
    """

    N: FrameVector
    Nh_norm: float
    NT: float
    riem_area: float
    nu_h: Optional[FrameVector]
    Z: Optional[FrameVector]
    S: Optional[FrameVector]
    BZZ: Optional[float]
    BZS: Optional[float]
    BSS: Optional[float]
    H: Optional[float]
    HR: Optional[float]
    q: Optional[float]
    z_chart: Optional[tuple[float, float]]
    s_chart: Optional[tuple[float, float]]
    dNh: Optional[tuple[float, float]]
    dNT: Optional[tuple[float, float]]

    @property
    def regular(self) -> bool:
        return self.Z is not None


def _coeff_partials(jet: ChartJet) -> tuple:
    """Frame coefficients of F_1, F_2 and their chart-coordinate partials.

    The T-coefficient of F_j is c_j = f_j^t - y f_j^x + x f_j^y, so its
    partial picks up products of first partials besides the second partials
    of the map itself.
    """
    p = jet.p
    x, y = p.x, p.y

    def c_of(v: Vec3) -> float:
        return v[2] - y * v[0] + x * v[1]

    def dc(second: Vec3, fi: Vec3, fj: Vec3) -> float:
        # d/du_i of c(F_j) with second = d^2F/du_i du_j
        return second[2] - fi[1] * fj[0] - y * second[0] + fi[0] * fj[1] + x * second[1]

    c1 = (jet.f1[0], jet.f1[1], c_of(jet.f1))
    c2 = (jet.f2[0], jet.f2[1], c_of(jet.f2))
    d1c1 = (jet.f11[0], jet.f11[1], dc(jet.f11, jet.f1, jet.f1))
    d2c1 = (jet.f12[0], jet.f12[1], dc(jet.f12, jet.f2, jet.f1))
    d1c2 = (jet.f12[0], jet.f12[1], dc(jet.f12, jet.f1, jet.f2))
    d2c2 = (jet.f22[0], jet.f22[1], dc(jet.f22, jet.f2, jet.f2))
    return c1, c2, (d1c1, d2c1), (d1c2, d2c2)


def surface_frame(chart: Chart, u: tuple[float, float],
                  singular_ok: bool = False,
                  singular_tol: float = SINGULAR_TOL) -> SurfaceFrame:
    """Full geometric package at chart point ``u``.

    Raises ``SingularPoint`` when |N_h| <= singular_tol unless
    ``singular_ok`` is set, in which case the characteristic entries are
    returned as None.
    """
    u1, u2 = u
    jet = chart.jet(u1, u2)
    p = jet.p
    c1, c2, dcs1, dcs2 = _coeff_partials(jet)
    e1 = FrameVector(c1[0], c1[1], c1[2], p)
    e2 = FrameVector(c2[0], c2[1], c2[2], p)
    cr = cross(e1, e2)
    w = cr.norm()
    if not (w > 0.0) or not math.isfinite(w):
        raise NonFiniteValue(f"chart is not an immersion at {u!r}")
    n = cr.scaled(1.0 / w)
    nt = n.c
    nh = math.hypot(n.a, n.b)

    if nh <= singular_tol:
        if not singular_ok:
            raise SingularPoint(f"|N_h| = {nh:.3e} at {u!r}")
        return SurfaceFrame(n, nh, nt, w, None, None, None, None, None, None,
                            None, None, None, None, None, None, None)

    nu = FrameVector(n.a / nh, n.b / nh, 0.0, p)
    z = jop(nu)
    s = FrameVector(nt * nu.a, nt * nu.b, -nh, p)

    # second fundamental form in the chart basis: II_ij = <N, D_{F_i} F_j>
    def second_form(dcoeff: Vec3, direction: FrameVector, vcoeffs: Vec3) -> float:
        out = list(dcoeff)
        for k in range(3):
            corr = connection_apply(direction.coeffs(), k)
            out[0] += vcoeffs[k] * corr[0]
            out[1] += vcoeffs[k] * corr[1]
            out[2] += vcoeffs[k] * corr[2]
        return n.a * out[0] + n.b * out[1] + n.c * out[2]

    ii11 = second_form(dcs1[0], e1, c1)
    ii12 = second_form(dcs1[1], e2, c1)
    ii21 = second_form(dcs2[0], e1, c2)
    ii22 = second_form(dcs2[1], e2, c2)
    ii12 = 0.5 * (ii12 + ii21)  # symmetric (torsion-free); average round-off

    g11 = dot(e1, e1)
    g12 = dot(e1, e2)
    g22 = dot(e2, e2)
    det = w * w  # Gram determinant

    def tangent_in_chart(v: FrameVector) -> tuple[float, float]:
        r1 = dot(v, e1)
        r2 = dot(v, e2)
        return ((g22 * r1 - g12 * r2) / det, (g11 * r2 - g12 * r1) / det)

    zc = tangent_in_chart(z)
    sc = tangent_in_chart(s)

    def ii(a: tuple[float, float], b: tuple[float, float]) -> float:
        return (a[0] * b[0] * ii11 + (a[0] * b[1] + a[1] * b[0]) * ii12
                + a[1] * b[1] * ii22)

    bzz = ii(zc, zc)
    bzs = ii(zc, sc)
    bss = ii(sc, sc)
    h = bzz / (2.0 * nh)
    hr = 0.5 * (bzz + bss)
    qval = bzz * bzz + (bzs + 1.0) ** 2 - 4.0 * nh * nh

    # chart-coordinate derivatives of |N_h| and <N,T> from the shape
    # operator: for tangent v, v(|N_h|) = -<N,T>(<B(v),S> + <J(v),nu_h>) and
    # v(<N,T>) = |N_h| <B(v),S> + <N,J(v)>.
    dnh = []
    dnt = []
    for ev, coeff in ((e1, (1.0, 0.0)), (e2, (0.0, 1.0))):
        bvs = ii(coeff, sc)
        jv = jop(ev)
        dnh.append(-nt * bvs - nt * dot(jv, nu))
        dnt.append(nh * bvs + dot(n, jv))

    return SurfaceFrame(n, nh, nt, w, nu, z, s, bzz, bzs, bss, h, hr, qval,
                        zc, sc, (dnh[0], dnh[1]), (dnt[0], dnt[1]))


def mean_curvatures(chart: Chart, u: tuple[float, float]) -> tuple[float, float]:
    """(H, H_R): sub-Riemannian and Riemannian mean curvature at ``u``."""
    fr = surface_frame(chart, u)
    return fr.H, fr.HR


def area_element(chart: Chart, u: tuple[float, float]) -> float:
    """Sub-Riemannian area density against du1 du2: |N_h| |F_1 x F_2|.

    Equals the horizontal norm of F_1 x F_2, hence is continuous (value 0)
    across singular points.
    """
    u1, u2 = u
    jet = chart.jet(u1, u2)
    p = jet.p
    c1, c2, _, _ = _coeff_partials(jet)
    e1 = FrameVector(c1[0], c1[1], c1[2], p)
    e2 = FrameVector(c2[0], c2[1], c2[2], p)
    cr = cross(e1, e2)
    return math.hypot(cr.a, cr.b)


def area(chart: Chart, region: Rect | None, quad: QuadratureSpec) -> float:
    """Sub-Riemannian area of the chart over ``region`` (default: domain)."""
    rect = region if region is not None else chart.domain
    return integrate_2d(lambda a, b: area_element(chart, (a, b)), rect, quad)


# ---------------------------------------------------------------------------
# Characteristic curves and the singular locus
# ---------------------------------------------------------------------------

def _chart_velocity(chart: Chart, u: tuple[float, float], which: str,
                    singular_tol: float = SINGULAR_TOL) -> tuple[float, float]:
    fr = surface_frame(chart, u, singular_tol=singular_tol)
    return fr.z_chart if which == "Z" else fr.s_chart


def integrate_tangent_field(chart: Chart, u0: tuple[float, float],
                            length: float, steps: int, which: str = "Z",
                            singular_tol: float = SINGULAR_TOL,
                            ) -> list[tuple[float, float]]:
    """RK4 integral curve of Z or S in chart coordinates (unit ambient speed).

    Raises ``StoppedAtSingular`` if the curve meets the singular locus.
    """
    h = length / steps
    us = [u0]
    u = u0
    try:
        for _ in range(steps):
            k1 = _chart_velocity(chart, u, which, singular_tol)
            k2 = _chart_velocity(chart, (u[0] + 0.5 * h * k1[0], u[1] + 0.5 * h * k1[1]), which, singular_tol)
            k3 = _chart_velocity(chart, (u[0] + 0.5 * h * k2[0], u[1] + 0.5 * h * k2[1]), which, singular_tol)
            k4 = _chart_velocity(chart, (u[0] + h * k3[0], u[1] + h * k3[1]), which, singular_tol)
            u = (u[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                 u[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]))
            us.append(u)
    except SingularPoint as exc:
        raise StoppedAtSingular(str(exc)) from exc
    return us


def characteristic_ray(chart: Chart, u0: tuple[float, float], length: float,
                       steps: int) -> list[Point]:
    """Ambient polyline of the characteristic curve from ``u0``.

    On minimal surfaces the result is a straight segment.
    """
    us = integrate_tangent_field(chart, u0, length, steps, "Z")
    return [chart.point(*u) for u in us]


@dataclass(frozen=True)
class SingularLocus:
    cells: list[tuple[int, int]]
    points: list[tuple[float, float]]


def singular_locus(chart: Chart, grid: tuple[int, int],
                   tol: float = 1e-6) -> SingularLocus:
    """Grid cells meeting {|N_h| < tol} plus refined crossings on grid lines.

    The horizontal normal flips direction across a singular curve, so the
    crossing on an edge is located by bisecting the sign of
    <N_h(.), N_h(edge start)>; |N_h| itself touches zero without changing
    sign and cannot be bisected directly.
    """
    (a1, b1), (a2, b2) = chart.domain
    n1, n2 = grid
    xs = [a1 + (b1 - a1) * i / n1 for i in range(n1 + 1)]
    ys = [a2 + (b2 - a2) * j / n2 for j in range(n2 + 1)]

    def nh_vec(u1: float, u2: float) -> tuple[float, float, float]:
        fr = surface_frame(chart, (u1, u2), singular_ok=True)
        return (fr.N.a, fr.N.b, fr.Nh_norm)

    vals = [[nh_vec(x, y) for y in ys] for x in xs]

    cells = []
    for i in range(n1):
        for j in range(n2):
            corners = (vals[i][j], vals[i + 1][j], vals[i][j + 1], vals[i + 1][j + 1])
            if min(c[2] for c in corners) < tol:
                cells.append((i, j))

    def refine(pa: tuple[float, float], pb: tuple[float, float],
               ref: tuple[float, float]) -> tuple[float, float]:
        # bisection on the signed alignment with the horizontal normal at pa
        def signed(u: tuple[float, float]) -> float:
            fr = surface_frame(chart, u, singular_ok=True)
            return fr.N.a * ref[0] + fr.N.b * ref[1]
        lo, hi = pa, pb
        flo = signed(lo)
        for _ in range(80):
            mid = (0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]))
            fm = signed(mid)
            if flo * fm > 0.0:
                lo, flo = mid, fm
            else:
                hi = mid
            if abs(hi[0] - lo[0]) + abs(hi[1] - lo[1]) < 1e-14:
                break
        return (0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]))

    points = []
    for i in range(n1 + 1):
        for j in range(n2 + 1):
            va = vals[i][j]
            if va[2] < tol:
                points.append((xs[i], ys[j]))
                continue
            for di, dj in ((1, 0), (0, 1)):
                i2, j2 = i + di, j + dj
                if i2 > n1 or j2 > n2:
                    continue
                vb = vals[i2][j2]
                if va[0] * vb[0] + va[1] * vb[1] < 0.0:
                    points.append(refine((xs[i], ys[j]), (xs[i2], ys[j2]),
                                         (va[0], va[1])))
    return SingularLocus(sorted(cells), points)


# ---------------------------------------------------------------------------
# Catalog charts
# ---------------------------------------------------------------------------

class VerticalPlaneChart(Chart):
    """The plane x = 0 charted by (y, t)."""

    def __init__(self, domain: Rect = ((-1.0, 1.0), (-1.0, 1.0))):
        self.domain = domain

    def jet(self, u1: float, u2: float) -> ChartJet:
        zero = (0.0, 0.0, 0.0)
        return ChartJet(Point(0.0, u1, u2), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0),
                        zero, zero, zero)


class GraphChart(Chart):
    """A t-graph t = phi(x, y) with analytic partials of phi."""

    def __init__(self, phi, phi1, phi2, phi11, phi12, phi22,
                 domain: Rect = ((-1.0, 1.0), (-1.0, 1.0))):
        self._phi = (phi, phi1, phi2, phi11, phi12, phi22)
        self.domain = domain

    def jet(self, u1: float, u2: float) -> ChartJet:
        phi, p1, p2, p11, p12, p22 = self._phi
        return ChartJet(
            Point(u1, u2, phi(u1, u2)),
            (1.0, 0.0, p1(u1, u2)),
            (0.0, 1.0, p2(u1, u2)),
            (0.0, 0.0, p11(u1, u2)),
            (0.0, 0.0, p12(u1, u2)),
            (0.0, 0.0, p22(u1, u2)),
        )


def plane_chart(a: float, b: float, c: float,
                domain: Rect = ((-1.0, 1.0), (-1.0, 1.0))) -> GraphChart:
    """The plane t = a x + b y + c."""
    return GraphChart(lambda x, y: a * x + b * y + c,
                      lambda x, y: a, lambda x, y: b,
                      lambda x, y: 0.0, lambda x, y: 0.0, lambda x, y: 0.0,
                      domain)


def paraboloid_chart(domain: Rect = ((-1.0, 1.0), (-1.0, 1.0))) -> GraphChart:
    """The hyperbolic paraboloid t = x y."""
    return GraphChart(lambda x, y: x * y,
                      lambda x, y: y, lambda x, y: x,
                      lambda x, y: 0.0, lambda x, y: 1.0, lambda x, y: 0.0,
                      domain)


class HelicoidChart(Chart):
    """The left-handed minimal helicoid of pitch parameter R > 0.

    Chart coordinates are (s, eps), in that order, so that the normal
    N = normalize(F_s x F_eps) has horizontal part along +(cos, -sin) for
    |s| < 1/R and T-component -Rs/W; the singular helices sit at s = +-1/R.
    """

    def __init__(self, R: float, domain: Rect | None = None):
        if R <= 0:
            raise ValueError("R must be positive")
        self.R = R
        self.domain = domain if domain is not None else ((-2.0 / R, 2.0 / R), (-math.pi / R, math.pi / R))

    def ruling_profile(self, s: float) -> float:
        """f(s) = 1/R - R s^2: vertical speed of the generating curve."""
        return 1.0 / self.R - self.R * s * s

    def jet(self, u1: float, u2: float) -> ChartJet:
        R = self.R
        s, eps = u1, u2
        si, co = math.sin(R * eps), math.cos(R * eps)
        return ChartJet(
            Point(s * si, s * co, eps / R),
            (si, co, 0.0),
            (R * s * co, -R * s * si, 1.0 / R),
            (0.0, 0.0, 0.0),
            (R * co, -R * si, 0.0),
            (-R * R * s * si, -R * R * s * co, 0.0),
        )


class CatenoidChart(Chart):
    """The surface t^2 = lam^2 (x^2 + y^2 - lam^2), globally charted.

    Coordinates (theta, phi) with radius lam*cosh(phi) and height
    lam^2*sinh(phi): one analytic chart covering both graph sheets and the
    waist circle, with no square-root branch anywhere.
    """

    def __init__(self, lam: float, domain: Rect = ((0.0, 2.0 * math.pi), (-1.5, 1.5))):
        if lam == 0:
            raise ValueError("lam must be nonzero")
        self.lam = lam
        self.domain = domain

    def locate(self, p: Point) -> tuple[float, float]:
        """Chart coordinates of an ambient point on the surface."""
        return (math.atan2(p.y, p.x) % (2.0 * math.pi),
                math.asinh(p.t / (self.lam * self.lam)))

    def implicit_residual(self, p: Point) -> float:
        lam = self.lam
        return p.t * p.t - lam * lam * (p.x * p.x + p.y * p.y - lam * lam)

    def jet(self, u1: float, u2: float) -> ChartJet:
        lam = self.lam
        th, ph = u1, u2
        co, si = math.cos(th), math.sin(th)
        ch, sh = math.cosh(ph), math.sinh(ph)
        r = lam * ch
        return ChartJet(
            Point(r * co, r * si, lam * lam * sh),
            (-r * si, r * co, 0.0),
            (lam * sh * co, lam * sh * si, lam * lam * ch),
            (-r * co, -r * si, 0.0),
            (-lam * sh * si, lam * sh * co, 0.0),
            (r * co, r * si, lam * lam * sh),
        )


class TransformedChart(Chart):
    """A chart composed with an affine ambient map q -> M q + shift.

    Dilations, vertical rotations and left translations are all affine in
    Euclidean coordinates, so the composed second partials are exact.
    """

    def __init__(self, base: Chart, matrix: tuple[Vec3, Vec3, Vec3],
                 shift: Vec3 = (0.0, 0.0, 0.0)):
        self.base = base
        self.matrix = matrix
        self.shift = shift
        self.domain = base.domain

    def _apply(self, v: Vec3, translate: bool) -> Vec3:
        m = self.matrix
        out = tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))
        if translate:
            out = (out[0] + self.shift[0], out[1] + self.shift[1], out[2] + self.shift[2])
        return out

    def jet(self, u1: float, u2: float) -> ChartJet:
        j = self.base.jet(u1, u2)
        p = self._apply(j.p.coords(), True)
        return ChartJet(Point(*p),
                        self._apply(j.f1, False), self._apply(j.f2, False),
                        self._apply(j.f11, False), self._apply(j.f12, False),
                        self._apply(j.f22, False))


def dilated(chart: Chart, lam: float) -> TransformedChart:
    s = math.exp(lam)
    return TransformedChart(chart, ((s, 0.0, 0.0), (0.0, s, 0.0), (0.0, 0.0, s * s)))


def rotated(chart: Chart, theta: float) -> TransformedChart:
    co, si = math.cos(theta), math.sin(theta)
    return TransformedChart(chart, ((co, -si, 0.0), (si, co, 0.0), (0.0, 0.0, 1.0)))


def translated(chart: Chart, p0: Point) -> TransformedChart:
    return TransformedChart(chart, ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (p0.y, -p0.x, 1.0)),
                            p0.coords())


# ---------------------------------------------------------------------------
# Ruled coordinates
# ---------------------------------------------------------------------------

class RuledChart(Chart):
    """F(eps, s) = Gamma(eps) + s Z(Gamma(eps)) over a base chart.

    Gamma is the unit-speed integral curve of S through ``u0`` (RK4 in base
    chart coordinates, cached on a fixed grid); rulings are ambient straight
    lines.  The s-partials are exact, the eps-partials use Richardson
    central differences, so jets carry ~1e-6 accuracy.
    """

    EPS_FD_STEP = 1e-4

    def __init__(self, base: Chart, u0: tuple[float, float], eps_range: float,
                 s_range: tuple[float, float], grid_step: float = 0.005):
        self.base = base
        self.u0 = u0
        self.eps_range = eps_range
        self.domain = ((-eps_range, eps_range), s_range)
        n = max(4, math.ceil(eps_range / grid_step))
        self._h0 = eps_range / n
        self._n = n
        fwd = integrate_tangent_field(base, u0, eps_range, n, "S")
        bwd = integrate_tangent_field(base, u0, -eps_range, n, "S")
        self._nodes = list(reversed(bwd[1:])) + fwd  # index j+n, j in [-n, n]
        self._cache: dict[float, tuple[float, float]] = {}

    def curve_chart_point(self, eps: float) -> tuple[float, float]:
        """Base-chart coordinates of Gamma(eps)."""
        if eps in self._cache:
            return self._cache[eps]
        j = round(eps / self._h0)
        j = max(-self._n, min(self._n, j))
        rem = eps - j * self._h0
        u = self._nodes[j + self._n]
        if rem != 0.0:
            u = integrate_tangent_field(self.base, u, rem, 1, "S")[-1]
        self._cache[eps] = u
        return u

    def curve_data(self, eps: float) -> tuple[Vec3, Vec3]:
        """Euclidean Gamma(eps) and the ruling direction Z there."""
        u = self.curve_chart_point(eps)
        fr = surface_frame(self.base, u)
        return fr.Z.base.coords(), frame_to_euclidean(fr.Z)

    def point(self, u1: float, u2: float) -> Point:
        g, z = self.curve_data(u1)
        return Point(g[0] + u2 * z[0], g[1] + u2 * z[1], g[2] + u2 * z[2])

    def jet(self, u1: float, u2: float) -> ChartJet:
        h = self.EPS_FD_STEP
        g0, z0 = self.curve_data(u1)
        gp, zp = self.curve_data(u1 + h)
        gm, zm = self.curve_data(u1 - h)
        gp2, zp2 = self.curve_data(u1 + h / 2)
        gm2, zm2 = self.curve_data(u1 - h / 2)

        def d1(plus, minus, plus2, minus2, i):
            a = (plus[i] - minus[i]) / (2.0 * h)
            b = (plus2[i] - minus2[i]) / h
            return (4.0 * b - a) / 3.0

        def d2(plus, mid, minus, plus2, minus2, i):
            a = (plus[i] - 2.0 * mid[i] + minus[i]) / (h * h)
            b = (plus2[i] - 2.0 * mid[i] + minus2[i]) / (0.25 * h * h)
            return (4.0 * b - a) / 3.0

        dg = tuple(d1(gp, gm, gp2, gm2, i) for i in range(3))
        dz = tuple(d1(zp, zm, zp2, zm2, i) for i in range(3))
        ddg = tuple(d2(gp, g0, gm, gp2, gm2, i) for i in range(3))
        ddz = tuple(d2(zp, z0, zm, zp2, zm2, i) for i in range(3))
        s = u2
        return ChartJet(
            Point(g0[0] + s * z0[0], g0[1] + s * z0[1], g0[2] + s * z0[2]),
            tuple(dg[i] + s * dz[i] for i in range(3)),
            z0,
            tuple(ddg[i] + s * ddz[i] for i in range(3)),
            dz,
            (0.0, 0.0, 0.0),
        )


def ruled_coordinates(chart: Chart, u0: tuple[float, float], eps_range: float,
                      s_range: tuple[float, float]) -> RuledChart:
    """Ruled chart around the characteristic line through ``u0``."""
    return RuledChart(chart, u0, eps_range, s_range)


def catalog_surface(kind: str, **params) -> Chart:
    """Factory for the named surfaces used throughout the test suites."""
    if kind == "vertical_plane":
        return VerticalPlaneChart(**params)
    if kind == "plane":
        return plane_chart(**params)
    if kind == "paraboloid":
        return paraboloid_chart(**params)
    if kind == "helicoid":
        return HelicoidChart(**params)
    if kind == "catenoid":
        return CatenoidChart(**params)
    raise ValueError(f"unknown catalog surface {kind!r}")
