"""The first Heisenberg group with its left-invariant Riemannian metric.

Points live in Euclidean coordinates (x, y, t) with the group product

    (x, y, t) * (x', y', t') = (x + x', y + y', t + t' + y x' - x y'),

i.e. the t-shift is Im(z conj(z')) for z = x + iy.  Tangent vectors are
stored as coefficients in the left-invariant orthonormal frame

    X = d/dx + y d/dt,   Y = d/dy - x d/dt,   T = d/dt,

so the metric is the identity on coefficients and the contact form
w = -y dx + x dy + dt reads off the T-component.  The Levi-Civita
connection and curvature of this metric are encoded in small constant
tables below; everything in this module is a pure function of immutable
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .errors import NonFiniteValue

Vec3 = tuple[float, float, float]


def _finite3(v: Sequence[float], what: str) -> None:
    if not all(math.isfinite(c) for c in v):
        raise NonFiniteValue(f"non-finite {what}: {tuple(v)!r}")


@dataclass(frozen=True)
class Point:
    """A point of the group in Euclidean coordinates."""

    x: float
    y: float
    t: float

    def __post_init__(self):
        _finite3((self.x, self.y, self.t), "point")

    def coords(self) -> Vec3:
        return (self.x, self.y, self.t)


ORIGIN = Point(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class FrameVector:
    """A tangent vector at ``base`` with frame coefficients (a, b, c)."""

    a: float
    b: float
    c: float
    base: Point

    def __post_init__(self):
        _finite3((self.a, self.b, self.c), "frame vector")

    def coeffs(self) -> Vec3:
        return (self.a, self.b, self.c)

    def norm(self) -> float:
        return math.sqrt(self.a * self.a + self.b * self.b + self.c * self.c)

    def horizontal(self) -> "FrameVector":
        """Horizontal projection: zero the T-coefficient."""
        return FrameVector(self.a, self.b, 0.0, self.base)

    def scaled(self, k: float) -> "FrameVector":
        return FrameVector(k * self.a, k * self.b, k * self.c, self.base)

    def __add__(self, other: "FrameVector") -> "FrameVector":
        _require_same_base(self, other)
        return FrameVector(self.a + other.a, self.b + other.b, self.c + other.c, self.base)

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        _require_same_base(self, other)
        return FrameVector(self.a - other.a, self.b - other.b, self.c - other.c, self.base)


def _require_same_base(*vs: FrameVector) -> None:
    p0 = vs[0].base
    for v in vs[1:]:
        if v.base.coords() != p0.coords():
            raise ValueError("frame vectors must share a base point")


def dot(u: FrameVector, v: FrameVector) -> float:
    _require_same_base(u, v)
    return u.a * v.a + u.b * v.b + u.c * v.c


def cross(u: FrameVector, v: FrameVector) -> FrameVector:
    """Right-handed cross product on frame coefficients (X x Y = T)."""
    _require_same_base(u, v)
    return FrameVector(
        u.b * v.c - u.c * v.b,
        u.c * v.a - u.a * v.c,
        u.a * v.b - u.b * v.a,
        u.base,
    )


# ---------------------------------------------------------------------------
# Group operations and symmetries
# ---------------------------------------------------------------------------

def group_mul(p: Point, q: Point) -> Point:
    return Point(p.x + q.x, p.y + q.y, p.t + q.t + p.y * q.x - p.x * q.y)


def group_inverse(p: Point) -> Point:
    return Point(-p.x, -p.y, -p.t)


def dilate(lam: float, p: Point) -> Point:
    """Anisotropic dilation: (x, y, t) -> (e^l x, e^l y, e^{2l} t)."""
    s = math.exp(lam)
    return Point(s * p.x, s * p.y, s * s * p.t)


def rotate_z(theta: float, p: Point) -> Point:
    """Rotation about the t-axis; a horizontal isometry."""
    co, si = math.cos(theta), math.sin(theta)
    return Point(co * p.x - si * p.y, si * p.x + co * p.y, p.t)


def left_translation_jacobian(p: Point) -> tuple[Vec3, Vec3, Vec3]:
    """Differential of q -> p*q (constant in q; the map is affine)."""
    return ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (p.y, -p.x, 1.0))


# ---------------------------------------------------------------------------
# Frame and coefficient conversion
# ---------------------------------------------------------------------------

def frame_at(p: Point) -> tuple[Vec3, Vec3, Vec3]:
    """Euclidean coordinate vectors of X, Y, T at ``p``."""
    return ((1.0, 0.0, p.y), (0.0, 1.0, -p.x), (0.0, 0.0, 1.0))


def euclidean_to_frame(p: Point, v: Sequence[float]) -> FrameVector:
    """Frame coefficients of the Euclidean tangent vector ``v`` at ``p``.

    The T-coefficient is the contact form: c = v_t - y v_x + x v_y.
    """
    vx, vy, vt = v
    return FrameVector(vx, vy, vt - p.y * vx + p.x * vy, p)


def frame_to_euclidean(v: FrameVector) -> Vec3:
    p = v.base
    return (v.a, v.b, v.a * p.y - v.b * p.x + v.c)


def jop(v: FrameVector) -> FrameVector:
    """The 90-degree horizontal rotation: (a, b, c) -> (-b, a, 0)."""
    return FrameVector(-v.b, v.a, 0.0, v.base)


# ---------------------------------------------------------------------------
# Connection, curvature, Ricci
# ---------------------------------------------------------------------------

# Covariant derivatives of the frame fields: D_X Y = -T, D_X T = Y,
# D_Y X = T, D_Y T = -X, D_T X = Y, D_T Y = -X, diagonal zero.
# For an ambient direction W = (a, b, c) this contracts to the rows below.

def connection_apply(w: Vec3, k: int) -> Vec3:
    """Frame coefficients of D_W E_k for the k-th frame field (0=X,1=Y,2=T)."""
    a, b, c = w
    if k == 0:
        return (0.0, c, b)
    if k == 1:
        return (-c, 0.0, -a)
    return (-b, a, 0.0)


def _zero3() -> Vec3:
    return (0.0, 0.0, 0.0)


# R(E_i, E_j) E_k, antisymmetric in (i, j).
_RT_XY = {0: (0.0, -3.0, 0.0), 1: (3.0, 0.0, 0.0), 2: _zero3()}
_RT_XT = {0: (0.0, 0.0, 1.0), 1: _zero3(), 2: (-1.0, 0.0, 0.0)}
_RT_YT = {0: _zero3(), 1: (0.0, 0.0, 1.0), 2: (0.0, -1.0, 0.0)}


def _rt(i: int, j: int, k: int) -> Vec3:
    if i == j:
        return _zero3()
    sign = 1.0
    if i > j:
        i, j, sign = j, i, -1.0
    table = _RT_XY if (i, j) == (0, 1) else _RT_XT if (i, j) == (0, 2) else _RT_YT
    v = table[k]
    return (sign * v[0], sign * v[1], sign * v[2])


def curvature_R(u: FrameVector, v: FrameVector, w: FrameVector) -> FrameVector:
    """Trilinear curvature tensor R(u, v)w of the left-invariant metric."""
    _require_same_base(u, v, w)
    uc, vc, wc = u.coeffs(), v.coeffs(), w.coeffs()
    out = [0.0, 0.0, 0.0]
    for i in range(3):
        if uc[i] == 0.0:
            continue
        for j in range(3):
            if vc[j] == 0.0 or i == j:
                continue
            for k in range(3):
                if wc[k] == 0.0:
                    continue
                r = _rt(i, j, k)
                f = uc[i] * vc[j] * wc[k]
                out[0] += f * r[0]
                out[1] += f * r[1]
                out[2] += f * r[2]
    return FrameVector(out[0], out[1], out[2], u.base)


def ricci(u: FrameVector, v: FrameVector) -> float:
    """Ricci curvature: diag(-2, -2, 2) on frame coefficients."""
    _require_same_base(u, v)
    return -2.0 * u.a * v.a - 2.0 * u.b * v.b + 2.0 * u.c * v.c


# ---------------------------------------------------------------------------
# Coefficient fields and covariant differentiation
# ---------------------------------------------------------------------------

GradFn = Callable[[Point], Vec3]


class FrameField:
    """A tangent field given by frame-coefficient functions a, b, c.

    Gradients (d/dx, d/dy, d/dt of each coefficient) may be supplied
    analytically; otherwise they fall back to central differences with
    step 1e-5 * max(1, |p|) and one Richardson level.
    """

    def __init__(self, a, b, c, grad_a: GradFn | None = None,
                 grad_b: GradFn | None = None, grad_c: GradFn | None = None):
        self._fns = (a, b, c)
        self._grads = (grad_a, grad_b, grad_c)

    @classmethod
    def constant(cls, a: float, b: float, c: float) -> "FrameField":
        zero = lambda p: (0.0, 0.0, 0.0)
        return cls(lambda p: a, lambda p: b, lambda p: c, zero, zero, zero)

    def at(self, p: Point) -> FrameVector:
        return FrameVector(self._fns[0](p), self._fns[1](p), self._fns[2](p), p)

    def coefficient_gradients(self, p: Point) -> tuple[Vec3, Vec3, Vec3]:
        out = []
        for fn, grad in zip(self._fns, self._grads):
            if grad is not None:
                g = grad(p)
            else:
                g = _fd_gradient(fn, p)
            _finite3(g, "coefficient gradient")
            out.append(tuple(g))
        return tuple(out)


X_FIELD = FrameField.constant(1.0, 0.0, 0.0)
Y_FIELD = FrameField.constant(0.0, 1.0, 0.0)
T_FIELD = FrameField.constant(0.0, 0.0, 1.0)


def _fd_gradient(fn: Callable[[Point], float], p: Point) -> Vec3:
    h = 1e-5 * max(1.0, abs(p.x), abs(p.y), abs(p.t))
    out = []
    base = p.coords()
    for i in range(3):
        def sample(step: float) -> float:
            q = list(base)
            q[i] += step
            return fn(Point(*q))
        d1 = (sample(h) - sample(-h)) / (2.0 * h)
        d2 = (sample(h / 2) - sample(-h / 2)) / h
        out.append((4.0 * d2 - d1) / 3.0)
    return tuple(out)


FieldOrVector = Union[FrameField, FrameVector]


def _direction_at(U: FieldOrVector, p: Point) -> FrameVector:
    return U.at(p) if isinstance(U, FrameField) else U


def covariant_derivative(U: FieldOrVector, V: FrameField, p: Point) -> FrameVector:
    """Levi-Civita derivative D_U V at ``p``.

    Differentiates the coefficients of V along the Euclidean direction of
    U(p) and adds the connection correction from the frame table.
    """
    u = _direction_at(U, p)
    ue = frame_to_euclidean(u)
    grads = V.coefficient_gradients(p)
    vc = V.at(p).coeffs()
    out = [0.0, 0.0, 0.0]
    for k in range(3):
        dk = ue[0] * grads[k][0] + ue[1] * grads[k][1] + ue[2] * grads[k][2]
        out[k] += dk
        corr = connection_apply(u.coeffs(), k)
        out[0] += vc[k] * corr[0]
        out[1] += vc[k] * corr[1]
        out[2] += vc[k] * corr[2]
    return FrameVector(out[0], out[1], out[2], p)


def covariant_field(U: FrameField, V: FrameField) -> FrameField:
    """The field p -> D_U V(p), with finite-difference coefficient gradients."""
    def coeff(k: int):
        return lambda p: covariant_derivative(U, V, p).coeffs()[k]
    return FrameField(coeff(0), coeff(1), coeff(2))


def lie_bracket(U: FrameField, V: FrameField, p: Point) -> FrameVector:
    """[U, V] at ``p`` computed on Euclidean components."""
    due = _euclidean_jacobian(U, p)
    dve = _euclidean_jacobian(V, p)
    ue = frame_to_euclidean(U.at(p))
    ve = frame_to_euclidean(V.at(p))
    out = []
    for k in range(3):
        out.append(sum(ue[i] * dve[k][i] - ve[i] * due[k][i] for i in range(3)))
    return euclidean_to_frame(p, out)


def _euclidean_jacobian(U: FrameField, p: Point) -> tuple[Vec3, Vec3, Vec3]:
    """Rows: gradients of the Euclidean components of U."""
    ga, gb, gc = U.coefficient_gradients(p)
    a = U.at(p).a
    b = U.at(p).b
    # U^E = (a, b, a*y - b*x + c); product rule adds the explicit x,y terms.
    row3 = (
        p.y * ga[0] - b - p.x * gb[0] + gc[0],
        a + p.y * ga[1] - p.x * gb[1] + gc[1],
        p.y * ga[2] - p.x * gb[2] + gc[2],
    )
    return (ga, gb, row3)


def flow(U: FrameField, p: Point, time: float, steps: int = 32) -> Point:
    """RK4 flow of the field ``U`` (on Euclidean coordinates)."""
    def vel(q: Point) -> Vec3:
        return frame_to_euclidean(U.at(q))

    h = time / steps
    cur = p
    for _ in range(steps):
        k1 = vel(cur)
        q2 = Point(cur.x + 0.5 * h * k1[0], cur.y + 0.5 * h * k1[1], cur.t + 0.5 * h * k1[2])
        k2 = vel(q2)
        q3 = Point(cur.x + 0.5 * h * k2[0], cur.y + 0.5 * h * k2[1], cur.t + 0.5 * h * k2[2])
        k3 = vel(q3)
        q4 = Point(cur.x + h * k3[0], cur.y + h * k3[1], cur.t + h * k3[2])
        k4 = vel(q4)
        cur = Point(
            cur.x + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
            cur.y + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
            cur.t + h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]),
        )
    return cur
