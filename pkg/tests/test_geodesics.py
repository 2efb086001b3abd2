import math

import mpmath as mp
import pytest

from h1geom.core import FrameVector, ORIGIN, Point, dot, euclidean_to_frame
from h1geom.geodesics import (GeodesicArc, commutation_residual, exp_euclidean,
                              exp_geodesic, exp_point, helpers_fgh,
                              jacobi_field, jacobi_residual,
                              straight_line_residual)


def test_fgh_special_values():
    f, g, h = helpers_fgh(0.0)
    assert (f, g, h) == (1.0, 0.0, 0.0)
    f, g, _ = helpers_fgh(math.pi)
    assert abs(f) <= 1e-16
    assert abs(g - 2.0 / math.pi) <= 1e-16


@pytest.mark.parametrize("x", [1e-4, -1e-4, 5e-5, 9.9e-5, 1.0001e-4, 2e-4, 0.5])
def test_fgh_reference_values(x):
    # gold reference at 50 digits; the flow only consumes s g(2ls) and
    # s^2 h(2ls), so g and h are held to x-scaled absolute accuracy (the
    # closed branch above the cutoff carries the usual 1-cos cancellation)
    mp.mp.dps = 50
    xm = mp.mpf(x)
    f_ref, g_ref, h_ref = (mp.sin(xm) / xm, (1 - mp.cos(xm)) / xm,
                           (xm - mp.sin(xm)) / xm ** 2)
    f, g, h = helpers_fgh(x)
    assert abs(f - float(f_ref)) <= 4e-16
    assert abs(x * (g - float(g_ref))) <= 4e-16
    assert abs(x * x * (h - float(h_ref))) <= 4e-16


def test_straight_line_cases():
    p = Point(0.4, -0.7, 1.2)
    v = euclidean_to_frame(p, (0.6, 0.8, 0.6 * p.y - 0.8 * p.x))  # horizontal
    assert abs(v.c) <= 1e-16
    q, vel = exp_geodesic(GeodesicArc(p, v), 2.5)
    ve = (0.6, 0.8, 0.6 * p.y - 0.8 * p.x)
    assert max(abs(q.x - p.x - 2.5 * ve[0]), abs(q.y - p.y - 2.5 * ve[1]),
               abs(q.t - p.t - 2.5 * ve[2])) <= 1e-12
    assert abs(vel.norm() - v.norm()) <= 1e-14

    vert = FrameVector(0.0, 0.0, 1.0, ORIGIN)
    q, _ = exp_geodesic(GeodesicArc(ORIGIN, vert), 3.0)
    assert (q.x, q.y, q.t) == (0.0, 0.0, 3.0)


def test_unit_circle_lift_example():
    # from the origin with Euclidean velocity (1,0,1): after s = pi the
    # horizontal projection closes and the height is 3 pi / 2
    v = euclidean_to_frame(ORIGIN, (1.0, 0.0, 1.0))
    assert v.c == 1.0
    q, vel = exp_geodesic(GeodesicArc(ORIGIN, v), math.pi)
    assert max(abs(q.x), abs(q.y)) <= 1e-12
    assert abs(q.t - 1.5 * math.pi) <= 1e-12
    assert abs(vel.c - 1.0) <= 1e-14


def test_conservation_and_semigroup():
    p = Point(0.8, -0.1, 0.5)
    v = FrameVector(0.7, -0.4, 0.9, p)
    arc = GeodesicArc(p, v)
    speed = v.norm()
    for i in range(41):
        s = -10.0 + 0.5 * i
        _, vel = exp_geodesic(arc, s)
        assert abs(vel.c - arc.lam) <= 1e-10
        assert abs(vel.norm() - speed) <= 1e-10
    q1, v1 = exp_geodesic(arc, 1.3)
    direct, _ = exp_geodesic(arc, 3.7)
    rest, _ = exp_geodesic(GeodesicArc(q1, v1), 3.7 - 1.3)
    assert max(abs(direct.x - rest.x), abs(direct.y - rest.y),
               abs(direct.t - rest.t)) <= 1e-9


def test_exp_euclidean_matches_typed_api():
    p = Point(0.4, 1.0, -0.3)
    v = FrameVector(0.2, -0.5, 0.8, p)
    q, _ = exp_geodesic(GeodesicArc(p, v), 1.7)
    from h1geom.core import frame_to_euclidean
    q2 = exp_euclidean(p.coords(), frame_to_euclidean(v), 1.7)
    assert max(abs(a - b) for a, b in zip(q.coords(), q2)) <= 1e-15


def test_arc_requires_matching_base():
    with pytest.raises(ValueError):
        GeodesicArc(ORIGIN, FrameVector(1, 0, 0, Point(1, 0, 0)))


def _helicoid_family(R=2.0):
    def alpha(e):
        return Point(0.0, 0.0, e / R)

    def u_of(e):
        return euclidean_to_frame(alpha(e), (math.sin(R * e), math.cos(R * e), 0.0))

    return alpha, u_of


def test_jacobi_helicoid_rulings():
    alpha, u_of = _helicoid_family()
    for eps, s in ((0.0, 0.5), (0.4, -1.2)):
        sample = jacobi_field(alpha, u_of, eps, s)
        _, vel = exp_geodesic(GeodesicArc(alpha(eps), u_of(eps)), s)
        assert straight_line_residual(sample, vel) <= 1e-5
        assert jacobi_residual(sample, vel) <= 1e-5
        assert commutation_residual(alpha, u_of, eps, s) <= 1e-5
        # vertical component is 1/R - R s^2 for this family
        tvec = FrameVector(0, 0, 1, sample.V.base)
        assert abs(dot(sample.V, tvec) - (0.5 - 2.0 * s * s)) <= 1e-9


def test_jacobi_general_family():
    def alpha(e):
        return Point(math.sin(e), e, 0.3 * e * e)

    def u_of(e):
        return FrameVector(0.8 + 0.1 * e, -0.5 * e, 0.9 + 0.2 * math.cos(e), alpha(e))

    sample = jacobi_field(alpha, u_of, 0.3, -1.0)
    _, vel = exp_geodesic(GeodesicArc(alpha(0.3), u_of(0.3)), -1.0)
    assert jacobi_residual(sample, vel) <= 1e-4


def test_exp_point_shortcut():
    p = Point(1.0, 2.0, 3.0)
    v = FrameVector(0.5, 0.0, 0.0, p)
    assert exp_point(p, v, 2.0).x == 2.0
