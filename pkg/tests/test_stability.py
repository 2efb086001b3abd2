import math

import pytest

from h1geom.core import Point
from h1geom.errors import (CertificateNotFound, TubeConditionViolated,
                           TubeTooSmall)
from h1geom.numerics import QuadratureSpec, gauss_legendre_1d, integrate_2d
from h1geom.stability import (InstabilityCertificate, PhiKDelta, Profile,
                              VerticalVariation, boundary_flux,
                              boundary_flux_extrapolated, bracket_integral,
                              bracket_integral_quadrature,
                              certify_instability_h2,
                              certify_instability_nosing,
                              combined_normal_component, cos_arch, cosine_bump,
                              first_variation_direct,
                              h2_certificate_test_function,
                              helicoid_closed_forms, index_form_I,
                              jacobi_vertical_quadratic, l_nh_closed,
                              operator_L, plateau_ramp, q_form,
                              ruled_index_value, scaled_helicoid_certificate,
                              second_variation_direct, separable, smooth_bump, times_nh,
                              vertical_variation_area,
                              vertical_variation_second_difference,
                              z_derivative, zero_function)
from h1geom.surfaces import (CatenoidChart, HelicoidChart, VerticalPlaneChart,
                             ruled_coordinates, surface_frame)

CAT = CatenoidChart(1.0)
HEL2 = HelicoidChart(2.0)
QUAD44 = QuadratureSpec(16, (4, 4))


def nh_field(chart):
    return lambda u: surface_frame(chart, u).Nh_norm


# ---------------------------------------------------------------------------
# directional derivatives and the stability operator
# ---------------------------------------------------------------------------

def test_z_derivative_constant():
    assert abs(z_derivative(CAT, lambda u: 3.7, (1.0, 0.5), 1)) <= 1e-12
    assert abs(z_derivative(CAT, lambda u: 3.7, (1.0, 0.5), 2)) <= 1e-8


def test_z_derivative_stops_at_singular():
    from h1geom.errors import SingularPoint, StoppedAtSingular
    with pytest.raises((SingularPoint, StoppedAtSingular)):
        z_derivative(HEL2, nh_field(HEL2), (0.5, 0.0), 1)


def test_z_derivative_nt_identity():
    for chart, u0 in ((HEL2, (0.2, 0.4)), (CAT, (1.3, -0.6))):
        fr = surface_frame(chart, u0)
        znt = z_derivative(chart, lambda u: surface_frame(chart, u).NT, u0, 1)
        assert abs(znt - fr.Nh_norm * (fr.BZS - 1.0)) <= 1e-5


def test_zz_nh_closed_combination():
    # second ruling derivative of |N_h| against its frame closed form
    for u0 in ((1.0, 0.7), (2.5, -0.4)):
        fr = surface_frame(CAT, u0)
        nh, bzs = fr.Nh_norm, fr.BZS
        want = (-5.0 * nh + 4.0 * nh ** 3 + 2.0 * bzs / nh
                + 2.0 * bzs * bzs / nh - 3.0 * nh * bzs * bzs)
        got = z_derivative(CAT, nh_field(CAT), u0, 2)
        assert abs(got - want) <= 1e-4


def test_operator_l_examples():
    vp = VerticalPlaneChart()
    assert abs(operator_L(vp, nh_field(vp), (0.2, -0.4))) <= 1e-8
    assert abs(operator_L(CAT, lambda u: 0.0, (1.0, 0.3))) == 0.0
    for chart, u0 in ((CAT, (0.8, 0.9)), (HEL2, (0.25, -0.3))):
        lc = l_nh_closed(chart, u0)
        ld = operator_L(chart, nh_field(chart), u0)
        assert abs(ld - lc) <= 1e-4 * max(1.0, abs(lc))


def test_lnh_closed_examples():
    assert abs(l_nh_closed(VerticalPlaneChart(), (0.1, 0.1))) <= 1e-15
    vals = [l_nh_closed(CAT, (th, ph)) for th in (0.5, 2.0, 4.5)
            for ph in (-1.2, -0.3, 0.6, 1.4)]
    assert min(vals) >= -1e-8
    # pitch-2 helicoid: q = 0 forces L(|N_h|) = -4 (1 -+ |N_h|)^2/|N_h|^2 <= 0
    assert abs(l_nh_closed(HEL2, (0.0, 0.3)) + 16.0) <= 1e-12
    for s in (-1.1, -0.3, 0.2, 0.8):
        val = l_nh_closed(HEL2, (s, 0.5))
        fr = surface_frame(HEL2, (s, 0.5))
        sign = 1.0 if abs(s) < 0.5 else -1.0
        want = -4.0 * (1.0 + sign * fr.Nh_norm) ** 2 / fr.Nh_norm ** 2
        assert abs(val - want) <= 1e-10
        assert val < 0.0


def test_jacobi_vertical_quadratic():
    a, b, c, disc = jacobi_vertical_quadratic(VerticalPlaneChart(), (0.3, 0.3))
    assert (a, b, c) == (0.0, 0.0, -1.0)
    assert disc == 0.0
    for chart, u0 in ((CAT, (1.9, 0.4)), (HEL2, (0.3, 0.6))):
        a, b, c, disc = jacobi_vertical_quadratic(chart, u0)
        fr = surface_frame(chart, u0)
        assert abs(b + 2.0 * fr.NT) <= 1e-14
        assert abs(c + fr.Nh_norm) <= 1e-14
        assert abs(disc + fr.Nh_norm ** 2 * l_nh_closed(chart, u0)) <= 1e-12


# ---------------------------------------------------------------------------
# index form and the direct second variation
# ---------------------------------------------------------------------------

def test_index_form_zero_and_symmetry():
    v = separable(cosine_bump(1.5, 0.7), cosine_bump(0.3, 0.5))
    assert index_form_I(CAT, zero_function(), v, QUAD44) == 0.0
    w = separable(cosine_bump(1.7, 0.6), cosine_bump(0.1, 0.4))
    assert abs(index_form_I(CAT, v, w, QUAD44)
               - index_form_I(CAT, w, v, QUAD44)) <= 1e-12


def test_index_form_vertical_plane_nonnegative():
    # q vanishes on the plane, so I(u,u) = int Z(u)^2 over the chart
    vp = VerticalPlaneChart(domain=((-2, 2), (-2, 2)))
    u = separable(cosine_bump(0.0, 1.0), cosine_bump(0.0, 1.0))
    val = index_form_I(vp, u, u, QUAD44)
    direct = integrate_2d(lambda a, b: u.d1(a, b) ** 2, u.support, QUAD44)
    assert val >= 0.0
    assert abs(val - direct) <= 1e-12


def test_index_form_weighted_identity():
    f = separable(cosine_bump(1.5, 0.8), cosine_bump(0.3, 0.5))
    fnh = times_nh(CAT, f)
    lhs = index_form_I(CAT, fnh, fnh, QUAD44)

    def rhs_int(a, b):
        fr = surface_frame(CAT, (a, b))
        zf = fr.z_chart[0] * f.d1(a, b) + fr.z_chart[1] * f.d2(a, b)
        return fr.Nh_norm * (zf * zf - l_nh_closed(CAT, (a, b)) * f.value(a, b) ** 2) \
            * fr.riem_area

    rhs = integrate_2d(rhs_int, f.support, QUAD44)
    assert abs(lhs - rhs) <= 1e-3 * max(1.0, abs(lhs))


def test_second_variation_direct_matches_index_form():
    v = separable(cosine_bump(1.5, 0.7), cosine_bump(0.3, 0.5))
    w = zero_function()
    iform = index_form_I(CAT, v, v, QUAD44)
    a2 = second_variation_direct(CAT, v, w, QUAD44)
    assert abs(a2 - iform) <= 1e-2 * abs(iform)


def test_second_variation_with_vertical_component():
    v = separable(cosine_bump(1.5, 0.7), cosine_bump(0.3, 0.5))
    w = separable(cosine_bump(1.5, 0.6), cosine_bump(0.35, 0.4))
    u = combined_normal_component(CAT, v, w)
    iform = index_form_I(CAT, u, u, QUAD44)
    a2 = second_variation_direct(CAT, v, w, QUAD44)
    assert abs(a2 - iform) <= 1e-2 * abs(iform)


def test_second_variation_zero_deformation():
    assert second_variation_direct(CAT, zero_function(), zero_function(), QUAD44) == 0.0


def test_first_variation_stationary():
    v = separable(cosine_bump(1.5, 0.7), cosine_bump(0.3, 0.5))
    a1, a0 = first_variation_direct(CAT, v, zero_function(), QUAD44)
    assert a0 > 0.0
    assert abs(a1) <= 1e-6 * a0


def test_first_variation_stationary_helicoid_patch():
    # compactly supported in the regular strip 0.1 < s < 0.4
    v = separable(cosine_bump(0.25, 0.15), cosine_bump(0.0, 0.5))
    quad = QuadratureSpec(16, (3, 3))
    a1, a0 = first_variation_direct(HEL2, v, zero_function(), quad)
    assert a0 > 0.0
    assert abs(a1) <= 1e-6 * a0


def test_combined_normal_component_znt():
    # chart derivatives of <N,T> used by the combination satisfy the closed
    # characteristic identity
    u0 = (1.2, 0.5)
    fr = surface_frame(CAT, u0)
    znt = fr.z_chart[0] * fr.dNT[0] + fr.z_chart[1] * fr.dNT[1]
    assert abs(znt - fr.Nh_norm * (fr.BZS - 1.0)) <= 1e-12
    snt = fr.s_chart[0] * fr.dNT[0] + fr.s_chart[1] * fr.dNT[1]
    assert abs(snt - fr.Nh_norm * fr.BSS) <= 1e-12
    znh = fr.z_chart[0] * fr.dNh[0] + fr.z_chart[1] * fr.dNh[1]
    assert abs(znh - fr.NT * (1.0 - fr.BZS)) <= 1e-12


# ---------------------------------------------------------------------------
# the helicoid quadratic form and certificates
# ---------------------------------------------------------------------------

def test_bracket_integral():
    c = bracket_integral(0.6, 2.2)
    assert c < 8.0
    assert abs(c - 7.7723585249161935) <= 1e-12
    q = bracket_integral_quadrature(0.6, 2.2, QuadratureSpec(16, (64, 1)))
    assert abs(c - q) <= 1e-10
    q13 = bracket_integral_quadrature(1.0, 3.0, QuadratureSpec(16, (64, 1)))
    assert abs(bracket_integral(1.0, 3.0) - q13) <= 1e-10
    assert bracket_integral(0.5001, 2.0002) > 8.0
    with pytest.raises(ValueError):
        bracket_integral(0.5, 1.0)


def test_phi_k_delta():
    prof = PhiKDelta(0.6, 2.2).profile()
    assert prof.value(0.0) == 1.0
    assert prof.value(0.55) == 1.0
    assert prof.value(-0.55) == 1.0
    assert abs(prof.value(1.7) - (0.6 + 2.2 - 1.7) / 2.2) <= 1e-15
    assert prof.value(3.0) == 0.0
    assert prof.deriv(0.3) == 0.0
    assert prof.deriv(1.0) == -1.0 / 2.2
    assert prof.deriv(-1.0) == 1.0 / 2.2
    with pytest.raises(ValueError):
        PhiKDelta(0.5, 1.0)
    with pytest.raises(ValueError):
        PhiKDelta(0.8, 0.0)


def test_q_form_certificate_decomposition():
    # Q(u) = C(k, delta) int phi^2 - 8 int phi^2 + 2 int phi'^2 at pitch 2
    k, delta, eps0 = 0.6, 2.2, 10.0
    u = h2_certificate_test_function(k, delta, eps0)
    quad = QuadratureSpec(16, (64, 1))
    q = q_form(2.0, u, quad)
    int_phi2 = eps0
    int_dphi2 = (math.pi / (2 * eps0)) ** 2 * eps0
    want = (bracket_integral(k, delta) - 8.0) * int_phi2 + 2.0 * int_dphi2
    assert abs(q - want) <= 1e-9 * abs(want)
    # the guaranteed Rayleigh bound from the construction
    assert q / int_phi2 < -0.17


def test_q_form_zero_and_regular_support():
    zero_prof = Profile(lambda s: 0.0, lambda s: 0.0, (-3.0, 3.0))
    u0 = separable(zero_prof, plateau_ramp(0.6, 1.0))
    assert q_form(2.0, u0, QuadratureSpec(16, (16, 1))) == 0.0

    u = separable(cosine_bump(0.0, 1.0), cosine_bump(1.0, 0.35))
    val = q_form(2.0, u, QuadratureSpec(16, (32, 1)))
    assert val >= -1e-10
    assert val > 0.0


def test_q_form_tube_condition_enforced():
    # an s-profile varying across the singular helix is rejected
    u = separable(cosine_bump(0.0, 1.0), cosine_bump(0.5, 0.3))
    with pytest.raises(TubeConditionViolated):
        q_form(2.0, u, QuadratureSpec(16, (16, 1)))
    with pytest.raises(TubeConditionViolated):
        q_form(2.0, combined_normal_component(HEL2, u, zero_function()),
               QuadratureSpec(16, (16, 1)))


def test_h2_certificate():
    cert = certify_instability_h2()
    assert cert.Q_value < 0.0
    assert cert.C is not None and cert.C < 8.0
    assert cert.delta == 2.0 * cert.k + 1.0
    u = h2_certificate_test_function(cert.k, cert.delta, cert.eps0)
    assert q_form(2.0, u, cert.quad.doubled()) < 0.0


def test_certificate_serialization_roundtrip():
    cert = certify_instability_h2()
    text = cert.to_text()
    back = InstabilityCertificate.from_text(text)
    assert back == cert
    assert "surface=helicoid R=2" in text


def test_scaled_certificates():
    base = certify_instability_h2()
    for R in (4.0, 1.0):
        lam = math.log(2.0 / R)
        cert = scaled_helicoid_certificate(base, R)
        assert cert.Q_value == math.exp(3.0 * lam) * base.Q_value
        assert cert.Q_value < 0.0
        assert abs(cert.k - math.exp(lam) * base.k) <= 1e-15
    # for R > 2 the pulled-back scalar happens to be its own negative
    # witness as well (the potential term has the helpful sign there)
    cert4 = scaled_helicoid_certificate(base, 4.0)
    u4 = separable(cos_arch(cert4.eps0), plateau_ramp(cert4.k, cert4.delta))
    assert q_form(4.0, u4, base.quad, margin=0.5 * 0.05) < 0.0


def test_catenoid_certificate():
    phi = cosine_bump(0.0, 1.0)
    u0 = CAT.locate(Point(math.sqrt(2.0), 0.0, 1.0))
    cert, ruled = certify_instability_nosing(CAT, u0, list(range(1, 65)), phi)
    assert cert.Q_value < 0.0
    assert 1 <= cert.k <= 64
    doubled = ruled_index_value(CAT, ruled, phi, cert.k, cert.quad.doubled())
    assert doubled < 0.0
    # the index value at k just below the threshold is larger than at k
    prev = ruled_index_value(CAT, ruled, phi, cert.k - 1, cert.quad) if cert.k > 1 else 1.0
    assert prev > cert.Q_value


def test_vertical_plane_has_no_certificate():
    vp = VerticalPlaneChart(domain=((-6, 6), (-6, 6)))
    with pytest.raises(CertificateNotFound):
        certify_instability_nosing(vp, (0.0, 0.0), [1, 2, 4, 8], cosine_bump(0.0, 1.0))


def test_ruled_index_l_translation_identity():
    # L(|N_h|) from the base-point quadratic agrees with the closed form
    # evaluated at the translated point of the ruling
    rc = ruled_coordinates(CAT, CAT.locate(Point(math.sqrt(2.0), 0.0, 1.0)),
                           1.0, (-4, 4))
    for eps, s in ((0.0, 1.3), (0.5, -2.0), (-0.7, 3.1)):
        u_g = rc.curve_chart_point(eps)
        a, b, c, disc = jacobi_vertical_quadratic(CAT, u_g)
        vt = a * s * s + b * s + c
        l_from_quad = -disc / (vt * vt)
        p = rc.point(eps, s)
        l_direct = l_nh_closed(CAT, CAT.locate(p))
        assert abs(l_from_quad - l_direct) <= 1e-4 * max(1.0, abs(l_direct))


# ---------------------------------------------------------------------------
# vertical variations and the boundary flux
# ---------------------------------------------------------------------------

def test_vertical_variation_independent_of_r_when_constant():
    flat = Profile(lambda e: 1.0, lambda e: 0.0, (-1.0, 1.0))
    vv = VerticalVariation(flat)
    quad = QuadratureSpec(16, (8, 1))
    a0 = vertical_variation_area(2.0, vv, 0.0, quad, s0=0.3)
    a1 = vertical_variation_area(2.0, vv, 0.05, quad, s0=0.3)
    assert a0 == a1


def test_vertical_variation_second_difference():
    vv = VerticalVariation(cosine_bump(0.0, 1.0))
    quad = QuadratureSpec(16, (16, 1))
    d2, d1 = vertical_variation_second_difference(2.0, vv, quad, s0=0.3)
    exact = gauss_legendre_1d(lambda e: vv.w.deriv(e) ** 2, -1.0, 1.0, quad)
    assert abs(d2 - exact) <= 1e-3 * exact
    assert abs(d1) <= 1e-6


def test_vertical_variation_tube_too_small():
    vv = VerticalVariation(cosine_bump(0.0, 1.0))
    with pytest.raises(TubeTooSmall):
        vertical_variation_area(2.0, vv, 0.2, QuadratureSpec(16, (8, 1)), s0=0.05)


def test_boundary_flux():
    phi = cosine_bump(0.0, 1.0)
    ones = Profile(lambda s: 1.0, lambda s: 0.0, (-10.0, 10.0))
    v = separable(phi, ones)
    quad = QuadratureSpec(16, (32, 1))
    target = 8.0 * gauss_legendre_1d(lambda e: phi.value(e) ** 2, -1.0, 1.0, quad)
    extrap = boundary_flux_extrapolated(2.0, v, quad=quad)
    assert abs(extrap - target) <= 1e-2 * target
    # plain evaluations converge monotonically from above here
    f1 = boundary_flux(2.0, v, 1e-2, quad)
    f2 = boundary_flux(2.0, v, 1e-3, quad)
    assert f1 > f2 > target - 1.0

    zero_v = separable(Profile(lambda e: 0.0, lambda e: 0.0, (-1.0, 1.0)), ones)
    assert boundary_flux(2.0, zero_v, 1e-3, quad) == 0.0
    with pytest.raises(ValueError):
        boundary_flux(2.0, v, 0.3, quad)


def test_bzs_monotone_to_minus_one():
    outside = [helicoid_closed_forms(2.0, 0.5 + s).BZS for s in (1e-2, 1e-3, 1e-4)]
    inside = [helicoid_closed_forms(2.0, 0.5 - s).BZS for s in (1e-2, 1e-3, 1e-4)]
    assert outside[0] > outside[1] > outside[2] > -1.0
    assert inside[0] < inside[1] < inside[2] < -1.0


def test_profiles_basic():
    b = cosine_bump(0.0, 1.0)
    assert b.value(0.0) == 1.0
    assert b.value(1.0) == 0.0 and b.value(-1.5) == 0.0
    assert abs(b.deriv(0.0)) <= 1e-15
    s = smooth_bump(0.0, 1.0)
    assert s.value(0.0) == 1.0
    assert s.value(0.999999) < 1e-10
    c = cos_arch(2.0)
    assert c.value(0.0) == 1.0 and c.value(2.0) == 0.0
    assert abs(c.deriv(2.0 - 1e-12) + math.pi / 4.0) <= 1e-9
