import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from engelsr import elliptic as el

MODULI = st.floats(min_value=0.0, max_value=0.995)
ARGS = st.floats(min_value=-25.0, max_value=25.0)


def quad_F(phi, k):
    v, _ = quad(lambda t: 1.0 / math.sqrt(1.0 - (k * math.sin(t)) ** 2), 0.0, phi, limit=200)
    return v


def quad_E(phi, k):
    v, _ = quad(lambda t: math.sqrt(1.0 - (k * math.sin(t)) ** 2), 0.0, phi, limit=200)
    return v


class TestComplete:
    def test_K_at_zero(self):
        assert el.complete_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_E_at_zero_and_one(self):
        assert el.complete_E(0.0) == pytest.approx(math.pi / 2, rel=1e-15)
        assert el.complete_E(1.0) == 1.0

    def test_half_values_against_quadrature(self):
        assert el.complete_K(0.5) == pytest.approx(quad_F(math.pi / 2, 0.5), rel=1e-12)
        assert el.complete_E(0.5) == pytest.approx(quad_E(math.pi / 2, 0.5), rel=1e-12)
        assert el.complete_K(0.5) == pytest.approx(1.68575, abs=1e-5)
        assert el.complete_E(0.5) == pytest.approx(1.46746, abs=1e-5)

    def test_domain_errors(self):
        with pytest.raises(el.EllipticDomainError):
            el.complete_K(1.0)
        with pytest.raises(el.EllipticDomainError):
            el.complete_K(-0.1)
        with pytest.raises(el.EllipticDomainError):
            el.complete_E(1.0 + 1e-9)

    def test_cap_is_finite(self):
        assert math.isfinite(el.complete_K(el.K_CAP))


class TestIncomplete:
    def test_zero_angle(self):
        assert el.incomplete_F(0.0, 0.7) == 0.0
        assert el.incomplete_E(0.0, 0.7) == 0.0

    def test_quarter_period_is_complete(self):
        for k in (0.1, 0.5, 0.9):
            assert el.incomplete_F(math.pi / 2, k) == pytest.approx(el.complete_K(k), rel=1e-14)
            assert el.incomplete_E(math.pi / 2, k) == pytest.approx(el.complete_E(k), rel=1e-14)

    def test_quasi_periodicity(self):
        assert el.incomplete_F(math.pi, 0.5) == pytest.approx(2 * el.complete_K(0.5), rel=1e-14)
        for phi in (0.3, 1.1, 2.5):
            lhs = el.incomplete_F(phi + math.pi, 0.6)
            rhs = el.incomplete_F(phi, 0.6) + 2 * el.complete_K(0.6)
            assert lhs == pytest.approx(rhs, rel=1e-13)
            lhs = el.incomplete_E(phi + math.pi, 0.6)
            rhs = el.incomplete_E(phi, 0.6) + 2 * el.complete_E(0.6)
            assert lhs == pytest.approx(rhs, rel=1e-13)

    def test_against_quadrature(self):
        for phi, k in ((0.7, 0.3), (1.0, 0.9), (2.2, 0.6), (-1.4, 0.8)):
            assert el.incomplete_F(phi, k) == pytest.approx(quad_F(phi, k), rel=1e-10)
            assert el.incomplete_E(phi, k) == pytest.approx(quad_E(phi, k), rel=1e-10)


class TestAmplitude:
    def test_special_points(self):
        for k in (0.2, 0.7, 0.95):
            bigk = el.complete_K(k)
            assert el.am(0.0, k) == 0.0
            assert el.am(bigk, k) == pytest.approx(math.pi / 2, abs=1e-13)
            assert el.am(2 * bigk, k) == pytest.approx(math.pi, abs=1e-13)

    @given(phi=st.floats(min_value=0.0, max_value=math.pi), k=MODULI)
    @settings(max_examples=150, deadline=None)
    def test_inverts_F(self, phi, k):
        assert el.am(el.incomplete_F(phi, k), k) == pytest.approx(phi, abs=1e-10)

    @given(p=ARGS, k=MODULI)
    @settings(max_examples=150, deadline=None)
    def test_increasing_and_quasi_periodic(self, p, k):
        bigk = el.complete_K(k)
        assert el.am(p + 2 * bigk, k) == pytest.approx(el.am(p, k) + math.pi, abs=1e-10)
        assert el.am(p + 0.1, k) > el.am(p, k)


class TestJacobi:
    def test_at_zero(self):
        assert el.jacobi(0.0, 0.8) == (0.0, 1.0, 1.0)

    def test_at_quarter_period(self):
        k = 0.6
        sn, cn, dn = el.jacobi(el.complete_K(k), k)
        assert sn == pytest.approx(1.0, abs=1e-13)
        assert cn == pytest.approx(0.0, abs=1e-13)
        assert dn == pytest.approx(math.sqrt(1 - k * k), rel=1e-13)

    @given(p=ARGS, k=MODULI)
    @settings(max_examples=200, deadline=None)
    def test_identities(self, p, k):
        sn, cn, dn = el.jacobi(p, k)
        assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
        assert dn * dn + (k * sn) ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_against_phase_ode_oracle(self):
        # dn is the phase speed: d(am)/dp = sqrt(1 - k^2 sin^2(am))
        p_target, k = 1.2, 0.7
        n = 200000
        h = p_target / n
        phi = 0.0
        for _ in range(n):
            f1 = math.sqrt(1 - (k * math.sin(phi)) ** 2)
            f2 = math.sqrt(1 - (k * math.sin(phi + 0.5 * h * f1)) ** 2)
            f3 = math.sqrt(1 - (k * math.sin(phi + 0.5 * h * f2)) ** 2)
            f4 = math.sqrt(1 - (k * math.sin(phi + h * f3)) ** 2)
            phi += h / 6 * (f1 + 2 * f2 + 2 * f3 + f4)
        sn, cn, dn = el.jacobi(p_target, k)
        assert sn == pytest.approx(math.sin(phi), abs=1e-10)
        assert cn == pytest.approx(math.cos(phi), abs=1e-10)
        assert dn == pytest.approx(math.sqrt(1 - (k * math.sin(phi)) ** 2), abs=1e-10)


class TestJacobiEpsilon:
    def test_trivial_values(self):
        k = 0.75
        assert el.jacobi_eps(0.0, k) == 0.0
        assert el.jacobi_eps(el.complete_K(k), k) == pytest.approx(el.complete_E(k), rel=1e-13)
        assert el.jacobi_eps(1.234, 0.0) == pytest.approx(1.234, rel=1e-14)

    def test_against_quadrature(self):
        k = 0.8
        for p in (0.4, 2.0, 5.5):
            want, _ = quad(lambda t: el.jacobi(t, k)[2] ** 2, 0.0, p, limit=300)
            assert el.jacobi_eps(p, k) == pytest.approx(want, abs=1e-10)

    def test_additive_quasi_periodicity(self):
        k = 0.65
        bigk, bige = el.complete_K(k), el.complete_E(k)
        for p in (0.0, 0.8, 3.0):
            assert el.jacobi_eps(p + 2 * bigk, k) == pytest.approx(
                el.jacobi_eps(p, k) + 2 * bige, abs=1e-12)


def test_legendre_relation():
    for k in (0.1, 0.35, 0.6, 0.85, 0.97):
        kp = math.sqrt(1 - k * k)
        val = (el.complete_E(k) * el.complete_K(kp) + el.complete_E(kp) * el.complete_K(k)
               - el.complete_K(k) * el.complete_K(kp))
        assert val == pytest.approx(math.pi / 2, abs=1e-10)


def test_divergence_trend_toward_unit_modulus():
    # K grows without bound as the cap is approached; no evaluation at 1
    vals = [el.complete_K(k) for k in (0.99, 0.9999, 1 - 1e-8, el.K_CAP)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
