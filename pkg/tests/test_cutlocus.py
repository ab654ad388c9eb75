import math

import numpy as np
import pytest

from engelsr import cutlocus as cl
from engelsr import elliptic as el
from engelsr.expmap import ChartPoint, Covector, from_chart, yw1, yw2_1
from engelsr.group import Point, dilate, reflect


class TestConstants:
    def test_critical_modulus(self):
        kk = cl.k0()
        assert abs(2 * el.complete_E(kk) - el.complete_K(kk)) <= 1e-12
        assert 0.90 < kk < 0.91
        assert kk == pytest.approx(0.909, abs=5e-4)

    def test_separatrix_root(self):
        p3 = cl.p3()
        assert abs(p3 - 2 * math.tanh(p3)) <= 1e-12
        assert cl.P0 == pytest.approx(math.log(3 + math.sqrt(10)), rel=1e-15)
        assert cl.P0 < p3

    def test_left_endpoint_negative(self):
        assert cl.Y0_1() < 0


class TestZReturn:
    def test_fz_special_values(self):
        assert cl.f_z(0.0, 0.5) == 0.0
        for k in (0.3, 0.8, 0.95):
            bigk = el.complete_K(k)
            assert cl.f_z(bigk, k) == pytest.approx(math.sqrt(1 - k * k), rel=1e-12)

    def test_fz_sign_change(self):
        k = 0.95
        bigk = el.complete_K(k)
        assert cl.f_z(bigk, k) > 0 > cl.f_z(3 * bigk, k)

    def test_root_bracket_and_residual(self):
        for k in np.linspace(0.05, 0.99, 25):
            p = cl.p_z1(float(k))
            bigk = el.complete_K(float(k))
            assert bigk < p < 3 * bigk
            assert abs(cl.f_z(p, float(k))) <= 1e-12

    def test_root_at_critical_modulus(self):
        kk = cl.k0()
        assert cl.p_z1(kk) == pytest.approx(2 * el.complete_K(kk), abs=1e-9)
        assert cl.u1z(kk) == pytest.approx(math.pi, abs=1e-9)

    def test_amplitude_window(self):
        for k in (0.92, 0.95, 0.99):
            assert math.pi / 2 < cl.u1z(k) < math.pi

    def test_slope_closed_form(self):
        for k in (0.93, 0.95, 0.98):
            h = 1e-6
            fd = (cl.u1z(k + h) - cl.u1z(k - h)) / (2 * h)
            assert fd == pytest.approx(cl.u1z_slope(k), rel=1e-6)


class TestCutTime:
    def test_oscillating_below_critical(self):
        lam, _ = from_chart(ChartPoint.n1(0.5, 1.0, 2.0, 1.0))
        assert cl.t_cut(lam) == pytest.approx(4 * el.complete_K(0.5), rel=1e-12)

    def test_oscillating_above_critical(self):
        lam, _ = from_chart(ChartPoint.n1(0.95, 1.0, 2.0, 1.0))
        assert cl.t_cut(lam) == pytest.approx(2 * cl.p_z1(0.95), rel=1e-12)

    def test_rotating(self):
        lam, _ = from_chart(ChartPoint.n2(0.6, 1.0, 2.0, 2.0))
        assert cl.t_cut(lam) == pytest.approx(2 * 0.6 * el.complete_K(0.6) / 2.0, rel=1e-12)

    def test_circular_cut_time_closes_the_circle(self):
        # the circular-class geodesic returns to the symmetry plane exactly
        # when the planar circle closes, after one period 2 pi / |c|
        lam = Covector(0.3, 4.0, 0.0)
        assert cl.t_cut(lam) == pytest.approx(math.pi / 2, rel=1e-14)
        q = __import__("engelsr.expmap", fromlist=["exp"]).exp(lam, cl.t_cut(lam))
        assert abs(q.x) < 1e-10 and abs(q.y) < 1e-10

    def test_infinite_branches(self):
        lam, _ = from_chart(ChartPoint.n3(1.0, 0.5, 1.0))
        assert math.isinf(cl.t_cut(lam))
        assert math.isinf(cl.t_cut(Covector(0.7, 0.0, 0.0)))
        assert math.isinf(cl.t_cut(Covector(0.0, 0.0, 1.0)))  # stable equilibrium

    def test_homogeneity_all_branches(self):
        covs = [
            from_chart(ChartPoint.n1(0.5, 1.0, 2.0, 1.0))[0],
            from_chart(ChartPoint.n1(0.95, 1.0, 2.0, 1.0))[0],
            from_chart(ChartPoint.n2(0.6, 1.0, 2.0, 1.0))[0],
            Covector(0.3, 1.7, 0.0),
        ]
        for lam in covs:
            tc = cl.t_cut(lam)
            for rho in (0.5, 2.0, 7.0):
                scaled = Covector(lam.theta, lam.c / rho, lam.alpha / rho ** 2)
                assert cl.t_cut(scaled) == pytest.approx(rho * tc, rel=1e-12)


class TestBoundaryCurves:
    def test_w1_roundtrip(self):
        k = 0.95
        y, w = yw1(k, cl.u1z(k), math.pi / 2)
        assert cl.w1_conj(y) == pytest.approx(w, abs=1e-12)

    def test_w1_below_line(self):
        for y in (0.0, 1.0, 10.0):
            assert cl.w1_conj(y) < y / 6.0

    def test_w1_left_asymptote(self):
        assert cl.w1_conj(cl.Y0_1() + 1e-9) < -1e2

    def test_w1_domain(self):
        with pytest.raises(ValueError):
            cl.w1_conj(cl.Y0_1())

    def test_w1_ratio_bounded_at_infinity(self):
        ratios = [cl.w1_conj(y) / y for y in (8.0, 15.0, 25.0)]
        assert all(0.0 < r < 1 / 6 for r in ratios)
        assert abs(ratios[-1] - ratios[-2]) < 0.01

    def test_w21_monotone_with_limits(self):
        ys = (0.05, 0.2, 1.0, 3.0, 10.0, 100.0)
        vals = [cl.w21_conj(y) for y in ys]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[0] > 50 and vals[-1] < 1e-2

    def test_w21_roundtrip(self):
        y, w = yw2_1(0.5, 0.0)
        assert cl.w21_conj(y) == pytest.approx(w, abs=1e-12)

    def test_w21_domain(self):
        with pytest.raises(ValueError):
            cl.w21_conj(0.0)

    def test_w22_join_value_and_monotone(self):
        assert cl.w22_conj(0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
        ys = (-8.0, -2.0, -0.4, -0.01, 0.01, 0.4, 2.0, 8.0)
        vals = [cl.w22_conj(y) for y in ys]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[0] > 1.5 and vals[-1] < 0.2

    def test_w22_smooth_join(self):
        h = 1e-7
        left = (cl.w22_conj(0.0) - cl.w22_conj(-h)) / h
        right = (cl.w22_conj(h) - cl.w22_conj(0.0)) / h
        assert left == pytest.approx(right, rel=1e-2)
        assert left == pytest.approx(-3 / (4 * math.pi), rel=1e-2)

    def test_band_stays_below_conjugate_curve(self):
        for y in (0.5, 1.0, 5.0):
            assert -cl.w22_conj(-y) < cl.w21_conj(y)

    def test_separatrix_curve_separates(self):
        w3 = __import__("engelsr.expmap", fromlist=["yw2_3"]).yw2_3(cl.p3())[1]
        assert w3 > 1 / math.sqrt(3) > 1 / math.sqrt(math.pi)


class TestHomogeneousBoundaries:
    def test_g1_axis_and_homogeneity(self):
        assert cl.G1(0.0, 1.0) == 0.0
        assert cl.G1(2.0, 2.0) == pytest.approx(8 * cl.G1(1.0, 1.0), rel=1e-12)
        assert cl.G1(-1.0, 1.0) == cl.G1(1.0, 1.0)
        with pytest.raises(ValueError):
            cl.G1(0.0, -1.0)
        with pytest.raises(ValueError):
            cl.G1(1.0, cl.Y0_1() - 1.0)

    def test_g2_axis_and_homogeneity(self):
        assert cl.G2(0.0, 1.0) == 0.0
        assert cl.G2(-1.5, 2.0) == cl.G2(1.5, 2.0)
        rho = 1.7
        assert cl.G2(rho ** 2 * 1.2, rho * 0.8) == pytest.approx(rho ** 3 * cl.G2(1.2, 0.8), rel=1e-11)
        with pytest.raises(ValueError):
            cl.G2(1.0, 0.0)

    def test_g3_evenness_and_homogeneity(self):
        assert cl.G3(-1.0, 2.0) == cl.G3(1.0, 2.0)
        rho = 2.2
        assert cl.G3(rho ** 2 * 0.9, rho * -0.5) == pytest.approx(rho ** 3 * cl.G3(0.9, -0.5), rel=1e-11)
        assert cl.G3(1.0, 0.0) == pytest.approx(math.sqrt(1.0) ** 3 / math.sqrt(math.pi), rel=1e-12)


class TestClassifier:
    @pytest.mark.parametrize("q,label,mult", [
        (Point(0, 0, 0, 0), "Origin", "none"),
        (Point(0, 1, 0, 0), "A+", 1),
        (Point(0, -2, 0, 0), "A-", 1),
        (Point(0, 1, 0, 1), "I0x+", 2),
        (Point(0, -1, 0, -1), "I0x-", 2),
        (Point(0, -1, 0, 2), "I0z+", 2),
        (Point(0, 1.5, 0, -0.5), "I0z-", 2),
        (Point(0, 0, 0, 1), "E+", "family"),
        (Point(0, 0, 0, -1), "E-", "family"),
        (Point(1, 1, 1, 1), "Generic", 1),
        (Point(0, 0, 1, 0), "Nx+", 2),
        (Point(0, 0, -1, 0), "Nx-", 2),
    ])
    def test_examples(self, q, label, mult):
        st = cl.classify_point(q)
        assert st.label == label
        assert st.multiplicity == mult

    def test_circle_segment_piece(self):
        st = cl.classify_point(Point(0, 0, 1, 0))
        assert st.piece == "C"
        assert st.is_maxwell and not st.is_conjugate

    def test_z_plane_regions(self):
        y = 0.5
        wc = cl.w1_conj(y)
        inside = Point(1.0, y, 0.0, wc - 0.3)
        on_curve = Point(1.0, y, 0.0, wc)
        outside = Point(1.0, y, 0.0, wc + 0.3)
        assert cl.classify_point(inside).label == "Iz+"
        assert cl.classify_point(on_curve).label == "CIz+^+"
        assert cl.classify_point(outside).label == "Generic"

    def test_x_plane_regions(self):
        y = 1.0
        wc = cl.w21_conj(y)
        inside = Point(0.0, y, 1.0, wc + 0.4)
        on_curve = Point(0.0, y, 1.0, wc)
        below = Point(0.0, y, 1.0, wc - 1e-4)
        assert cl.classify_point(inside).label == "Ix+"
        assert cl.classify_point(on_curve).label == "CIx+^+"
        assert cl.classify_point(below).label in ("Generic", "Nx+", "CNx+^+")

    def test_band_regions(self):
        y = -0.8
        hi, lo = cl.w22_conj(y), -cl.w22_conj(-(y))
        mid = Point(0.0, y, 1.0, 0.5 * (hi + lo))
        up = Point(0.0, y, 1.0, hi)
        out = Point(0.0, y, 1.0, hi + 0.3)
        assert cl.classify_point(mid).label == "Nx+"
        assert cl.classify_point(mid).piece == "N+"
        assert cl.classify_point(up).label == "CNx+^+"
        assert cl.classify_point(out).label == "Generic"

    def test_conjugate_and_maxwell_flags(self):
        assert cl.classify_point(Point(0, 0, 0, 1)).is_conjugate
        assert cl.classify_point(Point(0, 0, 0, 1)).is_maxwell
        assert cl.classify_point(Point(0, 1, 0, 1)).is_maxwell
        assert not cl.classify_point(Point(0, 1, 0, 1)).is_conjugate
        st = cl.classify_point(Point(1.0, 0.5, 0.0, cl.w1_conj(0.5)))
        assert st.is_conjugate and not st.is_maxwell

    def test_dilation_invariance(self, rng):
        pts = [Point(0, 1, 0, 1), Point(1.0, 0.5, 0.0, cl.w1_conj(0.5) - 0.3),
               Point(0, 0, 1, 0), Point(0.4, -0.7, 1.3, 0.2), Point(0, 0, 0, -2)]
        for q in pts:
            base = cl.classify_point(q)
            for rho in (0.3, 2.0, 9.0):
                st = cl.classify_point(dilate(rho, q))
                assert st.label == base.label
                assert st.multiplicity == base.multiplicity

    def test_reflection_consistency(self, rng):
        # mirrored points keep multiplicity and the same stratum family
        def family(label):
            return label.rstrip("+-^").rstrip("+-")

        pts = [Point(0, 1, 0, 1), Point(1.0, 0.5, 0.0, cl.w1_conj(0.5) - 0.3),
               Point(0.0, -0.8, 1.0, 0.1), Point(0, 0, 0, 1), Point(0.7, 1.2, 0, -0.4)]
        for q in pts:
            base = cl.classify_point(q)
            for i in (1, 2, 4):
                st = cl.classify_point(reflect(i, q))
                assert st.multiplicity == base.multiplicity
                assert family(st.label)[:2] == family(base.label)[:2]


class TestCurveSamples:
    def test_shapes_and_headers(self):
        for which, n in (("w1", 20), ("w21", 15), ("fix3", 10)):
            data = cl.curve_samples(which, n)
            assert data.shape == (n, 3)
        assert cl.curve_samples("w22", 10).shape == (20, 3)

    def test_unknown_curve(self):
        with pytest.raises(ValueError):
            cl.curve_samples("nope", 10)

    def test_w21_curve_consistency(self):
        data = cl.curve_samples("w21", 30)
        for k, y, w in data[5:25]:
            assert cl.w21_conj(y) == pytest.approx(w, abs=1e-9)
