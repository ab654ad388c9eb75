"""Acceptance suite: one callable check per shipping criterion.

Each check returns a CriterionResult; `run_all` prints one pass/fail line
per criterion.  The CLI `selftest` subcommand and the pytest acceptance
module both run exactly these functions, so the gate is identical in both
entry points.  Randomness is seeded, so reruns are reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import cutlocus as cl
from . import synthesis as syn
from .elliptic import complete_E, complete_K, incomplete_E, incomplete_F
from .expmap import ChartPoint, Covector, exp, from_chart, iota1, iota2, reflect_preimage, yw2_2, yw2_3
from .group import Point, dilate, reflect, scale

SQRT_PI = math.sqrt(math.pi)


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(index, name, passed, detail, t0):
    return CriterionResult(index, name, bool(passed), detail, time.perf_counter() - t0)


def c01_critical_modulus() -> CriterionResult:
    t0 = time.perf_counter()
    solve_start = time.perf_counter()
    root = brentq(lambda k: 2.0 * complete_E(k) - complete_K(k), 0.5, 0.99,
                  xtol=1e-15, rtol=8.9e-16)
    solve_ms = (time.perf_counter() - solve_start) * 1e3
    residual = abs(2.0 * complete_E(root) - complete_K(root))
    ok = residual <= 1e-12 and abs(root - 0.909) <= 5e-4 and solve_ms < 1.0
    return _result(1, "critical modulus 2E = K", ok,
                   f"k0={root:.12f} residual={residual:.2e} solve={solve_ms:.3f}ms", t0)


def c02_z_return_root() -> CriterionResult:
    t0 = time.perf_counter()
    kk = cl.k0()
    gap = abs(cl.p_z1(kk) - 2.0 * complete_K(kk))
    ok = gap <= 1e-9
    worst = 0.0
    for k in np.linspace(0.02, 0.995, 50):
        p = cl.p_z1(float(k))
        bigk = complete_K(float(k))
        if not (bigk < p < 3.0 * bigk):
            ok = False
        worst = max(worst, abs(cl.f_z(p, float(k))))
    ok = ok and worst <= 1e-12
    return _result(2, "first z-return root", ok,
                   f"|p_z1(k0)-2K|={gap:.2e} max|f_z|={worst:.2e}", t0)


def c03_closed_form_endpoints() -> CriterionResult:
    t0 = time.perf_counter()
    worst = 0.0
    for k in (0.3, 0.5, 0.7, 0.84):
        for sig in (0.5, 1.0, 2.0):
            lam, t = from_chart(ChartPoint.n1(k, math.pi, math.pi / 2.0, sig))
            q = exp(lam, t)
            y_cf = 4.0 * iota1(k) / sig
            w_cf = 8.0 / (3.0 * sig ** 3) * (k * k * iota1(k) + iota2(k))
            ref = max(abs(y_cf), abs(w_cf), 1e-12)
            err = max(abs(q.x), abs(q.z), abs(q.y - y_cf), abs(q.w - w_cf)) / ref
            worst = max(worst, err)
    for k in (0.92, 0.95, 0.98):
        u1 = cl.u1z(k)
        e1 = incomplete_E(u1, k)
        f1 = incomplete_F(u1, k)
        for sig in (0.5, 1.0, 2.0):
            lam, t = from_chart(ChartPoint.n1(k, u1, 0.0, sig))
            q = exp(lam, t)
            y_cf = 2.0 * (2.0 * e1 - f1) / sig
            err = max(abs(q.x), abs(q.z), abs(q.y - y_cf)) / max(abs(y_cf), 1e-12)
            worst = max(worst, err)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 5.0
    return _result(3, "closed-form endpoints vs integrator", ok,
                   f"worst rel err={worst:.2e} elapsed={elapsed:.2f}s", t0)


def c04_symmetry_commutation() -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(20260810)
    worst = 0.0
    for _ in range(100):
        lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-2, 2), rng.uniform(-3, 3))
        t = rng.uniform(0.1, 5.0)
        q = exp(lam, t)
        for i in (1, 2, 4):
            lam_r, t_r = reflect_preimage(i, lam, t)
            diff = np.max(np.abs(exp(lam_r, t_r) - reflect(i, q)))
            worst = max(worst, float(diff))
    return _result(4, "reflection commutation", worst <= 1e-6, f"worst={worst:.2e}", t0)


def c05_dilation_and_homogeneity() -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(40):
        lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-2, 2), rng.uniform(-3, 3))
        t = rng.uniform(0.1, 4.0)
        q = exp(lam, t)
        for rho in (0.5, 2.0, 5.0):
            lam_s = Covector(lam.theta, lam.c / rho, lam.alpha / rho ** 2)
            diff = np.max(np.abs(exp(lam_s, rho * t) - dilate(rho, q)))
            worst = max(worst, float(diff) / max(1.0, float(np.max(np.abs(q.as_array())))))
    # one covector per cut-time branch
    branch_cov = [
        Covector(0.4, 0.2, 4.0),     # oscillating, k below k0
        Covector(0.1, 2.754, 2.0),   # oscillating, k above k0
        Covector(0.3, 4.0, 1.0),     # rotating
        Covector(0.9, 1.7, 0.0),     # circular
    ]
    worst_h = 0.0
    homog_ok = True
    for lam in branch_cov:
        tc = cl.t_cut(lam)
        for rho in (0.5, 2.0, 7.0):
            tc_s = cl.t_cut(Covector(lam.theta, lam.c / rho, lam.alpha / rho ** 2))
            if math.isinf(tc) or math.isinf(tc_s):
                homog_ok = homog_ok and math.isinf(tc) and math.isinf(tc_s)
                continue
            worst_h = max(worst_h, abs(tc_s - rho * tc) / (rho * tc))
    ok = worst <= 1e-6 and homog_ok and worst_h <= 1e-12
    return _result(5, "dilation equivariance + cut-time homogeneity", ok,
                   f"worst exp={worst:.2e} worst t_cut rel={worst_h:.2e}", t0)


def c06_curve_suites() -> CriterionResult:
    t0 = time.perf_counter()
    msgs = []
    ok = True
    vals = [cl.w21_conj(y) for y in (0.05, 0.2, 1.0, 3.0, 10.0, 100.0, 1000.0)]
    mono = all(a > b for a, b in zip(vals, vals[1:]))
    limits = vals[0] > 50.0 and vals[-1] < 1e-3
    ok &= mono and limits
    msgs.append(f"w21 mono={mono} ends=({vals[0]:.1f},{vals[-1]:.1e})")

    join = abs(cl.w22_conj(0.0) - 1.0 / SQRT_PI)
    ok &= join <= 1e-15
    # quadratic coefficients of both branches by small-k fits
    ks = np.array([0.02, 0.03, 0.045, 0.06])
    coef_ref = 3.0 / (16.0 * SQRT_PI)
    wu = np.array([yw2_2(float(k), 0.0)[1] for k in ks])
    cu = np.polyfit(ks ** 2, wu - 1.0 / SQRT_PI, 1)[0]
    wl = np.array([-yw2_2(float(k), math.pi / 2.0)[1] for k in ks])
    clow = np.polyfit(ks ** 2, wl - 1.0 / SQRT_PI, 1)[0]
    fit_ok = abs(cu / coef_ref - 1.0) <= 1e-2 and abs(-clow / coef_ref - 1.0) <= 1e-2
    # one-sided slopes of the joined graph at 0
    h = 1e-7
    s_left = (cl.w22_conj(0.0) - cl.w22_conj(-h)) / h
    s_right = (cl.w22_conj(h) - cl.w22_conj(0.0)) / h
    slope_ok = abs(s_left - s_right) <= 1e-2 * max(abs(s_left), abs(s_right))
    ok &= fit_ok and slope_ok
    msgs.append(f"w22 join={join:.1e} coefs=({cu:.5f},{clow:.5f}) ref={coef_ref:.5f} "
                f"slopes=({s_left:.5f},{s_right:.5f})")

    below = all(cl.w1_conj(y) < y / 6.0 for y in (0.0, 1.0, 10.0))
    ok &= below
    msgs.append(f"w1 below Y/6: {below}")

    sep = all(-cl.w22_conj(-y) < cl.w21_conj(y) for y in (0.5, 1.0, 5.0))
    ok &= sep
    msgs.append(f"band below conjugate curve: {sep}")
    return _result(6, "boundary-curve suites", ok, "; ".join(msgs), t0)


def c07_separatrix_constants() -> CriterionResult:
    t0 = time.perf_counter()
    p3 = cl.p3()
    residual = abs(p3 - 2.0 * math.tanh(p3))
    w = yw2_3(p3)[1]
    ok = residual <= 1e-12 and w > 1.0 / math.sqrt(3.0) > 1.0 / SQRT_PI
    return _result(7, "separatrix fixed-point constants", ok,
                   f"p3={p3:.12f} residual={residual:.1e} W={w:.6f}", t0)


def _sample_two_minimizer_points(rng, n_each: int):
    """Interior points of every two-minimizer stratum family."""
    pts = []
    y00 = cl.Y0_1()
    for _ in range(n_each):
        u, v = rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)
        pts.append(("I0x", Point(0.0, u, 0.0, v) if rng.random() < 0.5 else Point(0.0, -u, 0.0, -v)))
        pts.append(("I0z", Point(0.0, -u, 0.0, v) if rng.random() < 0.5 else Point(0.0, u, 0.0, -v)))
        # z = 0 plane interiors
        Y = rng.uniform(y00 + 0.35, 2.8)
        W = cl.w1_conj(Y) - rng.uniform(0.1, 2.0)
        x = rng.uniform(0.4, 1.8) * (1 if rng.random() < 0.5 else -1)
        q = Point(x, Y * abs(x), 0.0, W * abs(x) ** 3)
        if rng.random() < 0.5:
            q = reflect(4, q)
        pts.append(("Iz", q))
        # x = 0 plane one-sided interiors
        Y = rng.uniform(0.15, 2.5)
        W = cl.w21_conj(Y) + rng.uniform(0.1, 2.0)
        z = rng.uniform(0.3, 2.0) * (1 if rng.random() < 0.5 else -1)
        q = Point(0.0, Y * math.sqrt(abs(z)), z, W * abs(z) ** 1.5)
        if rng.random() < 0.5:
            q = reflect(4, q)
        pts.append(("Ix", q))
        # rotating-class band interiors
        Y = rng.uniform(-2.2, 2.2)
        if abs(Y) < 0.05:
            Y = 0.0  # circle segment
        hi, lo = cl.w22_conj(Y), -cl.w22_conj(-Y)
        W = lo + rng.uniform(0.15, 0.85) * (hi - lo)
        z = rng.uniform(0.3, 2.0) * (1 if rng.random() < 0.5 else -1)
        pts.append(("Nx", Point(0.0, Y * math.sqrt(abs(z)), z, W * abs(z) ** 1.5)))
    return pts


def c08_two_minimizer_round_trips() -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(88)
    pts = _sample_two_minimizer_points(rng, 20)
    worst_res, worst_dt = 0.0, 0.0
    bad = 0
    for fam, q in pts:
        try:
            r = syn.minimizers(q, tol=1e-6)
        except syn.SynthesisError:
            bad += 1
            continue
        if len(r.minimizers) != 2:
            bad += 1
            continue
        worst_res = max(worst_res, max(m.residual for m in r.minimizers))
        ts = [m.time for m in r.minimizers]
        worst_dt = max(worst_dt, abs(ts[0] - ts[1]))
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and worst_res <= 1e-6 and worst_dt <= 1e-9 and elapsed < 60.0
    return _result(8, "two-minimizer round trips", ok,
                   f"n={len(pts)} bad={bad} worst res={worst_res:.2e} worst dt={worst_dt:.2e} "
                   f"elapsed={elapsed:.1f}s", t0)


def c09_figure_eight_family() -> CriterionResult:
    t0 = time.perf_counter()
    q = Point(0.0, 0.0, 0.0, 1.0)
    r = syn.minimizers(q, tol=1e-6, family_samples=32)
    ok = (r.stratum.label == "E+" and len(r.minimizers) == 32
          and max(m.residual for m in r.minimizers) <= 1e-6
          and max(m.time for m in r.minimizers) - min(m.time for m in r.minimizers) <= 1e-9)
    return _result(9, "one-parameter family to (0,0,0,1)", ok,
                   f"n={len(r.minimizers)} worst res={max(m.residual for m in r.minimizers):.2e}", t0)


def c10_generic_recovery(n: int = 100) -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(1010)
    worst = 0.0
    bad = 0
    done = 0
    while done < n:
        lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-2.5, 2.5), rng.uniform(-4.0, 4.0))
        tc = cl.t_cut(lam)
        t = rng.uniform(0.25, 0.9) * (tc if math.isfinite(tc) else 5.5)
        if not (0.25 <= t <= 11.0):
            continue
        q = exp(lam, t)
        if cl.classify_point(q).label != "Generic":
            continue
        done += 1
        try:
            r = syn.minimizers(q, tol=1e-6)
        except syn.SynthesisError:
            bad += 1
            continue
        if len(r.minimizers) != 1:
            bad += 1
            continue
        m = r.minimizers[0]
        err = max(
            abs(math.remainder(m.lam.theta - lam.theta, 2.0 * math.pi)),
            abs(m.lam.c - lam.c),
            abs(m.lam.alpha - lam.alpha),
            abs(m.time - t),
        )
        worst = max(worst, err)
        if err > 1e-5:
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 120.0
    return _result(10, "generic shooting recovery", ok,
                   f"n={n} bad={bad} worst err={worst:.2e} elapsed={elapsed:.1f}s", t0)


def c11_past_cut_competitor(n: int = 20) -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(1111)
    bad = 0
    done = 0
    while done < n:
        mode = done % 3
        if mode == 0:  # oscillating
            lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-1.5, 1.5), rng.uniform(0.8, 3.0))
            if cl.classify_point(exp(lam, 0.1)).label == "Origin":
                continue
        elif mode == 1:  # rotating
            lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(2.2, 4.0), rng.uniform(0.5, 1.8))
        else:  # circular
            lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(0.8, 2.5), 0.0)
        from .expmap import classify

        tag = classify(lam).tag
        if tag not in ("C1", "C2", "C6"):
            continue
        tc = cl.t_cut(lam)
        if not math.isfinite(tc) or tc > 10.0:
            continue
        t = 1.05 * tc
        q = exp(lam, t)
        done += 1
        try:
            r = syn.minimizers(q, tol=1e-6)
        except syn.SynthesisError:
            bad += 1
            continue
        if not (r.time < t - 1e-8):
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0
    return _result(11, "past-cut arcs are beaten", ok, f"n={n} bad={bad} elapsed={elapsed:.1f}s", t0)


def c12_slope_signs() -> CriterionResult:
    t0 = time.perf_counter()
    def fd(f, x, h=1e-6):
        return (f(x + h) - f(x - h)) / (2.0 * h)

    ok = True
    msgs = []
    kk = cl.k0()
    # ridge slopes in the z = 0 plane, both positive
    for k in np.linspace(kk + 0.01, 0.985, 9):
        dy = fd(lambda x: cl._ridge_yw(x)[0], float(k))
        dw = fd(lambda x: cl._ridge_yw(x)[1], float(k))
        cy, cw = cl.ridge_slopes(float(k))
        ok &= dy > 0 and dw > 0 and abs(dy / cy - 1) < 1e-4 and abs(dw / cw - 1) < 1e-4
    msgs.append("ridge +,+")
    # patch gradients in the z = 0 plane
    for k in (0.93, 0.96):
        for u2 in (1.8, 2.3, 2.9):
            g = cl.yw1_grads(k, u2)
            ok &= g["dY_du2"] > 0 and g["dY_dk"] > 0 and g["defect"] > 0
    msgs.append("z-patch grads +")
    # conjugate curve in the x = 0 plane: Y down, W up
    for k in np.linspace(0.05, kk - 0.01, 9):
        cy, cw = cl.ci_x_slopes(float(k))
        ok &= cy < 0 and cw > 0
    for k in (0.2, 0.5, 0.8):
        from .expmap import yw2_1
        dy = fd(lambda x: yw2_1(x, 0.0)[0], k)
        dw = fd(lambda x: yw2_1(x, 0.0)[1], k)
        cy, cw = cl.ci_x_slopes(k)
        ok &= abs(dy / cy - 1) < 1e-4 and abs(dw / cw - 1) < 2e-3
    msgs.append("x-conjugate -,+")
    # x = 0 one-sided patch gradients in u2
    for k in (0.2, 0.5, 0.8):
        for u2 in (0.3, 0.8, 1.3):
            g = cl.yw2_1_grads(k, u2)
            ok &= g["dY_du2"] > 0 and g["dW_du2"] > 0
    msgs.append("x-patch grads +")
    # band boundary branches: Y down, W up, both u2 = 0 and pi/2
    for k in np.linspace(0.05, 0.95, 10):
        uy, uw = cl.cn_upper_slopes(float(k))
        ly, lw = cl.cn_lower_slopes(float(k))
        ok &= uy < 0 and uw > 0 and ly < 0 and lw > 0
    msgs.append("band branches -,+")
    # band patch gradients
    for k in (0.3, 0.6, 0.9):
        for u2 in (1.8, 2.3, 2.9):
            g = cl.yw2_2_grads(k, u2)
            ok &= g["m_dY_du2"] > 0 and g["m_dY_dk"] > 0 and g["defect"] > 0
    msgs.append("band patch grads +")
    # positivity of the integral combinations
    grid = np.linspace(0.02, 0.98, 25)
    ok &= all(iota2(float(k)) > 0 for k in grid)
    ok &= all(cl.iota4(float(k)) > 0 for k in grid)
    ok &= all(cl.iota5(float(k)) > 0 for k in grid)
    ok &= all(cl.iota6(float(k)) > 0 for k in grid)
    ok &= all(iota1(float(k)) > 0 for k in np.linspace(0.02, kk - 1e-3, 15))
    ok &= all(cl.iota3(float(k)) > 0 for k in np.linspace(0.02, kk - 1e-3, 15))
    msgs.append("iota positivity")
    return _result(12, "slope signs and positivity", ok, "; ".join(msgs), t0)


ALL_CRITERIA = [
    c01_critical_modulus,
    c02_z_return_root,
    c03_closed_form_endpoints,
    c04_symmetry_commutation,
    c05_dilation_and_homogeneity,
    c06_curve_suites,
    c07_separatrix_constants,
    c08_two_minimizer_round_trips,
    c09_figure_eight_family,
    c10_generic_recovery,
    c11_past_cut_competitor,
    c12_slope_signs,
]


def run_all(fast: bool = False) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        if fast and fn is c10_generic_recovery:
            res = fn(20)
        elif fast and fn is c11_past_cut_competitor:
            res = fn(6)
        else:
            res = fn()
        results.append(res)
        mark = "PASS" if res.passed else "FAIL"
        print(f"[{mark}] {res.index:2d} {res.name}: {res.detail} ({res.seconds:.2f}s)")
    total = sum(r.seconds for r in results)
    npass = sum(r.passed for r in results)
    print(f"{npass}/{len(results)} criteria passed in {total:.1f}s")
    return results
