"""Cut time, boundary curves and the cut-locus stratification.

The cut time of a geodesic depends only on its covector class:

    oscillating (C1):  min(2 p_z1(k), 4 K(k)) / |sigma|
    rotating    (C2):  2 k K(k) / |sigma|
    circular    (C6):  2 pi / |c|
    separatrix, lines, equilibria (C3, C7, C4, C5):  +infinity

where p_z1(k) is the first positive root of
f_z(p, k) = dn p sn p + (p - 2 E(p)) cn p, the phase at which the z
coordinate of an oscillating geodesic returns to zero.  The critical
modulus k0 solves 2 E(k) = K(k) and separates the two C1 regimes.

Terminal points are classified against the cut locus in the
dilation-invariant planes (y/x, w/x^3) on {z = 0} and
(y/sqrt(z), w/sqrt(z)^3) on {x = 0}.  There the two-dimensional conjugate
strata become curves: each is parametrized over a modulus interval by the
closed forms of `expmap`, is strictly monotone in its abscissa (the slope
formulas below), and is therefore evaluated as a graph by a bracketed
root-find in k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .elliptic import K_CAP, am, complete_E, complete_K, incomplete_E, jacobi, jacobi_eps
from .expmap import (
    Covector,
    classify,
    iota1,
    iota2,
    iota3,
    iota4,
    iota5,
    iota6,
    yw1,
    yw2_1,
    yw2_2,
    yw2_3,
)
from .group import Point, dilate, scale

__all__ = [
    "iota1",
    "iota2",
    "iota3",
    "iota4",
    "iota5",
    "iota6",
    "k0",
    "Y0_1",
    "f_z",
    "p_z1",
    "u1z",
    "u1z_slope",
    "ridge_slopes",
    "ci_x_slopes",
    "cn_upper_slopes",
    "cn_lower_slopes",
    "yw1_grads",
    "yw2_1_grads",
    "yw2_2_grads",
    "t_cut",
    "w1_conj",
    "w21_conj",
    "w22_conj",
    "G1",
    "G2",
    "G3",
    "p3",
    "P0",
    "Stratum",
    "classify_point",
    "curve_samples",
]

SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# constants


@lru_cache(maxsize=1)
def k0() -> float:
    """The unique modulus with 2E(k) = K(k), about 0.909."""
    return brentq(iota1, 0.5, 0.99, xtol=1e-15, rtol=8.9e-16)


@lru_cache(maxsize=1)
def Y0_1() -> float:
    """Left endpoint (1 - 2 k0^2) / (2 k0 sqrt(1 - k0^2)) of the z-plane curve domain."""
    kk = k0()
    return (1.0 - 2.0 * kk * kk) / (2.0 * kk * math.sqrt(1.0 - kk * kk))


@lru_cache(maxsize=1)
def p3() -> float:
    """Positive root of p = 2 tanh p."""
    return brentq(lambda p: p - 2.0 * math.tanh(p), 1.0, 3.0, xtol=1e-15, rtol=8.9e-16)


P0 = math.log(3.0 + math.sqrt(10.0))


# ---------------------------------------------------------------------------
# the z-return phase


def f_z(p: float, k: float) -> float:
    """dn p sn p + (p - 2 E(p)) cn p; its first positive root drives the C1 cut time."""
    sn, cn, dn = jacobi(p, k)
    return dn * sn + (p - 2.0 * jacobi_eps(p, k)) * cn


@lru_cache(maxsize=100_000)
def p_z1(k: float) -> float:
    """First positive root of f_z, bracketed in (K, 3K).

    At the critical modulus the root is a triple zero sitting exactly at
    2K(k0) (f_z(2K) = 2(2E - K) and the next two p-derivatives vanish
    there too), so residual-based refinement cannot resolve it; within
    cube-root reach of k0 the limit value is returned directly.
    """
    if not (0.0 < k < 1.0):
        raise ValueError("p_z1 requires k in (0, 1)")
    bigk = complete_K(k)
    if abs(iota1(k)) <= 1e-13:
        return 2.0 * bigk
    return brentq(f_z, bigk, 3.0 * bigk, args=(k,), xtol=1e-14, rtol=8.9e-16)


def u1z(k: float) -> float:
    """Amplitude am(p_z1(k)); lies in (pi/2, pi) above k0."""
    return am(p_z1(k), k)


def u1z_slope(k: float) -> float:
    """d u1z / dk, closed form from differentiating f_z(F(u1z), k) = 0."""
    u1 = u1z(k)
    s1, c1 = math.sin(u1), math.cos(u1)
    d1 = math.sqrt(1.0 - (k * s1) ** 2)
    e1 = incomplete_E(u1, k)
    return c1 * (1.0 - e1 * c1 / (s1 * d1)) / (k * (1.0 - k * k) * s1)


# ---------------------------------------------------------------------------
# closed-form slopes of the boundary-curve parametrizations
#
# These are the monotonicity certificates for the graph inversions below:
# each boundary curve has a sign-definite abscissa slope, and the mapped
# 2D patches have sign-definite slope defects (difference between the
# graph slopes of the two coordinate lines through a point), which pins
# the Maxwell patches strictly to one side of their boundary curve.


def ridge_slopes(k: float) -> tuple[float, float]:
    """d/dk of (Y, W) along the z-plane ridge (u1 = u1z(k), sin u2 = 1); both > 0."""
    u1 = u1z(k)
    s1, c1 = math.sin(u1), math.cos(u1)
    d1 = math.sqrt(1.0 - (k * s1) ** 2)
    e1 = incomplete_E(u1, k)
    kp2 = 1.0 - k * k
    dy = e1 * d1 / (2.0 * k * k * kp2 ** 1.5 * s1)
    dw = -((e1 * c1 - s1 * d1 ** 3) * (e1 * c1 ** 3 - s1 * d1 ** 3)) / (
        16.0 * k ** 4 * kp2 ** 2.5 * s1 ** 6 * c1
    )
    return dy, dw


def ci_x_slopes(k: float) -> tuple[float, float]:
    """d/dk of (Y, W) along the x-plane conjugate curve (u2 = 0); (-, +)."""
    dy = -complete_E(k) / ((1.0 - k * k) * math.sqrt(2.0 * k ** 3 * iota1(k)))
    dw = iota3(k) / (2.0 * k * iota1(k)) ** 2.5
    return dy, dw


def cn_upper_slopes(k: float) -> tuple[float, float]:
    """d/dk of (Y, W) along the u2 = 0 lens boundary branch; (-, +)."""
    kp2 = 1.0 - k * k
    dy = -k * iota2(k) / (2.0 * kp2 ** 1.25 * math.sqrt(iota4(k)))
    dw = k ** 3 * iota5(k) / (4.0 * kp2 ** 1.75 * iota4(k) ** 2.5)
    return dy, dw


def cn_lower_slopes(k: float) -> tuple[float, float]:
    """d/dk of (Y, W) along the u2 = pi/2 lens boundary branch; (-, +)."""
    kp2 = 1.0 - k * k
    dy = -k * iota6(k) / (2.0 * kp2 * math.sqrt(iota4(k)))
    dw = k ** 3 * iota5(k) / (4.0 * kp2 * iota4(k) ** 2.5)
    return dy, dw


def yw1_grads(k: float, u2: float) -> dict:
    """Patch gradients of (Y, W) = yw1(k, u1z(k), u2): dY_du2, dY_dk, defect."""
    u1 = u1z(k)
    s1, c1 = math.sin(u1), math.cos(u1)
    d1 = math.sqrt(1.0 - (k * s1) ** 2)
    s2, c2 = math.sin(u2), math.cos(u2)
    d2 = math.sqrt(1.0 - (k * s2) ** 2)
    e1 = incomplete_E(u1, k)
    delta = 1.0 - (k * s1 * s2) ** 2
    kp2 = 1.0 - k * k
    dy_du2 = delta * c2 / (2.0 * k * c1 * s2 * s2 * d2 ** 3)
    dy_dk = delta * (e1 * c1 * d2 * d2 - k * k * s1 * d1 * c2 * c2) / (
        2.0 * k * k * kp2 * s1 * c1 * d1 * s2 * d2 ** 3
    )
    defect = delta ** 2 * (
        -2.0 * e1 * s1 * c1 * d1 ** 5
        + s1 * s1 * d1 ** 6
        + e1 * e1 * c1 * c1 * ((1.0 - k * s1 * s1) ** 2 + 2.0 * k * (1.0 - k) * s1 * s1)
    ) / (8.0 * k * k * s1 ** 5 * d1 ** 5 * s2 * s2 * (k * k * s1 * d1 * c2 * c2 - e1 * c1 * d2 * d2))
    return {"dY_du2": dy_du2, "dY_dk": dy_dk, "defect": defect}


def yw2_1_grads(k: float, u2: float) -> dict:
    """Patch gradients of yw2_1 in u2: both positive on (0, k0) x (0, pi/2)."""
    i1, i2 = iota1(k), iota2(k)
    s2, c2 = math.sin(u2), math.cos(u2)
    dy_du2 = math.sqrt(i1 / (2.0 * k * c2 ** 3)) * s2
    dw_du2 = (i2 + k * k * s2 * s2 * i1) * s2 / (2.0 * c2 * (2.0 * k * i1 * c2) ** 1.5)
    return {"dY_du2": dy_du2, "dW_du2": dw_du2}


def yw2_2_grads(k: float, u2: float) -> dict:
    """Patch gradients of yw2_2: -dY_du2, -dY_dk and the slope defect, all > 0."""
    s2, c2 = math.sin(u2), math.cos(u2)
    d2 = math.sqrt(1.0 - (k * s2) ** 2)
    i4, i6 = iota4(k), iota6(k)
    bige, bigk = complete_E(k), complete_K(k)
    kp2 = 1.0 - k * k
    m_dy_du2 = -math.sqrt(i4) * k * k * c2 * s2 / (2.0 * math.sqrt(d2 ** 3) * kp2 ** 0.25)
    m_dy_dk = k * (kp2 * i6 + c2 * c2 * (i4 + k * k * i6)) / (2.0 * math.sqrt(d2 ** 3 * i4 * kp2 ** 2.5))
    defect = d2 ** 3 * k * k * (bige ** 2 - kp2 * bigk ** 2) / (
        i4 * i4 * math.sqrt(kp2) * (kp2 * i6 + c2 * c2 * (i4 + k * k * i6))
    )
    return {"m_dY_du2": m_dy_du2, "m_dY_dk": m_dy_dk, "defect": defect}


# ---------------------------------------------------------------------------
# cut time


def t_cut(lam: Covector, eps_class: float = 1e-12) -> float:
    """Last globally optimal time along the geodesic of lam; may be +inf."""
    cls = classify(lam, eps_class)
    if cls.tag == "C1":
        s_abs = math.sqrt(abs(lam.alpha))
        k = cls.k
        if k <= k0():
            return 4.0 * complete_K(k) / s_abs
        return 2.0 * p_z1(k) / s_abs
    if cls.tag == "C2":
        s_abs = math.sqrt(abs(lam.alpha))
        return 2.0 * complete_K(cls.k) * cls.k / s_abs
    if cls.tag == "C6":
        return 2.0 * math.pi / abs(lam.c)
    # separatrix, straight lines and pendulum equilibria stay optimal forever
    return math.inf


# ---------------------------------------------------------------------------
# boundary curves as graphs
#
# Each conjugate-type curve is strictly monotone in its abscissa over its
# modulus interval, so its graph value is recovered by a bracketed scalar
# root-find in k.  Domains are limited only by double precision near k -> 1.

_K_LO = 1e-14

# float64 loses the z-plane ridge beyond this modulus (the curve formulas
# cancel at the k'^2 scale); the far tail switches to multiprecision
_K_RIDGE_HI = 1.0 - 1e-7


def _ridge_yw(k: float) -> tuple[float, float]:
    """(Y, W) along the z-plane conjugate ridge (u1 = u1z(k), sin u2 = 1).

    Same values as yw1(k, u1z(k), pi/2), but with the two numerators
    reorganized so that nothing cancels as k -> 1: the Y numerator becomes
    k'^2 - k^2 cos^2(u1), and the inner polynomial of the W numerator is
    expanded around (k'^2, cos^2 u1), where it is second order.
    """
    u1 = u1z(k)
    s1, c1 = math.sin(u1), math.cos(u1)
    mu = k * k
    eps = 1.0 - mu
    dd = eps + mu * c1 * c1  # dn^2(u1), no cancellation
    d1 = math.sqrt(dd)
    kp = math.sqrt(eps)
    e1 = incomplete_E(u1, k)
    y = -(eps - mu * c1 * c1) / (2.0 * k * c1 * kp)
    q = -8.0 * eps * eps + 4.0 * eps * (1.0 + 2.0 * eps) * dd + (1.0 - 4.0 * eps) * dd * dd
    num = -e1 * c1 * dd ** 3 + d1 ** 3 * s1 * q
    w = num / (48.0 * k ** 3 * s1 ** 3 * c1 * d1 ** 3 * kp ** 3)
    return y, w


@lru_cache(maxsize=1)
def _ridge_switch() -> tuple[float, float]:
    """(Y, W) of the ridge at the float64/multiprecision hand-over modulus."""
    return _ridge_yw(_K_RIDGE_HI)


def _ridge_tail_mp(Y1: float) -> float:
    """Far tail of the z-plane conjugate curve via multiprecision.

    For large Y the curve parameter approaches k = 1 far beyond float64
    resolution (K grows like 2Y + 2), so the ridge is re-solved in mpmath
    with L = ln(1/k') as the working variable; the precision scales with
    the k'^7 cancellation depth of the W numerator.
    """
    import mpmath as mp

    dps = 60 + int(8.0 * max(Y1, 1.0))
    with mp.workdps(dps):
        def ridge(L):
            kp = mp.exp(-L)
            m = 1 - kp * kp
            bigk = mp.ellipk(m)

            def fz(p):
                sn = mp.ellipfun("sn", p, m)
                cn = mp.ellipfun("cn", p, m)
                dn = mp.ellipfun("dn", p, m)
                phi = mp.pi - mp.asin(sn) if cn < 0 else mp.asin(sn)
                return dn * sn + (p - 2 * mp.ellipe(phi, m)) * cn

            # tail behaviour of the root: p = K + 1/(K - 2) + o(1)
            p = mp.findroot(fz, bigk + 1 / (bigk - 2), tol=mp.mpf(10) ** (-dps + 8))
            sn = mp.ellipfun("sn", p, m)
            phi = mp.pi - mp.asin(sn)  # u1 in (pi/2, pi)
            s1, c1 = mp.sin(phi), mp.cos(phi)
            eps = kp * kp
            dd = eps + m * c1 * c1
            d1 = mp.sqrt(dd)
            e1 = mp.ellipe(phi, m)
            k = mp.sqrt(m)
            y = -(eps - m * c1 ** 2) / (2 * k * c1 * kp)
            q = -8 * eps ** 2 + 4 * eps * (1 + 2 * eps) * dd + (1 - 4 * eps) * dd ** 2
            num = -e1 * c1 * dd ** 3 + d1 ** 3 * s1 * q
            w = num / (48 * k ** 3 * s1 ** 3 * c1 * d1 ** 3 * kp ** 3)
            return y, w

        # seed from the switch point: Y grows like L/2 along the tail
        y_sw = _ridge_switch()[0]
        L_sw = -math.log(math.sqrt(1.0 - _K_RIDGE_HI ** 2))
        L0 = mp.mpf(L_sw + 2.0 * (Y1 - y_sw))
        L = mp.findroot(lambda L: ridge(L)[0] - Y1, (L0, L0 * mp.mpf("1.001")),
                        solver="secant", tol=mp.mpf(10) ** (-30))
        return float(ridge(L)[1])


def w1_conj(Y1: float) -> float:
    """Graph of the conjugate curve in the (y/x, w/x^3) plane, Y1 > Y0_1."""
    lo = k0() * (1.0 + 1e-14)
    if Y1 <= Y0_1():
        raise ValueError(f"w1_conj defined for Y1 > {Y0_1():.6f}, got {Y1!r}")
    if Y1 >= _ridge_switch()[0]:
        return _ridge_tail_mp(Y1)
    f = lambda k: _ridge_yw(k)[0] - Y1
    if f(lo) >= 0.0:  # asks within one ulp of the vertical asymptote
        k = lo
    else:
        k = brentq(f, lo, _K_RIDGE_HI, xtol=1e-15, rtol=8.9e-16)
    return _ridge_yw(k)[1]


def w21_conj(Y2: float) -> float:
    """Graph of the conjugate curve in the (y/sqrt z, w/sqrt z^3) plane, Y2 > 0."""
    if Y2 <= 0.0:
        raise ValueError("w21_conj defined for Y2 > 0")
    hi = k0() * (1.0 - 1e-14)
    f = lambda k: yw2_1(k, 0.0)[0] - Y2
    if f(_K_LO) <= 0.0:
        raise ValueError(f"Y2={Y2!r} beyond the representable modulus range")
    if f(hi) >= 0.0:
        k = hi
    else:
        k = brentq(f, _K_LO, hi, xtol=1e-15, rtol=8.9e-16)
    return yw2_1(k, 0.0)[1]


def _w22_branch(Y2: float, u2: float) -> float:
    """Value of the rotating-class boundary branch at abscissa Y2 < 0."""
    f = lambda k: yw2_2(k, u2)[0] - Y2
    if f(K_CAP) >= 0.0:
        if u2 > 1.0:
            # inner branch: abscissa is -sqrt(iota4), which leaves float64
            # range already at moderate Y; continue with the k -> 1 tail,
            # where iota4 = K - 2 and the ordinate is (14 - 6K)/(12 iota4^1.5)
            bigk = Y2 * Y2 + 2.0
            return (14.0 - 6.0 * bigk) / (12.0 * (bigk - 2.0) ** 1.5)
        raise ValueError(f"Y2={Y2!r} beyond the representable modulus range")
    if f(_K_LO) <= 0.0:
        k = _K_LO
    else:
        k = brentq(f, _K_LO, K_CAP, xtol=1e-15, rtol=8.9e-16)
    return yw2_2(k, u2)[1]


def w22_conj(Y2: float) -> float:
    """Upper boundary of the lens in the (y/sqrt z, w/sqrt z^3) plane.

    Piecewise graph: the u2 = 0 branch for Y2 < 0 and the reflected
    u2 = pi/2 branch for Y2 > 0; the two join smoothly through 1/sqrt(pi)
    at Y2 = 0.
    """
    if Y2 == 0.0:
        return 1.0 / SQRT_PI
    if Y2 < 0.0:
        return _w22_branch(Y2, 0.0)
    return -_w22_branch(-Y2, math.pi / 2.0)


# ---------------------------------------------------------------------------
# homogeneous boundary functions


def G1(x: float, y: float) -> float:
    """Boundary of the 3D cut stratum in {z = 0}; weight-3 homogeneous, even in x."""
    if x == 0.0:
        if y <= 0.0:
            raise ValueError("G1(0, y) requires y > 0")
        return 0.0
    yx = y / abs(x)
    if yx <= Y0_1():
        raise ValueError("G1 requires y > Y0_1 |x|")
    return w1_conj(yx) * abs(x) ** 3


def G2(z: float, y: float) -> float:
    """Boundary of the 3D cut stratum in {x = 0}; even in z, y > 0."""
    if y <= 0.0:
        raise ValueError("G2 requires y > 0")
    if z == 0.0:
        return 0.0
    return w21_conj(y / math.sqrt(abs(z))) * abs(z) ** 1.5


def G3(z: float, y: float) -> float:
    """Upper boundary of the lens stratum in {x = 0}; even in z."""
    if z == 0.0:
        if y <= 0.0:
            raise ValueError("G3(0, y) requires y > 0")
        return 0.0
    return w22_conj(y / math.sqrt(abs(z))) * abs(z) ** 1.5


# ---------------------------------------------------------------------------
# stratum classifier


@dataclass(frozen=True)
class Stratum:
    """Cut-locus stratum label with multiplicity and the two membership flags.

    multiplicity is 1, 2, "family" (one-parameter family of minimizers) or
    "none" (the origin).  is_maxwell marks strata reached by several equal
    length minimizers (3D and 1D strata); is_conjugate marks strata of
    conjugate points (2D and 1D strata).
    """

    label: str
    multiplicity: int | str
    piece: str = ""
    is_maxwell: bool = False
    is_conjugate: bool = False

    @property
    def display(self) -> str:
        return f"{self.label}[{self.piece}]" if self.piece else self.label

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "piece": self.piece,
            "multiplicity": self.multiplicity,
            "is_maxwell": self.is_maxwell,
            "is_conjugate": self.is_conjugate,
        }


def _near(a: float, b: float, eps: float) -> bool:
    return abs(a - b) <= eps


def _classify_m00(y: float, w: float, eps: float) -> Stratum:
    if abs(w) <= eps:
        label = "A+" if y > 0 else "A-"
        return Stratum(label, 1)
    if w > 0.0:
        if y > eps:
            return Stratum("I0x+", 2, is_maxwell=True)
        if y < -eps:
            return Stratum("I0z+", 2, is_maxwell=True)
        return Stratum("E+", "family", is_maxwell=True, is_conjugate=True)
    if y > eps:
        return Stratum("I0z-", 2, is_maxwell=True)
    if y < -eps:
        return Stratum("I0x-", 2, is_maxwell=True)
    return Stratum("E-", "family", is_maxwell=True, is_conjugate=True)


def _classify_z_plane(Yt: float, Wt: float, piece: str, eps: float) -> Stratum:
    y00 = Y0_1()
    if Yt > y00:
        try:
            wc = w1_conj(Yt)
        except ValueError:
            wc = None
        if wc is not None:
            if _near(Wt, wc, eps):
                return Stratum(f"CIz+^{piece}", 1, is_conjugate=True)
            if Wt < wc:
                return Stratum("Iz+", 2, piece=piece, is_maxwell=True)
    if -Yt > y00:
        try:
            wc = w1_conj(-Yt)
        except ValueError:
            wc = None
        if wc is not None:
            if _near(-Wt, wc, eps):
                return Stratum(f"CIz-^{piece}", 1, is_conjugate=True)
            if -Wt < wc:
                return Stratum("Iz-", 2, piece=piece, is_maxwell=True)
    return Stratum("Generic", 1, piece=piece)


def _classify_x_plane(Yt: float, Wt: float, piece: str, eps: float) -> Stratum:
    inv_sqrt_pi = 1.0 / SQRT_PI
    if abs(Yt) <= eps:
        if _near(Wt, inv_sqrt_pi, eps):
            return Stratum(f"CNx{piece}^+", 1, is_conjugate=True)
        if _near(Wt, -inv_sqrt_pi, eps):
            return Stratum(f"CNx{piece}^-", 1, is_conjugate=True)
        if abs(Wt) < inv_sqrt_pi:
            return Stratum(f"Nx{piece}", 2, piece="C", is_maxwell=True)
        return Stratum("Generic", 1, piece=piece)
    sign = 1.0 if Yt > 0.0 else -1.0
    ya = abs(Yt)
    # conjugate curve bounding the one-sided 3D stratum
    try:
        wc = w21_conj(ya)
    except ValueError:
        wc = None
    if wc is not None:
        if _near(sign * Wt, wc, eps):
            lbl = "CIx+" if sign > 0 else "CIx-"
            return Stratum(f"{lbl}^{piece}", 1, is_conjugate=True)
        if sign * Wt > wc:
            return Stratum("Ix+" if sign > 0 else "Ix-", 2, piece=piece, is_maxwell=True)
    # band between the two rotating-class boundary curves; out-of-range
    # abscissas take the limiting values of the curves
    try:
        upper = w22_conj(Yt)
    except ValueError:
        upper = math.inf if Yt < 0.0 else 0.0
    try:
        lower = -w22_conj(-Yt)
    except ValueError:
        lower = -math.inf if Yt > 0.0 else 0.0
    if _near(Wt, upper, eps):
        return Stratum(f"CNx{piece}^+", 1, is_conjugate=True)
    if _near(Wt, lower, eps):
        return Stratum(f"CNx{piece}^-", 1, is_conjugate=True)
    if lower < Wt < upper:
        sub = "N+" if Yt < 0.0 else "N-"
        return Stratum(f"Nx{piece}", 2, piece=sub, is_maxwell=True)
    return Stratum("Generic", 1, piece=piece)


def classify_point(q: Point, eps_strat: float = 1e-9) -> Stratum:
    """Stratum of the terminal point q.

    Membership in the coordinate hyperplanes and in the boundary curves is
    decided on the dilation-normalized point with tolerance eps_strat;
    points within tolerance of a boundary curve get the boundary label
    (boundary strata carry fewer minimizers, so this is the conservative
    call).
    """
    s = scale(q)
    if s == 0.0:
        return Stratum("Origin", "none")
    qh = dilate(1.0 / s, q)
    on_x = abs(qh.x) <= eps_strat
    on_z = abs(qh.z) <= eps_strat
    if not on_x and not on_z:
        return Stratum("Generic", 1)
    if on_x and on_z:
        return _classify_m00(qh.y, qh.w, eps_strat)
    if on_z:
        piece = "+" if qh.x > 0 else "-"
        ax = abs(qh.x)
        return _classify_z_plane(qh.y / ax, qh.w / ax ** 3, piece, eps_strat)
    piece = "+" if qh.z > 0 else "-"
    rz = math.sqrt(abs(qh.z))
    return _classify_x_plane(qh.y / rz, qh.w / rz ** 3, piece, eps_strat)


# ---------------------------------------------------------------------------
# curve export


def curve_samples(which: str, grid: int = 200) -> np.ndarray:
    """Sample a boundary curve; rows (param, Y, W).

    which: "w1" (conjugate curve in the z = 0 plane), "w21" (conjugate
    curve in the x = 0 plane), "w22" (both lens boundary branches) or
    "fix3" (separatrix fixed-point curve, parametrized by p).
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    if which == "w1":
        kk = k0()
        ks = np.linspace(kk + 1e-6, 0.9999, grid)
        rows = [(k, *yw1(k, u1z(k), math.pi / 2.0)) for k in ks]
    elif which == "w21":
        ks = np.linspace(1e-6, k0() - 1e-6, grid)
        rows = [(k, *yw2_1(k, 0.0)) for k in ks]
    elif which == "w22":
        ks = np.linspace(1e-6, 0.9999, grid)
        rows = [(k, *yw2_2(k, 0.0)) for k in ks]
        for k in ks:
            y, w = yw2_2(k, math.pi / 2.0)
            rows.append((k, -y, -w))
    elif which == "fix3":
        ps = np.linspace(1e-3, 6.0, grid)
        rows = [(p, *yw2_3(p)) for p in ps]
    else:
        raise ValueError(f"unknown curve {which!r}")
    return np.array(rows, dtype=float)
