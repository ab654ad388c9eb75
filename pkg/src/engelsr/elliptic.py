"""Legendre/Jacobi elliptic functions in the modulus-k convention.

All routines take the *modulus* k, not the parameter m = k**2 that
scipy.special uses.  This matters: sn(p, k) here equals
scipy.special.ellipj(p, k**2)[0].  Everything downstream of this module
(pendulum phases, cut times, boundary curves) is written with modulus-k
formulas, so the convention is fixed here once.

Complete and incomplete integrals are evaluated through Carlson symmetric
forms R_F, R_D (duplication theorem), which give close to full double
precision on the whole admissible range.  The amplitude am(p, k) is
computed by inverting the incomplete integral of the first kind with a
safeguarded Newton iteration after reduction to one quarter period.

K(k) diverges as k -> 1, so every first-kind evaluation is capped at
K_CAP = 1 - 1e-12; asking beyond that raises EllipticDomainError.
"""

from __future__ import annotations

import math
from functools import lru_cache

__all__ = [
    "K_CAP",
    "EllipticDomainError",
    "complete_K",
    "complete_E",
    "incomplete_F",
    "incomplete_E",
    "am",
    "jacobi",
    "jacobi_eps",
]

K_CAP = 1.0 - 1e-12

_EPS = 2.220446049250313e-16


class EllipticDomainError(ValueError):
    """Modulus or argument outside the supported domain."""


def _check_modulus(k: float, allow_one: bool = False) -> None:
    hi = 1.0 if allow_one else K_CAP
    if not (0.0 <= k <= hi):
        raise EllipticDomainError(f"modulus k={k!r} outside [0, {hi!r}]")


def _rf(x: float, y: float, z: float) -> float:
    """Carlson R_F(x, y, z) = (1/2) int_0^inf dt / sqrt((t+x)(t+y)(t+z)).

    Arguments nonnegative, at most one of them zero.
    """
    a = (x + y + z) / 3.0
    a0 = a
    q = (3.0 * _EPS) ** (-0.125) * max(abs(a - x), abs(a - y), abs(a - z))
    fac = 1.0
    while q >= fac * abs(a):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        x = (x + lam) / 4.0
        y = (y + lam) / 4.0
        z = (z + lam) / 4.0
        a = (a + lam) / 4.0
        fac *= 4.0
    # (a0 - x0)/(4^m a_m) equals (a_m - x_m)/a_m since the lambda shifts cancel
    big_x = (a - x) / a
    big_y = (a - y) / a
    big_z = -(big_x + big_y)
    e2 = big_x * big_y - big_z * big_z
    e3 = big_x * big_y * big_z
    s = (
        1.0
        - e2 / 10.0
        + e3 / 14.0
        + e2 * e2 / 24.0
        - 3.0 * e2 * e3 / 44.0
        - 5.0 * e2 ** 3 / 208.0
        + 3.0 * e3 * e3 / 104.0
        + e2 * e2 * e3 / 16.0
    )
    return s / math.sqrt(a)


def _rd(x: float, y: float, z: float) -> float:
    """Carlson R_D(x, y, z) = (3/2) int_0^inf dt / ((t+z) sqrt((t+x)(t+y)(t+z))).

    x, y nonnegative with at most one zero; z positive.
    """
    a = (x + y + 3.0 * z) / 5.0
    a0 = a
    q = (0.25 * _EPS) ** (-0.125) * max(abs(a - x), abs(a - y), abs(a - z))
    fac = 1.0
    acc = 0.0
    while q >= fac * abs(a):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        acc += 1.0 / (fac * sz * (z + lam))
        x = (x + lam) / 4.0
        y = (y + lam) / 4.0
        z = (z + lam) / 4.0
        a = (a + lam) / 4.0
        fac *= 4.0
    big_x = (a - x) / a
    big_y = (a - y) / a
    big_z = -(big_x + big_y) / 3.0
    e2 = big_x * big_y - 6.0 * big_z * big_z
    e3 = (3.0 * big_x * big_y - 8.0 * big_z * big_z) * big_z
    e4 = 3.0 * (big_x * big_y - big_z * big_z) * big_z * big_z
    e5 = big_x * big_y * big_z ** 3
    s = (
        1.0
        - 3.0 * e2 / 14.0
        + e3 / 6.0
        + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
        - e2 ** 3 / 16.0
        + 3.0 * e3 * e3 / 40.0
        + 3.0 * e2 * e4 / 20.0
        + 45.0 * e2 * e2 * e3 / 272.0
        - 9.0 * (e3 * e4 + e2 * e5) / 68.0
    )
    return s / (fac * a * math.sqrt(a)) + 3.0 * acc


@lru_cache(maxsize=None)
def complete_K(k: float) -> float:
    """Complete elliptic integral of the first kind.

    K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t), relative accuracy
    better than 1e-12 on [0, K_CAP].
    """
    _check_modulus(k)
    return _rf(0.0, 1.0 - k * k, 1.0)


@lru_cache(maxsize=None)
def complete_E(k: float) -> float:
    """Complete elliptic integral of the second kind.

    E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt on [0, 1]; E(1) = 1.
    """
    _check_modulus(k, allow_one=True)
    if k == 1.0:
        return 1.0
    kk = k * k
    return _rf(0.0, 1.0 - kk, 1.0) - (kk / 3.0) * _rd(0.0, 1.0 - kk, 1.0)


def _f_quarter(phi: float, k: float) -> float:
    """F(phi, k) for phi in [-pi/2, pi/2]."""
    s = math.sin(phi)
    c2 = 1.0 - s * s
    return s * _rf(c2, 1.0 - (k * s) ** 2, 1.0)


def _e_quarter(phi: float, k: float) -> float:
    """E(phi, k) for phi in [-pi/2, pi/2]."""
    s = math.sin(phi)
    c2 = 1.0 - s * s
    ks2 = (k * s) ** 2
    out = s * _rf(c2, 1.0 - ks2, 1.0)
    if k != 0.0:
        out -= (k * k) * s ** 3 / 3.0 * _rd(c2, 1.0 - ks2, 1.0)
    return out


def _reduce_angle(phi: float) -> tuple[float, int]:
    """Split phi = phi0 + n*pi with phi0 in [-pi/2, pi/2]."""
    n = math.floor(phi / math.pi + 0.5)
    return phi - n * math.pi, n


def incomplete_F(phi: float, k: float) -> float:
    """Incomplete elliptic integral of the first kind F(phi, k).

    Extended to all real phi by the quasi-periodicity
    F(phi + pi, k) = F(phi, k) + 2 K(k).
    """
    _check_modulus(k)
    phi0, n = _reduce_angle(phi)
    out = _f_quarter(phi0, k)
    if n:
        out += 2.0 * n * complete_K(k)
    return out


def incomplete_E(phi: float, k: float) -> float:
    """Incomplete elliptic integral of the second kind E(phi, k).

    Extended to all real phi by E(phi + pi, k) = E(phi, k) + 2 E(k).
    """
    _check_modulus(k)
    phi0, n = _reduce_angle(phi)
    out = _e_quarter(phi0, k)
    if n:
        out += 2.0 * n * complete_E(k)
    return out


def am(p: float, k: float) -> float:
    """Elliptic amplitude, the inverse of F: F(am(p, k), k) = p.

    Increasing in p with am(p + 2K, k) = am(p, k) + pi.
    """
    _check_modulus(k)
    if k == 0.0:
        return p
    bigk = complete_K(k)
    # reduce to one quarter period, p0 in [-K, K]
    n = math.floor((p + bigk) / (2.0 * bigk))
    p0 = p - 2.0 * n * bigk
    out = _am_quarter(p0, k, bigk)
    if n:
        out += n * math.pi
    return out


def _am_quarter(p0: float, k: float, bigk: float) -> float:
    """Invert F on [-K, K] by safeguarded Newton."""
    if p0 == 0.0:
        return 0.0
    lo, hi = -math.pi / 2.0, math.pi / 2.0
    phi = max(lo, min(hi, (math.pi / 2.0) * (p0 / bigk)))
    for _ in range(60):
        r = _f_quarter(phi, k) - p0
        if r > 0.0:
            hi = phi
        else:
            lo = phi
        step = r * math.sqrt(max(1.0 - (k * math.sin(phi)) ** 2, 1e-300))
        nxt = phi - step
        if not (lo <= nxt <= hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - phi) <= 4.0 * _EPS * max(1.0, abs(phi)):
            return nxt
        phi = nxt
    return phi


def jacobi(p: float, k: float) -> tuple[float, float, float]:
    """Jacobi elliptic functions (sn p, cn p, dn p) with modulus k."""
    phi = am(p, k)
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(max(1.0 - (k * sn) ** 2, 0.0))
    return sn, cn, dn


def jacobi_eps(p: float, k: float) -> float:
    """Jacobi epsilon E(p) = int_0^p dn^2 t dt = E(am(p, k), k).

    Additive quasi-periodicity E(p + 2K) = E(p) + 2 E(k).
    """
    _check_modulus(k)
    if k == 0.0:
        return p
    return incomplete_E(am(p, k), k)
