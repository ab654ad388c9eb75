"""Exponential mapping of the Engel sub-Riemannian problem.

A normal extremal is driven by a covector (theta, c, alpha) on the unit
Hamiltonian level.  The vertical subsystem is the pendulum

    theta' = c,    c' = -alpha sin(theta),

with conserved energy E = c^2/2 - alpha cos(theta), and the controls along
the extremal are u1 = -sin(theta_s), u2 = cos(theta_s).  This is the unique
convention for which E is conserved and the constant-theta trajectories
with cos(theta) = +-1 run along the abnormal rays {x = z = w = 0}.  The
(x, y) projection is an Euler elastica whose curvature equals c_s.

The covector cylinder splits into classes C1..C7 by energy (oscillating,
rotating, separatrix, stable/unstable equilibria, circles, lines).  On C1,
C2, C3 the extremals are reparametrized by elliptic chart coordinates; the
pendulum phase is carried by Jacobi functions:

    C1 (alpha > 0):  sin(theta/2) = k sn(v),  c = 2|s| k cn(v)
    C2 (alpha > 0):  sin(theta/2) = sn(v),    c = (2|s|/k) dn(v),  c > 0
    C3 (alpha > 0):  sin(theta/2) = tanh(v),  c = 2|s| sech(v),    c > 0

with s = sgn(alpha) sqrt(|alpha|) and v the rescaled phase.  Covectors
with alpha < 0 are reached by conjugating with the reflection
(theta, c, alpha) -> (theta + pi, c, -alpha); rotating covectors with
c < 0 by conjugating with (theta, c) -> (-theta, -c), recorded in the
chart as c_sign = -1.

The evaluator `exp` integrates the coupled pendulum + state system with a
high-order adaptive scheme; the closed-form expressions `yw1`, `yw2_*`
give the dilation-invariant coordinates of the endpoint on the particular
sets where the cut structure lives, and are cross-validated against the
integrator in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .elliptic import (
    EllipticDomainError,
    am,
    complete_E,
    complete_K,
    incomplete_E,
    incomplete_F,
    jacobi,
)
from .group import ORIGIN, Point

__all__ = [
    "Covector",
    "CovectorClass",
    "ChartPoint",
    "classify",
    "pendulum_flow",
    "exp",
    "exp_trajectory",
    "from_chart",
    "to_chart",
    "reflect_preimage",
    "iota1",
    "iota2",
    "iota3",
    "iota4",
    "iota5",
    "iota6",
    "yw1",
    "yw2_1",
    "yw2_2",
    "yw2_6",
    "yw2_3",
]

RTOL = 1e-10
ATOL = 1e-12

_TWO_PI = 2.0 * math.pi


def _wrap_angle(theta: float) -> float:
    """Wrap to (-pi, pi]."""
    t = math.remainder(theta, _TWO_PI)
    if t <= -math.pi:
        t += _TWO_PI
    return t


@dataclass(frozen=True)
class Covector:
    """Initial momentum (theta, c, alpha); theta normalized to (-pi, pi]."""

    theta: float
    c: float
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _wrap_angle(self.theta))

    @property
    def energy(self) -> float:
        return 0.5 * self.c * self.c - self.alpha * math.cos(self.theta)

    def to_json_dict(self) -> dict:
        return {"theta": self.theta, "c": self.c, "alpha": self.alpha}


@dataclass(frozen=True)
class CovectorClass:
    """Energy class of a covector; k is the elliptic modulus where defined."""

    tag: str  # "C1" .. "C7"
    k: Optional[float]
    E: float


def classify(lam: Covector, eps_class: float = 1e-12) -> CovectorClass:
    """Assign the unique energy class C1..C7.

    Boundary comparisons E = +-|alpha| and the vanishing tests for alpha, c
    use the tolerance eps_class (scaled by the natural weight of each
    quantity).
    """
    a = lam.alpha
    E = lam.energy
    if abs(a) <= eps_class:
        if abs(lam.c) <= eps_class:
            return CovectorClass("C7", None, E)
        return CovectorClass("C6", None, E)
    aa = abs(a)
    tol = eps_class * max(1.0, aa)
    if abs(E - aa) <= tol:
        if abs(lam.c) <= eps_class * max(1.0, math.sqrt(aa)):
            return CovectorClass("C5", None, E)
        return CovectorClass("C3", 1.0, E)
    if abs(E + aa) <= tol or E < -aa:
        return CovectorClass("C4", None, E)
    if E < aa:
        k = math.sqrt((E + aa) / (2.0 * aa))
        return CovectorClass("C1", k, E)
    k = math.sqrt(2.0 * aa / (E + aa))
    return CovectorClass("C2", k, E)


# ---------------------------------------------------------------------------
# flows


def _pendulum_rhs(_s, y, alpha):
    return (y[1], -alpha * math.sin(y[0]))


def _full_rhs(_s, y, alpha):
    theta, _c, x, yy, _z, _w = y
    st = math.sin(theta)
    ct = math.cos(theta)
    # controls u1 = -sin(theta), u2 = cos(theta)
    return (
        y[1],
        -alpha * st,
        -st,
        ct,
        0.5 * (st * yy + ct * x),
        0.5 * ct * x * x,
    )


def pendulum_flow(lam: Covector, t: float, rtol: float = RTOL, atol: float = ATOL) -> Covector:
    """Pendulum state (theta_t, c_t, alpha) downstream of lam; E is conserved."""
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    if t == 0.0:
        return lam
    if lam.alpha == 0.0:
        return Covector(lam.theta + lam.c * t, lam.c, 0.0)
    sol = solve_ivp(
        _pendulum_rhs,
        (0.0, t),
        (lam.theta, lam.c),
        args=(lam.alpha,),
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"pendulum integration failed: {sol.message}")
    th, c = sol.y[0, -1], sol.y[1, -1]
    return Covector(th, c, lam.alpha)


def exp(lam: Covector, t: float, rtol: float = RTOL, atol: float = ATOL) -> Point:
    """Endpoint of the geodesic with covector lam at time t (= arclength)."""
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    if t == 0.0:
        return ORIGIN
    sol = solve_ivp(
        _full_rhs,
        (0.0, t),
        (lam.theta, lam.c, 0.0, 0.0, 0.0, 0.0),
        args=(lam.alpha,),
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"geodesic integration failed: {sol.message}")
    _th, _c, x, y, z, w = sol.y[:, -1]
    return Point(x, y, z, w)


def exp_trajectory(
    lam: Covector, t: float, samples: int = 200, rtol: float = RTOL, atol: float = ATOL
) -> np.ndarray:
    """Sampled trajectory, rows (s, x, y, z, w, theta, c), s on [0, t]."""
    if t <= 0.0:
        raise ValueError("time must be positive")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    ts = np.linspace(0.0, t, samples)
    sol = solve_ivp(
        _full_rhs,
        (0.0, t),
        (lam.theta, lam.c, 0.0, 0.0, 0.0, 0.0),
        args=(lam.alpha,),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        t_eval=ts,
    )
    if not sol.success:
        raise RuntimeError(f"geodesic integration failed: {sol.message}")
    th, c, x, y, z, w = sol.y
    return np.column_stack([ts, x, y, z, w, th, c])


def reflect_preimage(i: int, lam: Covector, t: float) -> tuple[Covector, float]:
    """Action of the reflection i in {1, 2, 4} on the pair (lam, t)."""
    if i == 4:
        return Covector(lam.theta + math.pi, lam.c, -lam.alpha), t
    if i in (1, 2):
        end = pendulum_flow(lam, t)
        if i == 1:
            return Covector(end.theta, -end.c, lam.alpha), t
        return Covector(-end.theta, end.c, lam.alpha), t
    raise ValueError(f"preimage reflection defined for i in {{1, 2, 4}}, got {i!r}")


# ---------------------------------------------------------------------------
# chart coordinates


@dataclass(frozen=True)
class ChartPoint:
    """Extremal identifier in the chart of its covector class.

    Variants: N1/N2 carry (k, u1, u2, sigma); N3 carries (p, tau, sigma);
    N6 carries (theta, c, t); N7 carries (theta, t).  The phase angles u1,
    u2 encode the rescaled time and pendulum phase through the elliptic
    amplitude.  The rotating charts N2/N3 natively describe c > 0; the
    extra flag c_sign = -1 selects the mirror family with c < 0.
    """

    chart: str  # "N1", "N2", "N3", "N6", "N7"
    k: Optional[float] = None
    u1: Optional[float] = None
    u2: Optional[float] = None
    sigma: Optional[float] = None
    p: Optional[float] = None
    tau: Optional[float] = None
    theta: Optional[float] = None
    c: Optional[float] = None
    t: Optional[float] = None
    c_sign: int = 1

    @staticmethod
    def n1(k: float, u1: float, u2: float, sigma: float) -> "ChartPoint":
        return ChartPoint("N1", k=k, u1=u1, u2=u2, sigma=sigma)

    @staticmethod
    def n2(k: float, u1: float, u2: float, sigma: float, c_sign: int = 1) -> "ChartPoint":
        return ChartPoint("N2", k=k, u1=u1, u2=u2, sigma=sigma, c_sign=c_sign)

    @staticmethod
    def n3(p: float, tau: float, sigma: float, c_sign: int = 1) -> "ChartPoint":
        return ChartPoint("N3", p=p, tau=tau, sigma=sigma, c_sign=c_sign)

    @staticmethod
    def n6(theta: float, c: float, t: float) -> "ChartPoint":
        return ChartPoint("N6", theta=theta, c=c, t=t)

    @staticmethod
    def n7(theta: float, t: float) -> "ChartPoint":
        return ChartPoint("N7", theta=theta, t=t)

    def params(self) -> dict:
        keys = {
            "N1": ("k", "u1", "u2", "sigma"),
            "N2": ("k", "u1", "u2", "sigma", "c_sign"),
            "N3": ("p", "tau", "sigma", "c_sign"),
            "N6": ("theta", "c", "t"),
            "N7": ("theta", "t"),
        }[self.chart]
        return {name: getattr(self, name) for name in keys}

    def to_json_dict(self) -> dict:
        return {"chart": self.chart, **self.params()}


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def from_chart(nu: ChartPoint) -> tuple[Covector, float]:
    """Covector and time of the extremal identified by the chart point."""
    if nu.chart == "N7":
        _require(nu.theta is not None and nu.t is not None, "N7 needs theta, t")
        return Covector(nu.theta, 0.0, 0.0), float(nu.t)
    if nu.chart == "N6":
        _require(None not in (nu.theta, nu.c, nu.t), "N6 needs theta, c, t")
        _require(nu.c != 0.0, "N6 requires c != 0")
        return Covector(nu.theta, nu.c, 0.0), float(nu.t)
    _require(nu.sigma is not None and nu.sigma != 0.0, "sigma must be nonzero")
    s_abs = abs(nu.sigma)
    if nu.chart == "N3":
        _require(None not in (nu.p, nu.tau), "N3 needs p, tau")
        t = 2.0 * nu.p / s_abs
        v0 = nu.tau - nu.p
        if abs(v0) > 300.0:  # asymptotically on the separatrix apex
            theta = math.copysign(math.pi, v0)
            c = 0.0
        else:
            theta = 2.0 * math.atan(math.sinh(v0))
            c = 2.0 * s_abs / math.cosh(v0)
    else:
        _require(None not in (nu.k, nu.u1, nu.u2), f"{nu.chart} needs k, u1, u2")
        _require(0.0 < nu.k < 1.0, "modulus must lie in (0, 1)")
        k = nu.k
        p = incomplete_F(nu.u1, k)
        tau = incomplete_F(nu.u2, k)
        v0 = tau - p
        sn, cn, dn = jacobi(v0, k)
        if nu.chart == "N1":
            t = 2.0 * p / s_abs
            theta = 2.0 * math.atan2(k * sn, dn)
            c = 2.0 * s_abs * k * cn
        elif nu.chart == "N2":
            t = 2.0 * k * p / s_abs
            theta = 2.0 * math.atan2(sn, cn)
            c = 2.0 * s_abs / k * dn
        else:
            raise ValueError(f"unknown chart {nu.chart!r}")
    if nu.c_sign < 0:
        _require(nu.chart in ("N2", "N3"), "c_sign applies to N2/N3 only")
        theta, c = -theta, -c
    alpha = s_abs * s_abs
    if nu.sigma < 0.0:
        theta, alpha = theta + math.pi, -alpha
    return Covector(theta, c, alpha), t


def to_chart(lam: Covector, t: float, eps_class: float = 1e-12) -> ChartPoint:
    """Chart point of (lam, t); inverse of from_chart up to phase periodicity.

    Equilibrium covectors (classes C4, C5) are emitted through the
    constant-theta chart N7, which reproduces their trajectory but forgets
    alpha.
    """
    cls = classify(lam, eps_class)
    if cls.tag in ("C7", "C4", "C5"):
        return ChartPoint.n7(lam.theta, t)
    if cls.tag == "C6":
        return ChartPoint.n6(lam.theta, lam.c, t)

    # normalize to the natively charted family: alpha > 0, and c > 0 on the
    # rotating classes
    theta, c, alpha = lam.theta, lam.c, lam.alpha
    c_sign = 1
    if cls.tag in ("C2", "C3") and c < 0.0:
        c_sign = -1
        theta, c = -theta, -c
    if alpha < 0.0:
        theta, alpha = theta + math.pi, -alpha
    theta = _wrap_angle(theta)
    s_abs = math.sqrt(alpha)
    sigma = math.copysign(s_abs, lam.alpha)

    if cls.tag == "C3":
        v0 = math.atanh(max(-1.0, min(1.0, math.sin(0.5 * theta))))
        p = 0.5 * s_abs * t
        return ChartPoint.n3(p, v0 + p, sigma, c_sign)

    k = cls.k
    if cls.tag == "C1":
        sn0 = max(-1.0, min(1.0, math.sin(0.5 * theta) / k))
        cn0 = c / (2.0 * s_abs * k)
        phi0 = math.atan2(sn0, cn0)
        v0 = incomplete_F(phi0, k)
        p = 0.5 * s_abs * t
    else:  # C2
        v0 = incomplete_F(0.5 * theta, k)
        p = 0.5 * s_abs * t / k
    per = 4.0 * complete_K(k)
    tau = math.fmod(v0 + p, per)
    if tau < 0.0:
        tau += per
    u2 = am(tau, k)
    u1 = am(p, k)
    if cls.tag == "C1":
        return ChartPoint.n1(k, u1, u2, sigma)
    return ChartPoint.n2(k, u1, u2, sigma, c_sign)


# ---------------------------------------------------------------------------
# combinations of complete integrals entering the endpoint formulas
#
# Below _SERIES_K the direct differences of complete integrals cancel in
# float64, so the Maclaurin series (relative accuracy ~1e-11 at the
# crossover, exact order k^2 or k^4 at 0) takes over.

_SERIES_K = 0.1


def iota1(k: float) -> float:
    """2E(k) - K(k); positive below the critical modulus, zero there."""
    return 2.0 * complete_E(k) - complete_K(k)


def iota2(k: float) -> float:
    """K(k) - E(k); positive on (0, 1)."""
    if k < _SERIES_K:
        m = k * k
        s = m * (1.0 / 2.0 + m * (3.0 / 16.0 + m * (15.0 / 128.0 + m * (
            175.0 / 2048.0 + m * (2205.0 / 32768.0 + m * 14553.0 / 262144.0)))))
        return (math.pi / 2.0) * s
    return complete_K(k) - complete_E(k)


def iota3(k: float) -> float:
    """(3E^2 - (5 - 4k^2)EK + 2(1 - k^2)K^2) / (1 - k^2); positive below k0."""
    bige, bigk = complete_E(k), complete_K(k)
    return (3.0 * bige ** 2 - (5.0 - 4.0 * k * k) * bige * bigk
            + 2.0 * (1.0 - k * k) * bigk ** 2) / (1.0 - k * k)


def iota4(k: float) -> float:
    """(2 - k^2)K(k) - 2E(k); positive on (0, 1)."""
    if k < _SERIES_K:
        m = k * k
        s = m * m * (1.0 / 8.0 + m * (3.0 / 32.0 + m * (75.0 / 1024.0 + m * (
            245.0 / 4096.0 + m * 6615.0 / 131072.0))))
        return (math.pi / 2.0) * s
    return (2.0 - k * k) * complete_K(k) - 2.0 * complete_E(k)


def iota5(k: float) -> float:
    """(2 - k^2)EK + (1 - k^2)K^2 - 3E^2; positive on (0, 1)."""
    bige, bigk = complete_E(k), complete_K(k)
    return (2.0 - k * k) * bige * bigk + (1.0 - k * k) * bigk ** 2 - 3.0 * bige ** 2


def iota6(k: float) -> float:
    """E(k) - (1 - k^2)K(k); positive on (0, 1)."""
    if k < _SERIES_K:
        m = k * k
        s = m * (1.0 / 2.0 + m * (1.0 / 16.0 + m * (3.0 / 128.0 + m * (
            25.0 / 2048.0 + m * (245.0 / 32768.0 + m * 1323.0 / 262144.0)))))
        return (math.pi / 2.0) * s
    return complete_E(k) - (1.0 - k * k) * complete_K(k)


# ---------------------------------------------------------------------------
# restricted closed forms in the dilation-invariant plane coordinates
#
# On {z = 0, x != 0} the invariant pair is (Y1, W1) = (y/x, w/x^3); on
# {x = 0, z != 0} it is (Y2, W2) = (y/sqrt(z), w/sqrt(z)^3).  The formulas
# below give these pairs on the specific chart slices where geodesics cross
# the coordinate hyperplanes at their cut time, or along the separatrix
# fixed-point curve for yw2_3.


def _sincd(k: float, u: float) -> tuple[float, float, float]:
    s = math.sin(u)
    c = math.cos(u)
    d = math.sqrt(max(1.0 - (k * s) ** 2, 0.0))
    return s, c, d


def yw1(k: float, u1: float, u2: float) -> tuple[float, float]:
    """(y/x, w/x^3) on the oscillating-class slice u1 = u1z(k), z = 0."""
    s1, c1, d1 = _sincd(k, u1)
    s2, c2, d2 = _sincd(k, u2)
    if abs(c1) < 1e-12 or abs(s2) < 1e-12 or d2 < 1e-12:
        raise ValueError("yw1 undefined where cos(u1), sin(u2) or dn(u2) vanish")
    e1 = incomplete_E(u1, k)
    delta = 1.0 - (k * s1 * s2) ** 2
    y1 = -(1.0 + k * k * (s1 * s1 - 2.0) * s2 * s2) / (2.0 * k * c1 * s2 * d2)
    poly = 6.0 - 3.0 * k * k * (4.0 - s1 * s1) * s2 * s2 + 4.0 * k ** 4 * (2.0 - s1 * s1) * s2 ** 4
    num = -e1 * c1 * delta ** 3 + d1 ** 3 * s1 * (1.0 - (k * s1 * s2) ** 2 * poly)
    w1 = num / (48.0 * k ** 3 * s1 ** 3 * c1 * d1 ** 3 * s2 ** 3 * d2 ** 3)
    return y1, w1


def yw2_1(k: float, u2: float) -> tuple[float, float]:
    """(y/sqrt(z), w/sqrt(z)^3) on the oscillating-class slice u1 = pi, z > 0."""
    i1 = iota1(k)
    i2 = iota2(k)
    c2 = math.cos(u2)
    if c2 <= 1e-12:
        raise ValueError("yw2_1 requires cos(u2) > 0")
    if i1 <= 0.0:
        raise ValueError("yw2_1 requires 2E - K > 0 (k below the critical modulus)")
    y2 = math.sqrt(2.0 * i1 / (k * c2))
    w2 = (i2 + k * k * i1 * (1.0 + 3.0 * c2 * c2)) / (3.0 * (2.0 * k * i1 * c2) ** 1.5)
    return y2, w2


def yw2_2(k: float, u2: float) -> tuple[float, float]:
    """(y/sqrt(z), w/sqrt(z)^3) on the rotating-class slice u1 = pi/2, z > 0."""
    i4 = iota4(k)
    if i4 <= 0.0:
        raise ValueError("yw2_2 requires (2 - k^2)K - 2E > 0")
    s2, _c2, d2 = _sincd(k, u2)
    kp = math.sqrt(1.0 - k * k)
    y2 = -math.sqrt(i4 * d2 / kp)
    if k < 0.01:
        # the numerator cancels at the k^6 scale; series around k = 0
        # (exact to the displayed orders on the boundary slices sin(u2)
        # in {0, 1}, where the small-k regime is actually used)
        m = k * k
        ss = s2 * s2
        num = (math.pi / 2.0) * m ** 3 * (
            0.375 * (1.0 - 2.0 * ss)
            + m * (27.0 / 128.0 - 3.0 * ss / 16.0)
            + m * m * (135.0 / 1024.0 - 45.0 * ss / 512.0)
        )
    else:
        num = k ** 4 * complete_K(k) * d2 * d2 - i4 * (
            8.0 - 7.0 * k * k - k * k * (2.0 - k * k) * s2 * s2)
    w2 = num / (12.0 * math.sqrt(i4 ** 3 * kp ** 3 * d2))
    return y2, w2


def yw2_6(theta: float) -> tuple[float, float]:
    """(y/sqrt(z), w/sqrt(z)^3) for a full circle: (0, -cos(theta)/sqrt(pi))."""
    return 0.0, -math.cos(theta) / math.sqrt(math.pi)


def yw2_3(p: float) -> tuple[float, float]:
    """(y/sqrt(z), w/sqrt(z)^3) along the separatrix fixed-point curve, p > 0."""
    if p <= 0.0:
        raise ValueError("yw2_3 requires p > 0")
    ch, sh = math.cosh(p), math.sinh(p)
    b = p * ch - sh
    y2 = (2.0 * sh - p * ch) / math.sqrt(b)
    w2 = (9.0 * sh - 12.0 * p * ch + math.sinh(3.0 * p)) / (24.0 * b ** 1.5)
    return y2, w2
