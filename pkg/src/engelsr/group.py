"""Engel-group state model: control dynamics, dilations, reflections.

States live in R^4 with coordinates (x, y, z, w) and the control system

    dx = u1,  dy = u2,  dz = -u1 y/2 + u2 x/2,  dw = u2 x^2 / 2,

driven from the origin by unit controls.  Two symmetry families act on
states: the dilations (x, y, z, w) -> (r x, r y, r^2 z, r^3 w), and a
discrete group of eight reflections isomorphic to Z2 x Z2 x Z2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["Point", "Control", "ORIGIN", "dynamics", "dilate", "reflect", "scale"]


@dataclass(frozen=True)
class Point:
    """Terminal state (x, y, z, w)."""

    x: float
    y: float
    z: float
    w: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.w], dtype=float)

    @staticmethod
    def from_array(a) -> "Point":
        x, y, z, w = (float(v) for v in a)
        return Point(x, y, z, w)

    def to_json_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z, "w": self.w}

    def csv_row(self) -> str:
        return ",".join(f"{v:.17g}" for v in (self.x, self.y, self.z, self.w))

    def __sub__(self, other: "Point") -> np.ndarray:
        return self.as_array() - other.as_array()


@dataclass(frozen=True)
class Control:
    """Control pair; along arclength-parametrized extremals u1^2 + u2^2 = 1."""

    u1: float
    u2: float


ORIGIN = Point(0.0, 0.0, 0.0, 0.0)


def dynamics(q: Point, u: Control) -> Point:
    """State rate of the control system at q under control u."""
    return Point(
        u.u1,
        u.u2,
        -u.u1 * q.y / 2.0 + u.u2 * q.x / 2.0,
        u.u2 * q.x * q.x / 2.0,
    )


def dilate(rho: float, q: Point) -> Point:
    """Dilation with weights (1, 1, 2, 3); the flow of the scaling field."""
    if rho <= 0.0:
        raise ValueError(f"dilation factor must be positive, got {rho!r}")
    return Point(rho * q.x, rho * q.y, rho * rho * q.z, rho ** 3 * q.w)


# Generators:
#   e1 (x, y, z, w) = ( x,  y, -z, w - xz)   fixes {z = 0}
#   e2 (x, y, z, w) = (-x,  y,  z, w - xz)   fixes {x = 0}
#   e4 (x, y, z, w) = (-x, -y,  z, -w)
# The other four are our labeling of the remaining composites; every
# downstream computation uses only e1, e2, e4.
#   e3 = e1 e2,  e5 = e1 e4,  e6 = e2 e4,  e7 = e1 e2 e4.


def _e1(q: Point) -> Point:
    return Point(q.x, q.y, -q.z, q.w - q.x * q.z)


def _e2(q: Point) -> Point:
    return Point(-q.x, q.y, q.z, q.w - q.x * q.z)


def _e4(q: Point) -> Point:
    return Point(-q.x, -q.y, q.z, -q.w)


_REFLECTIONS = {
    1: (_e1,),
    2: (_e2,),
    3: (_e2, _e1),
    4: (_e4,),
    5: (_e4, _e1),
    6: (_e4, _e2),
    7: (_e4, _e2, _e1),
}


def reflect(i: int, q: Point) -> Point:
    """Apply the i-th reflection, i in 1..7.  Each one is an involution."""
    try:
        chain = _REFLECTIONS[i]
    except KeyError:
        raise ValueError(f"reflection index must be in 1..7, got {i!r}") from None
    for f in chain:
        q = f(q)
    return q


def scale(q: Point) -> float:
    """Dilation-homogeneous size of q, degree 1: scale(dilate(r, q)) = r scale(q).

    Vanishes only at the origin.
    """
    return (q.x ** 6 + q.y ** 6 + abs(q.z) ** 3 + q.w ** 2) ** (1.0 / 6.0)
