"""Shared fixtures and independent numerical oracles.

The oracles here deliberately avoid the code paths they check: plain
fixed-step RK4 written out by hand for the flows, and adaptive quadrature
of the defining integrals for the special functions.
"""

import math

import numpy as np
import pytest


def rk4_pendulum(theta, c, alpha, t, n=20000):
    """Fine-step RK4 of the pendulum, independent of the package integrators."""
    h = t / n
    y = (theta, c)

    def f(st):
        return (st[1], -alpha * math.sin(st[0]))

    for _ in range(n):
        k1 = f(y)
        k2 = f((y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]))
        k3 = f((y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]))
        k4 = f((y[0] + h * k3[0], y[1] + h * k3[1]))
        y = (
            y[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
            y[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
        )
    return y


def rk4_geodesic(theta, c, alpha, t, n=20000):
    """Fine-step RK4 of the full system; returns (x, y, z, w)."""
    h = t / n
    st = [theta, c, 0.0, 0.0, 0.0, 0.0]

    def f(s):
        th, cc, x, y, _z, _w = s
        si, co = math.sin(th), math.cos(th)
        return (cc, -alpha * si, -si, co, 0.5 * (si * y + co * x), 0.5 * co * x * x)

    for _ in range(n):
        k1 = f(st)
        s2 = [st[i] + 0.5 * h * k1[i] for i in range(6)]
        k2 = f(s2)
        s3 = [st[i] + 0.5 * h * k2[i] for i in range(6)]
        k3 = f(s3)
        s4 = [st[i] + h * k3[i] for i in range(6)]
        k4 = f(s4)
        st = [st[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) for i in range(6)]
    return tuple(st[2:])


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
