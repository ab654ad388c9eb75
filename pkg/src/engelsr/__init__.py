"""Sub-Riemannian geodesics, cut locus and optimal synthesis on the Engel group."""

from .elliptic import (
    EllipticDomainError,
    K_CAP,
    am,
    complete_E,
    complete_K,
    incomplete_E,
    incomplete_F,
    jacobi,
    jacobi_eps,
)
from .group import ORIGIN, Control, Point, dilate, dynamics, reflect, scale
from .expmap import (
    ChartPoint,
    Covector,
    CovectorClass,
    classify,
    exp,
    exp_trajectory,
    from_chart,
    pendulum_flow,
    reflect_preimage,
    to_chart,
    yw1,
    yw2_1,
    yw2_2,
    yw2_3,
    yw2_6,
)
from .cutlocus import (
    G1,
    G2,
    G3,
    P0,
    Stratum,
    classify_point,
    curve_samples,
    f_z,
    iota1,
    iota2,
    iota3,
    iota4,
    iota5,
    iota6,
    k0,
    p3,
    p_z1,
    t_cut,
    u1z,
    w1_conj,
    w21_conj,
    w22_conj,
    Y0_1,
)
from .synthesis import Minimizer, SynthesisError, SynthesisResult, distance, is_optimal, minimizers

__version__ = "0.1.0"
