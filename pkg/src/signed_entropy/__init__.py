"""Signed Renyi entropy on finite signed phase spaces."""

from .analysis import (
    SweepCurve,
    WitnessResult,
    alpha_sweep,
    detect_interior_extremum,
    majorizes,
    mix,
    negativity_witness,
    random_doubly_stochastic,
)
from .entropy import (
    classical_renyi,
    classical_shannon,
    renormalized_entropy,
    signed_renyi,
    signed_renyi_gradient,
    signed_shannon,
)
from .errors import *  # noqa: F401,F403
from .measure import (
    SignedMeasure,
    decreasing_rearrangement,
    direct_product,
    direct_sum,
    has_negative,
    weight,
)

__version__ = "0.1.0"
