"""Negativity witnessing, majorization, and the entropy-vs-temperature sweep."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .entropy import ALPHA_GUARD, check_alpha, signed_renyi
from .errors import (
    BadAlphaError,
    DimensionMismatchError,
    InputError,
    LengthMismatchError,
    WitnessNotFoundError,
)
from .measure import MeasureLike, SignedMeasure, as_measure, has_opposite_sign

MAJORIZATION_TOL = 1e-12
WITNESS_EPS_FLOOR = 1e-8


@dataclass(frozen=True)
class WitnessResult:
    found: bool
    alpha: Optional[float] = None
    entropy_bits: Optional[float] = None

    def to_json(self) -> dict:
        return {"found": self.found, "alpha": self.alpha, "entropy_bits": self.entropy_bits}


def negativity_witness(p: MeasureLike) -> WitnessResult:
    """Search for an order ``alpha > 1`` at which ``signed_renyi(p, alpha) < 0``.

    Tries ``alpha = 2`` first, then ``alpha = 1 + eps`` for
    ``eps = 0.5, 0.25, ...`` down to ``1e-8``.

    The search runs only when some component has the sign opposite to the
    total weight; otherwise ``found=False`` is returned directly. That covers
    non-negative measures and also all-negative ones, whose entropy equals
    that of their mirror image. For such measures a negative entropy can
    still occur when a component exceeds 1 in magnitude (``H_2((2,)) = -1``),
    so the sign test is only meaningful for sub-normalized input.

    Raises
    ------
    WitnessNotFoundError
        A negative component exists but the ratio ``sum|p|^a / |w|`` is too
        close to 1 for double precision to resolve.
    """
    m = as_measure(p)
    if not has_opposite_sign(m):
        return WitnessResult(found=False)
    eps = 1.0
    while eps >= WITNESS_EPS_FLOOR:
        h = signed_renyi(m, 1.0 + eps)
        if h < 0:
            return WitnessResult(found=True, alpha=1.0 + eps, entropy_bits=h)
        eps /= 2
    raise WitnessNotFoundError(
        f"no alpha in (1, 1 + {WITNESS_EPS_FLOOR:g}] gave negative entropy for {m.values!r}"
    )


def majorizes(q: MeasureLike, p: MeasureLike, tol: float = MAJORIZATION_TOL) -> bool:
    """True iff ``p`` is majorized by ``q``.

    Prefix sums of the decreasing rearrangement of ``p`` must not exceed
    those of ``q`` and the totals must agree, both within ``tol``.
    """
    a = np.sort(as_measure(p).as_array())[::-1]
    b = np.sort(as_measure(q).as_array())[::-1]
    if a.size != b.size:
        raise LengthMismatchError(f"lengths differ: {b.size} vs {a.size}")
    pa, pb = np.cumsum(a), np.cumsum(b)
    if abs(math.fsum(a) - math.fsum(b)) > tol:
        return False
    return bool(np.all(pa[:-1] <= pb[:-1] + tol))


def random_doubly_stochastic(n: int, seed=None) -> np.ndarray:
    """Random doubly stochastic matrix as a convex mix of ``2n`` permutation matrices."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    k = 2 * n
    weights = rng.dirichlet(np.ones(k))
    d = np.zeros((n, n))
    rows = np.arange(n)
    for wgt in weights:
        d[rows, rng.permutation(n)] += wgt
    return d


def mix(p: MeasureLike, d: np.ndarray) -> SignedMeasure:
    """Apply a doubly stochastic matrix: returns ``D @ p`` (majorized by ``p``)."""
    m = as_measure(p)
    d = np.asarray(d, dtype=float)
    if d.shape != (len(m), len(m)):
        raise DimensionMismatchError(f"matrix shape {d.shape} does not match length {len(m)}")
    return SignedMeasure(d @ m.as_array())


@dataclass(frozen=True)
class SweepCurve:
    inv_alpha: tuple[float, ...]
    entropy_bits: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.inv_alpha)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.inv_alpha, self.entropy_bits))


def alpha_sweep(p: MeasureLike, inv_alpha_grid: Sequence[float]) -> SweepCurve:
    """Evaluate ``signed_renyi(p, 1/x)`` for each ``x`` in an increasing grid of ``1/alpha``."""
    m = as_measure(p)
    grid = [float(x) for x in inv_alpha_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InputError("inverse-alpha grid must be strictly increasing")
    values = []
    for x in grid:
        if x <= 0:
            raise BadAlphaError(f"1/alpha = {x} does not map to a positive alpha")
        values.append(signed_renyi(m, check_alpha(1.0 / x)))
    return SweepCurve(tuple(grid), tuple(values))


def inv_alpha_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive grid ``start, start+step, ..., <= stop``, skipping the alpha = 1 guard band."""
    if step <= 0:
        raise InputError(f"step must be positive, got {step}")
    n = int(math.floor((stop - start) / step + 1e-9))
    grid = [round(start + k * step, 12) for k in range(n + 1)]
    return [x for x in grid if x > 0 and abs(1.0 / x - 1.0) > ALPHA_GUARD]


def detect_interior_extremum(curve: SweepCurve | Sequence[float], tol: float = 1e-12) -> Optional[int]:
    """Index of a strict interior maximum of a unimodal curve, else None.

    The values must rise strictly (by more than ``tol``) up to the returned
    index and fall strictly after it.
    """
    y = np.asarray(curve.entropy_bits if isinstance(curve, SweepCurve) else curve, dtype=float)
    if y.size < 3:
        return None
    j = int(np.argmax(y))
    if j == 0 or j == y.size - 1:
        return None
    diffs = np.diff(y)
    if np.all(diffs[:j] > tol) and np.all(diffs[j:] < -tol):
        return j
    return None
