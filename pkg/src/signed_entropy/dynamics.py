"""Master-equation evolution of signed measures and the H-theorem check.

The master equation is ``dp_i/dt = sum_j lam_ij (p_j - p_i)``, which equals
``Lam @ p`` once rows sum to zero. Rates are user data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._integrate import rk4_linear
from .entropy import entropy_function, signed_renyi_gradient
from .errors import DimensionMismatchError, InputError
from .measure import MeasureLike, SignedMeasure, as_measure

RATE_TOL = 1e-12


class TransitionRateMatrix:
    """Symmetric, zero-row-sum matrix of (possibly signed) transition rates.

    Parameters
    ----------
    rates : array_like, shape (n, n)

    Attributes
    ----------
    classical : bool
        All off-diagonal rates are non-negative.
    """

    def __init__(self, rates):
        lam = np.array(rates, dtype=float)
        if lam.ndim != 2 or lam.shape[0] != lam.shape[1] or lam.shape[0] == 0:
            raise InputError(f"rates must be a non-empty square matrix, got shape {lam.shape}")
        if not np.all(np.isfinite(lam)):
            raise InputError("rates contain non-finite entries")
        if np.max(np.abs(lam - lam.T)) > RATE_TOL:
            raise InputError("rates must be symmetric (micro-reversibility)")
        if np.max(np.abs(lam.sum(axis=1))) > RATE_TOL:
            raise InputError("each row of the rate matrix must sum to zero")
        lam.setflags(write=False)
        self.rates = lam

    @classmethod
    def from_off_diagonal(cls, off) -> "TransitionRateMatrix":
        """Build from a symmetric matrix whose diagonal is ignored and refilled."""
        off = np.array(off, dtype=float)
        np.fill_diagonal(off, 0.0)
        off = 0.5 * (off + off.T)
        np.fill_diagonal(off, -off.sum(axis=1))
        return cls(off)

    @property
    def n(self) -> int:
        return self.rates.shape[0]

    @property
    def classical(self) -> bool:
        off = self.rates[~np.eye(self.n, dtype=bool)]
        return bool(np.all(off >= 0))

    def __repr__(self) -> str:
        return f"TransitionRateMatrix(n={self.n}, classical={self.classical})"


def _rates(lam) -> TransitionRateMatrix:
    return lam if isinstance(lam, TransitionRateMatrix) else TransitionRateMatrix(lam)


def _check_dims(p: SignedMeasure, lam: TransitionRateMatrix) -> None:
    if len(p) != lam.n:
        raise DimensionMismatchError(f"measure has {len(p)} components, rates are {lam.n}x{lam.n}")


def master_rhs(p: MeasureLike, lam) -> np.ndarray:
    """Right-hand side ``sum_j lam_ij (p_j - p_i)`` written out literally."""
    lam = _rates(lam)
    a = as_measure(p).as_array()
    return np.array([math.fsum(lam.rates[i] * (a - a[i])) for i in range(a.size)])


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    dt: float

    def __len__(self) -> int:
        return len(self.times)

    def measures(self) -> list[SignedMeasure]:
        return [SignedMeasure(s) for s in self.states]

    @property
    def final(self) -> SignedMeasure:
        return SignedMeasure(self.states[-1])


def evolve(p0: MeasureLike, lam, t_end: float, dt: float = 0.01) -> Trajectory:
    """Fixed-step RK4 solution of the master equation from ``p0``."""
    p0, lam = as_measure(p0), _rates(lam)
    _check_dims(p0, lam)
    times, states, h = rk4_linear(lam.rates, p0.as_array(), t_end, dt)
    return Trajectory(times, states, h)


def exact_state(p0: MeasureLike, lam, t: float) -> SignedMeasure:
    """Closed-form ``expm(Lam t) @ p0`` via the eigendecomposition of symmetric ``Lam``."""
    p0, lam = as_measure(p0), _rates(lam)
    _check_dims(p0, lam)
    if t == 0:
        return p0
    mu, v = np.linalg.eigh(lam.rates)
    return SignedMeasure(v @ (np.exp(mu * t) * (v.T @ p0.as_array())))


def entropy_trajectory(traj: Trajectory, kind: str = "signed-renyi", alpha: float | None = None):
    """List of ``(time, bits)`` for the chosen entropy along a trajectory."""
    f = entropy_function(kind, alpha)
    return [(float(t), f(s)) for t, s in zip(traj.times, traj.states)]


@dataclass(frozen=True)
class MonotonicityReport:
    monotone: bool
    first_violation: Optional[float] = None
    worst_drop: float = 0.0


def monotonicity_report(series: Sequence[tuple[float, float]], tol: float = 1e-9) -> MonotonicityReport:
    """Check that every forward difference of the series is ``>= -tol``.

    ``first_violation`` is the time at the start of the first offending step.
    """
    if len(series) == 0:
        raise InputError("series is empty")
    t = np.array([s[0] for s in series], dtype=float)
    y = np.array([s[1] for s in series], dtype=float)
    d = np.diff(y)
    bad = np.nonzero(d < -tol)[0]
    worst = float(min(d.min(), 0.0)) if d.size else 0.0
    if bad.size:
        return MonotonicityReport(False, float(t[bad[0]]), worst)
    return MonotonicityReport(True, None, worst)


def entropy_rate(p: MeasureLike, lam, alpha: float) -> float:
    """Analytic ``dH/dt``: gradient of signed Renyi entropy dotted with the master-equation flow."""
    return float(np.dot(signed_renyi_gradient(p, alpha), master_rhs(p, lam)))


def random_classical_rates(n: int, rng: np.random.Generator, scale: float = 1.0) -> TransitionRateMatrix:
    """Random symmetric rate matrix with non-negative off-diagonal entries."""
    off = rng.uniform(0.0, scale, size=(n, n))
    return TransitionRateMatrix.from_off_diagonal(off)


FIGURE1_RATES = ((-1.0, 0.5, 0.5), (0.5, -1.0, 0.5), (0.5, 0.5, -1.0))
FIGURE1_INITIAL = (-1 / 7, 3 / 7, 5 / 7)
