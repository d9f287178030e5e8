"""Signed measures on a finite state space and their product/sum algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import InputError, ZeroWeightError

WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class SignedMeasure:
    """Ordered tuple of real weights, possibly negative, with nonzero total.

    Parameters
    ----------
    values : iterable of float
        Components ``p_1 .. p_n`` (``n >= 1``). Zeros are allowed.

    Raises
    ------
    InputError
        Empty input or a non-finite component.
    ZeroWeightError
        ``|sum(values)| <= 1e-12``.
    """

    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]):
        vals = tuple(float(v) for v in np.ravel(np.asarray(values, dtype=float)))
        if not vals:
            raise InputError("a signed measure needs at least one component")
        if not all(math.isfinite(v) for v in vals):
            raise InputError(f"non-finite component in {vals!r}")
        if abs(math.fsum(vals)) <= WEIGHT_TOL:
            raise ZeroWeightError(f"total weight of {vals!r} vanishes")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    @property
    def weight(self) -> float:
        return weight(self)

    def __mul__(self, other: "SignedMeasure") -> "SignedMeasure":
        return direct_product(self, other)

    def __or__(self, other: "SignedMeasure") -> "SignedMeasure":
        return direct_sum(self, other)

    def to_json(self) -> dict:
        return {"values": list(self.values)}


MeasureLike = Union[SignedMeasure, Sequence[float], np.ndarray]


def as_measure(p: MeasureLike) -> SignedMeasure:
    return p if isinstance(p, SignedMeasure) else SignedMeasure(p)


def weight(p: MeasureLike) -> float:
    """Total weight ``sum(p_i)``, accumulated with ``math.fsum``."""
    return math.fsum(as_measure(p).values)


def direct_product(p: MeasureLike, q: MeasureLike) -> SignedMeasure:
    """Direct product ``(p_1 q_1, ..., p_1 q_n, ..., p_m q_n)``."""
    a, b = as_measure(p).as_array(), as_measure(q).as_array()
    return SignedMeasure(np.outer(a, b).ravel())


def direct_sum(p: MeasureLike, q: MeasureLike) -> SignedMeasure:
    """Concatenation ``(p_1, ..., p_m, q_1, ..., q_n)``.

    Raises ZeroWeightError if the combined weight vanishes.
    """
    return SignedMeasure(as_measure(p).values + as_measure(q).values)


def decreasing_rearrangement(p: MeasureLike) -> SignedMeasure:
    return SignedMeasure(sorted(as_measure(p).values, reverse=True))


def has_negative(p: MeasureLike) -> bool:
    return any(v < 0 for v in as_measure(p).values)


def has_opposite_sign(p: MeasureLike) -> bool:
    """True iff some component has the sign opposite to the total weight.

    This, not ``has_negative``, is what makes ``sum|p_i| > |sum p_i|``: an
    all-negative measure is a mirrored non-negative one.
    """
    m = as_measure(p)
    w = weight(m)
    return any(v * w < 0 for v in m.values)


def total_variation(p: MeasureLike) -> float:
    """``sum |p_i|``; exceeds ``|w(P)|`` exactly when signs are mixed."""
    return math.fsum(abs(v) for v in as_measure(p).values)
