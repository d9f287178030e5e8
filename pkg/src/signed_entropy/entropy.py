"""Entropy functionals on signed measures (all values in bits).

``signed_renyi`` is the characterized family. The Shannon-type and
renormalized forms are kept for comparison, and the classical forms only
accept non-negative input.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import BadAlphaError, InputError, NegativeComponentError
from .measure import MeasureLike, as_measure, total_variation, weight

ALPHA_GUARD = 1e-9

KINDS = (
    "signed-renyi",
    "signed-shannon",
    "renormalized",
    "classical-renyi",
    "classical-shannon",
)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise BadAlphaError(f"alpha must be positive, got {alpha}")
    if abs(alpha - 1.0) <= ALPHA_GUARD:
        raise BadAlphaError(f"alpha = {alpha} is inside the alpha = 1 guard band")
    return alpha


def power_sum(p: MeasureLike, alpha: float) -> float:
    """``sum |p_i|**alpha`` with compensated summation; ``|0|**alpha = 0``."""
    a = np.abs(as_measure(p).as_array())
    return math.fsum(a ** alpha)


def signed_renyi(p: MeasureLike, alpha: float) -> float:
    """Signed Renyi alpha-entropy ``-1/(alpha-1) log2(sum|p_i|^alpha / |sum p_i|)``.

    Parameters
    ----------
    p : SignedMeasure or sequence of float
    alpha : float
        Order, ``alpha > 0`` and ``|alpha - 1| > 1e-9``.

    Returns
    -------
    float
        Entropy in bits. Negative values certify a negative component
        (for some ``alpha > 1``).

    Examples
    --------
    >>> round(signed_renyi([2, -1], 2), 4)
    -2.3219
    >>> signed_renyi([0.5], 3)
    1.0
    """
    alpha = check_alpha(alpha)
    return _scaled_renyi(as_measure(p).as_array(), alpha)


def _scaled_renyi(a: np.ndarray, alpha: float) -> float:
    # Factor out m = max|p_i|: H = -log2 m - [log2 sum r^alpha - log2|sum p/m|] / (alpha - 1)
    # with r = |p|/m. Singletons then give exactly -log2|p|, and large products
    # cannot overflow.
    m = float(np.max(np.abs(a)))
    r = np.abs(a) / m
    log_ratio = math.log2(math.fsum(r ** alpha)) - math.log2(abs(math.fsum(a / m)))
    return -math.log2(m) - log_ratio / (alpha - 1.0)


def _xlog2x_sum(a: np.ndarray) -> float:
    nz = a[a > 0]
    return math.fsum(nz * np.log2(nz))


def signed_shannon(p: MeasureLike) -> float:
    """``-sum |p_i| log2 |p_i| / |sum p_i|`` with ``0 log 0 = 0``. Not extensive."""
    m = as_measure(p)
    return -_xlog2x_sum(np.abs(m.as_array())) / abs(weight(m))


def renormalized_entropy(p: MeasureLike) -> float:
    """``-log2(sum|p_i| / |sum p_i|)``: zero for non-negative measures, negative otherwise."""
    m = as_measure(p)
    return -math.log2(total_variation(m) / abs(weight(m)))


def _require_nonnegative(m) -> None:
    if any(v < 0 for v in m.values):
        raise NegativeComponentError(f"classical entropy needs p_i >= 0, got {m.values!r}")


def classical_renyi(p: MeasureLike, alpha: float) -> float:
    alpha = check_alpha(alpha)
    m = as_measure(p)
    _require_nonnegative(m)
    return _scaled_renyi(m.as_array(), alpha)


def classical_shannon(p: MeasureLike) -> float:
    m = as_measure(p)
    _require_nonnegative(m)
    a = m.as_array()
    return -_xlog2x_sum(a) / math.fsum(a)


def signed_renyi_gradient(p: MeasureLike, alpha: float) -> np.ndarray:
    """Partial derivatives of ``signed_renyi`` with respect to each ``p_j``.

    Defined for ``alpha > 1`` only, where ``|p|^(alpha-1) sign(p)`` is
    continuous; a zero component contributes nothing to the first term.
    """
    alpha = check_alpha(alpha)
    if alpha <= 1.0:
        raise BadAlphaError(f"gradient requires alpha > 1, got {alpha}")
    m = as_measure(p)
    a = m.as_array()
    w = weight(m)
    first = alpha * np.abs(a) ** (alpha - 1.0) * np.sign(a) / power_sum(m, alpha)
    second = math.copysign(1.0, w) / abs(w)
    return -(first - second) / ((alpha - 1.0) * math.log(2.0))


def entropy_function(kind: str, alpha: float | None = None) -> Callable[[MeasureLike], float]:
    """Return a one-argument entropy for ``kind`` (one of ``KINDS``)."""
    if kind == "signed-renyi":
        check_alpha(alpha if alpha is not None else float("nan"))
        return lambda p: signed_renyi(p, alpha)
    if kind == "classical-renyi":
        check_alpha(alpha if alpha is not None else float("nan"))
        return lambda p: classical_renyi(p, alpha)
    if kind == "signed-shannon":
        return signed_shannon
    if kind == "renormalized":
        return renormalized_entropy
    if kind == "classical-shannon":
        return classical_shannon
    raise InputError(f"unknown entropy kind {kind!r}; expected one of {KINDS}")
