"""Fixed-step classical RK4 for linear autonomous systems ``y' = A y``."""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError


def step_count(t_end: float, dt: float) -> int:
    if not dt > 0:
        raise InputError(f"dt must be positive, got {dt}")
    if not t_end >= 0:
        raise InputError(f"t_end must be non-negative, got {t_end}")
    # 1e-9 slack keeps 10/0.01 at 1000 steps instead of 1001
    return int(math.ceil(t_end / dt - 1e-9))


def rk4_linear(a: np.ndarray, y0: np.ndarray, t_end: float, dt: float):
    """Integrate ``y' = a @ y`` from 0 to ``t_end``.

    The step is shrunk to ``t_end / n`` with ``n = ceil(t_end / dt)`` so the
    last sample lands exactly on ``t_end``.

    Returns
    -------
    times : ndarray, shape (n + 1,)
    states : ndarray, shape (n + 1, len(y0))
    h : float
        Step actually used.
    """
    n = step_count(t_end, dt)
    h = t_end / n if n else dt
    y = np.array(y0, dtype=float)
    states = np.empty((n + 1, y.size))
    states[0] = y
    for k in range(1, n + 1):
        k1 = a @ y
        k2 = a @ (y + 0.5 * h * k1)
        k3 = a @ (y + 0.5 * h * k2)
        k4 = a @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states[k] = y
    times = h * np.arange(n + 1)
    return times, states, h
