"""Sphere-preserving curvilinear steps and the backtracking search along them.

The step from x along p with damping alpha is the Cayley transform
Q = (I - W)(I + W)^{-1} of the skew matrix W = alpha (x p' - p x') applied
to x. Because W has rank two, Q x has a closed form in x and p that costs
a few inner products; neither W nor Q is ever formed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import LineSearchFailed
from .merit import MeritPoint


@dataclass(frozen=True)
class LineSearchParams:
    eta: float = 0.01
    beta: float = 0.5
    max_backtracks: int = 60

    def __post_init__(self):
        if not 0.0 < self.eta < 1.0:
            raise ValueError(f"eta={self.eta} must lie in (0, 1)")
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta={self.beta} must lie in (0, 1)")
        if self.max_backtracks < 0:
            raise ValueError("max_backtracks must be >= 0")


def _terms(x: np.ndarray, p: np.ndarray, alpha: float) -> tuple[float, float, float]:
    axp = alpha * float(np.dot(x, p))
    ap2 = alpha * alpha * float(np.dot(p, p))
    return axp, ap2, 1.0 + ap2 - axp * axp


def retract(x, p, alpha: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    axp, ap2, den = _terms(x, p, alpha)
    out = (((1.0 - axp) ** 2 - ap2) * x + (2.0 * alpha) * p) / den
    nrm = float(np.linalg.norm(out))
    if abs(nrm - 1.0) > 1e-14:
        out /= nrm
    return out


def step_displacement(x, p, alpha: float) -> float:
    """Euclidean length of ``retract(x, p, alpha) - x``, from inner products only."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    # |alpha p|^2 - (alpha x'p)^2 is the squared tangential part of alpha p;
    # forming it directly avoids cancellation when p is nearly parallel to x
    perp = p - float(np.dot(x, p)) * x
    t2 = alpha * alpha * float(np.dot(perp, perp))
    return 2.0 * math.sqrt(t2 / (1.0 + t2))


def backtrack(
    evaluator: Callable[[np.ndarray], MeritPoint],
    x: np.ndarray,
    f_x: float,
    g_x: np.ndarray,
    p: np.ndarray,
    params: LineSearchParams = LineSearchParams(),
) -> tuple[float, MeritPoint]:
    """Armijo backtracking: alpha = beta**l for the smallest l >= 0 that decreases f enough.

    Raises :class:`LineSearchFailed` after ``max_backtracks`` reductions; the
    exception carries the last trial ``alpha`` and ``point``.
    """
    slope = float(np.dot(p, g_x))
    if not slope < 0.0:
        raise ValueError(f"p is not a descent direction (p'g = {slope!r})")
    alpha = 1.0
    point = None
    for _ in range(params.max_backtracks + 1):
        point = evaluator(retract(x, p, alpha))
        bound = params.eta * alpha * slope
        # second test guards against f_x + bound rounding back to f_x
        if point.f <= f_x + bound and point.f - f_x <= bound:
            return alpha, point
        alpha *= params.beta
    err = LineSearchFailed(
        f"no sufficient decrease after {params.max_backtracks} backtracks (p'g = {slope:.3e})"
    )
    err.alpha = alpha / params.beta
    err.point = point
    raise err
