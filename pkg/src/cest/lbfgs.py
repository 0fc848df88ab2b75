"""Limited-memory BFGS directions via the two-loop recursion."""

from __future__ import annotations

import enum
from collections import deque

import numpy as np

from .errors import DimensionMismatch


class GammaPolicy(enum.Enum):
    BB1 = "bb1"
    BB2 = "bb2"
    DAI = "dai"
    RANDOM_MIX = "mix"


_FIXED = (GammaPolicy.BB1, GammaPolicy.BB2, GammaPolicy.DAI)


class LbfgsHistory:
    """Ring buffer of the last ``capacity`` (s, y, rho) triples.

    A pair whose curvature y's falls below ``kappa`` is stored with rho = 0
    and is inert in the recursion, but still takes up a slot. The scaling
    gamma always looks at the most recent pair, so it is tracked separately
    and works even with ``capacity=0`` (plain Barzilai-Borwein).
    """

    def __init__(
        self,
        capacity: int = 5,
        kappa: float = 1e-10,
        policy: GammaPolicy = GammaPolicy.RANDOM_MIX,
        rng: np.random.Generator | None = None,
    ):
        if capacity < 0:
            raise ValueError("capacity must be >= 0")
        if not 0.0 < kappa < 1.0:
            raise ValueError("kappa must lie in (0, 1)")
        self.capacity = capacity
        self.kappa = kappa
        self.policy = policy
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.pairs: deque[tuple[np.ndarray, np.ndarray, float]] = deque(maxlen=capacity)
        self._last: tuple[np.ndarray, np.ndarray, float] | None = None

    def __len__(self) -> int:
        return len(self.pairs)

    def clear(self) -> None:
        self.pairs.clear()
        self._last = None

    def push_pair(self, s, y) -> float:
        """Store a step / gradient-change pair and return its rho."""
        s = np.asarray(s, dtype=float)
        y = np.asarray(y, dtype=float)
        if s.shape != y.shape or s.ndim != 1:
            raise DimensionMismatch(f"s{s.shape} and y{y.shape} must be equal-length vectors")
        sy = float(np.dot(y, s))
        rho = 1.0 / sy if sy >= self.kappa else 0.0
        self._last = (s, y, sy)
        if self.capacity:
            self.pairs.append((s, y, rho))
        return rho

    def gamma(self) -> float:
        if self._last is None:
            return 1.0
        s, y, sy = self._last
        if sy < self.kappa:
            return 1.0
        policy = self.policy
        if policy is GammaPolicy.RANDOM_MIX:
            policy = _FIXED[int(self.rng.integers(3))]
        if policy is GammaPolicy.BB1:
            return sy / float(np.dot(y, y))
        if policy is GammaPolicy.BB2:
            return float(np.dot(s, s)) / sy
        return float(np.linalg.norm(s) / np.linalg.norm(y))

    def two_loop(self, g, gamma: float | None = None) -> np.ndarray:
        """Return p = -H g for the implicit L-BFGS inverse Hessian H."""
        if gamma is None:
            gamma = self.gamma()
        q = -np.asarray(g, dtype=float)
        alphas = []
        for s, y, rho in reversed(self.pairs):
            if rho == 0.0:
                alphas.append(0.0)
                continue
            a = rho * float(np.dot(s, q))
            q = q - a * y
            alphas.append(a)
        p = gamma * q
        for (s, y, rho), a in zip(self.pairs, reversed(alphas)):
            if rho == 0.0:
                continue
            b = rho * float(np.dot(y, p))
            p = p + (a - b) * s
        return p
