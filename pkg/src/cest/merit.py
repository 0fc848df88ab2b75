"""The Rayleigh-type quotient f(x) = T x^k / B x^k on the unit sphere."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveB, OddOrder
from .hypergraph import Hypergraph
from .tensor_ops import EigKind, TensorSelector, b_apply, tensor_apply


class Direction(enum.Enum):
    MIN = "min"
    MAX = "max"

    @property
    def sign(self) -> float:
        return 1.0 if self is Direction.MIN else -1.0


@dataclass(frozen=True)
class MeritPoint:
    x: np.ndarray
    f: float  # signed merit: +ratio for MIN, -ratio for MAX
    g: np.ndarray  # gradient of the signed merit
    t_scalar: float
    b_scalar: float
    t_vec: np.ndarray
    b_vec: np.ndarray
    sign: float = 1.0

    @property
    def lam(self) -> float:
        """The eigenvalue estimate T x^k / B x^k (never negated)."""
        return self.sign * self.f

    def residual_inf(self) -> float:
        return float(np.max(np.abs(self.t_vec - self.lam * self.b_vec)))


class Merit:
    """Evaluator for one (hypergraph, tensor, eigen kind, direction) choice.

    Calling the instance on a unit vector returns a :class:`MeritPoint`.
    """

    def __init__(self, h: Hypergraph, sel: TensorSelector, kind: EigKind, direction: Direction):
        if h.k % 2:
            raise OddOrder(f"order k={h.k} must be even")
        self.h = h
        self.sel = sel
        self.kind = kind
        self.direction = direction
        self.sign = direction.sign
        self.nevals = 0

    def __call__(self, x) -> MeritPoint:
        x = np.asarray(x, dtype=float)
        x = x / np.linalg.norm(x)
        self.nevals += 1
        k = self.h.k
        t = tensor_apply(self.h, self.sel, x)
        b = b_apply(self.kind, k, x)
        if not b.scalar > 0.0:
            raise NonPositiveB(f"B x^k = {b.scalar!r} is not positive")
        ratio = t.scalar / b.scalar
        g = (self.sign * k / b.scalar) * (t.vec - ratio * b.vec)
        return MeritPoint(x, self.sign * ratio, g, t.scalar, b.scalar, t.vec, b.vec, self.sign)


def evaluate(h: Hypergraph, sel: TensorSelector, kind: EigKind, direction: Direction, x) -> MeritPoint:
    return Merit(h, sel, kind, direction)(x)


def ratio(h: Hypergraph, sel: TensorSelector, kind: EigKind, x) -> float:
    """Unnormalized T x^k / B x^k; scale invariant for even k."""
    x = np.asarray(x, dtype=float)
    return tensor_apply(h, sel, x).scalar / b_apply(kind, h.k, x).scalar
