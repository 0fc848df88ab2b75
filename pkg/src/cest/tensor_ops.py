"""Implicit products of hypergraph tensors with vectors.

For a k-graph with edge matrix ``E`` (m x k) and a vector ``x`` these
return ``T x^{k-1}`` (a vector) and ``T x^k`` (a scalar) for the
adjacency tensor A, the degree tensor D, L = D - A and Q = D + A, without
ever forming the order-k tensor. The adjacency kernel multiplies the
leave-one-out products of each edge row into its vertices, so the cost is
O(m k) multiplications after the gather.

The dense construction at the bottom is a brute-force oracle for tests and
the ``verify`` command only.
"""

from __future__ import annotations

import enum
import math
from itertools import permutations
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, OddOrder, TooLarge
from .hypergraph import Hypergraph

DENSE_MAX_ENTRIES = 10**7


class TensorSelector(enum.Enum):
    ADJACENCY = "adj"
    LAPLACIAN = "lap"
    SIGNLESS_LAPLACIAN = "slap"

    @property
    def label(self) -> str:
        return {"adj": "A", "lap": "L", "slap": "Q"}[self.value]


class EigKind(enum.Enum):
    H = "h"
    Z = "z"


class ProductResult(NamedTuple):
    vec: np.ndarray  # T x^{k-1}
    scalar: float  # T x^k


def _check_len(h: Hypergraph, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (h.n,):
        raise DimensionMismatch(f"vector of shape {x.shape} for n={h.n}")
    return x


def adjacency_apply(h: Hypergraph, x) -> ProductResult:
    x = _check_len(h, x)
    xm = x[h.edges]
    m, k = xm.shape
    # loo[:, j] = prod_{s != j} xm[:, s] via prefix * suffix products
    pre = np.ones((m, k))
    suf = np.ones((m, k))
    np.cumprod(xm[:, :-1], axis=1, out=pre[:, 1:])
    suf[:, :-1] = np.cumprod(xm[:, :0:-1], axis=1)[:, ::-1]
    loo = pre * suf
    vec = np.bincount(h.edges.ravel(), weights=loo.ravel(), minlength=h.n)
    scalar = k * float(np.sum(pre[:, -1] * xm[:, -1]))
    return ProductResult(vec, scalar)


def degree_apply(h: Hypergraph, x) -> ProductResult:
    x = _check_len(h, x)
    vec = h.degrees * x ** (h.k - 1)
    return ProductResult(vec, float(np.dot(vec, x)))


def tensor_apply(h: Hypergraph, sel: TensorSelector, x) -> ProductResult:
    if sel is TensorSelector.ADJACENCY:
        return adjacency_apply(h, x)
    d = degree_apply(h, x)
    a = adjacency_apply(h, x)
    if sel is TensorSelector.LAPLACIAN:
        return ProductResult(d.vec - a.vec, d.scalar - a.scalar)
    return ProductResult(d.vec + a.vec, d.scalar + a.scalar)


def b_apply(kind: EigKind, k: int, x) -> ProductResult:
    """Action of the normalizing tensor: identity (H) or (x'x)^{k/2-1} x (Z)."""
    if k % 2:
        raise OddOrder(f"order k={k} must be even")
    x = np.asarray(x, dtype=float)
    if kind is EigKind.H:
        vec = x ** (k - 1)
        return ProductResult(vec, float(np.dot(vec, x)))
    t = float(np.dot(x, x))
    return ProductResult(t ** (k // 2 - 1) * x, t ** (k // 2))


# ------------------------------------------------------------- dense oracle


def dense_oracle(h: Hypergraph, sel: TensorSelector) -> np.ndarray:
    """The full order-k symmetric tensor, built entry by entry from its definition."""
    if h.n**h.k > DENSE_MAX_ENTRIES:
        raise TooLarge(f"n^k = {h.n}^{h.k} exceeds {DENSE_MAX_ENTRIES} entries")
    t = np.zeros((h.n,) * h.k)
    if sel is not TensorSelector.ADJACENCY:
        for i in range(h.n):
            t[(i,) * h.k] = h.degrees[i]
    sign = -1.0 if sel is TensorSelector.LAPLACIAN else 1.0
    w = sign / math.factorial(h.k - 1)
    for edge in h.edges:
        for idx in permutations(edge.tolist()):
            t[idx] += w
    return t


def dense_apply(t: np.ndarray, x) -> ProductResult:
    x = np.asarray(x, dtype=float)
    v = t
    for _ in range(t.ndim - 1):
        v = v @ x
    return ProductResult(v, float(v @ x))


def dense_b(kind: EigKind, k: int, n: int) -> np.ndarray:
    """Dense identity tensor I (H) or a symmetric tensor E with E x^{k-1} = (x'x)^{k/2-1} x (Z)."""
    if n**k > DENSE_MAX_ENTRIES:
        raise TooLarge(f"n^k = {n}^{k} exceeds {DENSE_MAX_ENTRIES} entries")
    if kind is EigKind.H:
        t = np.zeros((n,) * k)
        for i in range(n):
            t[(i,) * k] = 1.0
        return t
    # symmetrization of I_n (x) I_n (x) ... (k/2 copies)
    eye = np.eye(n)
    t = np.ones(())
    for _ in range(k // 2):
        t = np.multiply.outer(t, eye)
    perms = list(permutations(range(k)))
    return sum(np.transpose(t, p) for p in perms) / len(perms)


def nonzero_fraction(t: np.ndarray) -> float:
    return np.count_nonzero(t) / t.size
