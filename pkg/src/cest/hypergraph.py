"""Uniform hypergraphs stored as an m-by-k matrix of vertex indices.

Rows are edges, entries are 0-based vertex indices. Every edge is kept
sorted ascending so that equality and duplicate detection reduce to row
comparisons. Files on disk use 1-based indices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateEdge,
    DuplicateVertexInEdge,
    HypergraphError,
    IndexOutOfRange,
    IsolatedVertex,
    OddOrder,
    ParseError,
)

__all__ = [
    "Hypergraph",
    "SimpleGraph",
    "validate_and_build",
    "gen_squid",
    "gen_sunflower",
    "gen_grid",
    "gen_blowup",
    "gen_petersen",
    "gen_icosahedron",
    "read_hypergraph",
    "write_hypergraph",
    "parse_hypergraph",
    "format_hypergraph",
]


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """An immutable k-uniform hypergraph.

    Build instances through :func:`validate_and_build` (or a generator);
    the constructor itself does not check anything.
    """

    k: int
    n: int
    edges: np.ndarray  # (m, k) int64, rows sorted, rows in lexicographic order
    degrees: np.ndarray = field(repr=False)  # (n,) int64

    @property
    def m(self) -> int:
        return self.edges.shape[0]

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @property
    def has_isolated(self) -> bool:
        return bool(np.any(self.degrees == 0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.k == other.k
            and self.n == other.n
            and np.array_equal(self.edges, other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.k, self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SimpleGraph:
    """An ordinary graph: no self-loops, no repeated edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise HypergraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside [0, {self.n})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"edge {key} repeated")
            seen.add(key)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a


def validate_and_build(
    k: int,
    n: int,
    raw_edges: Iterable[Sequence[int]],
    allow_isolated: bool = False,
    one_based: bool = False,
) -> Hypergraph:
    """Check and canonicalize an edge list into a :class:`Hypergraph`.

    Each edge is sorted ascending and the rows are put in lexicographic
    order. With ``one_based=True`` the indices are shifted down by one first.
    """
    if k < 2:
        raise HypergraphError(f"edge cardinality k={k} must be at least 2")
    rows = [tuple(int(v) for v in e) for e in raw_edges]
    if not rows:
        raise HypergraphError("hypergraph needs at least one edge")
    edges = np.asarray(rows, dtype=np.int64)
    if edges.ndim != 2 or edges.shape[1] != k:
        raise HypergraphError(f"every edge must have exactly {k} vertices")
    if one_based:
        edges = edges - 1
    lo, hi = (0, n) if not one_based else (1, n + 1)
    bad = (edges < 0) | (edges >= n)
    if bad.any():
        r, c = np.argwhere(bad)[0]
        raise IndexOutOfRange(
            f"edge {r + 1} has vertex {rows[r][c]} outside [{lo}, {hi})"
        )
    edges = np.sort(edges, axis=1)
    rep = np.flatnonzero(np.any(edges[:, 1:] == edges[:, :-1], axis=1))
    if rep.size:
        raise DuplicateVertexInEdge(f"edge {rep[0] + 1} repeats a vertex: {rows[rep[0]]}")
    order = np.lexsort(edges.T[::-1])
    edges = edges[order]
    same = np.flatnonzero(np.all(edges[1:] == edges[:-1], axis=1))
    if same.size:
        raise DuplicateEdge(f"edge {tuple(int(v) for v in edges[same[0]])} appears twice")
    degrees = np.bincount(edges.ravel(), minlength=n).astype(np.int64)
    if not allow_isolated and np.any(degrees == 0):
        iso = int(np.flatnonzero(degrees == 0)[0])
        raise IsolatedVertex(f"vertex {iso} belongs to no edge")
    edges.setflags(write=False)
    degrees.setflags(write=False)
    return Hypergraph(k=k, n=n, edges=edges, degrees=degrees)


def _require_even(k: int) -> None:
    if k % 2:
        raise OddOrder(f"order k={k} must be even")


# ---------------------------------------------------------------- generators


def gen_squid(k: int) -> Hypergraph:
    """k-1 legs of k vertices each, plus a head through every leg's first vertex.

    Leg j occupies vertices j*k .. j*k+k-1; the head is the legs' first
    vertices together with the final vertex k*(k-1).
    """
    _require_even(k)
    if k < 4:
        raise HypergraphError("squid needs k >= 4")
    legs = [list(range(j * k, (j + 1) * k)) for j in range(k - 1)]
    head = [j * k for j in range(k - 1)] + [k * (k - 1)]
    return validate_and_build(k, k * k - k + 1, legs + [head])


def gen_sunflower(k: int, delta: int) -> Hypergraph:
    """``delta`` edges sharing only vertex 0."""
    _require_even(k)
    if k < 4:
        raise HypergraphError("sunflower needs k >= 4")
    if delta < 1:
        raise HypergraphError("delta must be >= 1")
    petals = 1 + np.arange(delta * (k - 1), dtype=np.int64).reshape(delta, k - 1)
    edges = np.hstack([np.zeros((delta, 1), dtype=np.int64), petals])
    return validate_and_build(k, (k - 1) * delta + 1, edges)


def gen_grid(s: int) -> Hypergraph:
    """Cells of a square subdivided s times, each cell's four corners an edge."""
    if s < 0:
        raise HypergraphError("subdivision order must be >= 0")
    side = 2**s
    w = side + 1
    r, c = np.meshgrid(np.arange(side), np.arange(side), indexing="ij")
    base = (r * w + c).ravel()
    edges = np.stack([base, base + 1, base + w, base + w + 1], axis=1)
    return validate_and_build(4, w * w, edges)


def gen_blowup(g: SimpleGraph, t: int) -> Hypergraph:
    """Replace every vertex v of ``g`` by the t-set {v*t, ..., v*t+t-1}."""
    if t < 1:
        raise HypergraphError("blow-up size t must be >= 1")
    edges = [
        list(range(u * t, (u + 1) * t)) + list(range(v * t, (v + 1) * t))
        for u, v in g.edges
    ]
    return validate_and_build(2 * t, g.n * t, edges, allow_isolated=True)


def gen_petersen() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph(10, tuple(outer + spokes + inner))


# vertices of the regular icosahedron, combinatorially
_ICOSA_FACES = (
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
)


def icosahedron_mesh(s: int) -> tuple[int, list[tuple[int, int, int]]]:
    """Triangle mesh of the s-times midpoint-subdivided icosahedron.

    Returns ``(n_vertices, faces)``. Midpoints are shared between the two
    faces of an edge by keying them on the sorted endpoint pair.
    """
    if s < 0:
        raise HypergraphError("subdivision order must be >= 0")
    nv = 12
    faces = list(_ICOSA_FACES)
    for _ in range(s):
        mid: dict[tuple[int, int], int] = {}

        def midpoint(a: int, b: int) -> int:
            nonlocal nv
            key = (a, b) if a < b else (b, a)
            if key not in mid:
                mid[key] = nv
                nv += 1
            return mid[key]

        refined = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            refined += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = refined
    return nv, faces


def gen_icosahedron(s: int) -> Hypergraph:
    """Each mesh triangle plus its own center vertex forms a 4-edge."""
    nv, faces = icosahedron_mesh(s)
    edges = [(a, b, c, nv + i) for i, (a, b, c) in enumerate(faces)]
    return validate_and_build(4, nv + len(faces), edges)


# ----------------------------------------------------------------------- I/O


def parse_hypergraph(text: str, allow_isolated: bool = False) -> Hypergraph:
    """Parse the ``k m n`` header + 1-based edge rows format."""
    header = None
    rows: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in body.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {body!r}", lineno) from None
        if header is None:
            if len(nums) != 3 or min(nums) < 1:
                raise ParseError("header must be three positive integers 'k m n'", lineno)
            header = nums
            continue
        if len(nums) != header[0]:
            raise ParseError(f"expected {header[0]} indices, got {len(nums)}", lineno)
        if len(rows) == header[1]:
            raise ParseError(f"more than the declared {header[1]} edges", lineno)
        if min(nums) < 1 or max(nums) > header[2]:
            raise ParseError(f"vertex index outside [1, {header[2]}]", lineno)
        rows.append(nums)
    if header is None:
        raise ParseError("missing header")
    k, m, n = header
    if len(rows) != m:
        raise ParseError(f"header declares {m} edges, found {len(rows)}")
    return validate_and_build(k, n, rows, allow_isolated=allow_isolated, one_based=True)


def format_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.k} {h.m} {h.n}"]
    lines += [" ".join(str(int(v) + 1) for v in row) for row in h.edges]
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str | os.PathLike, allow_isolated: bool = False) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read(), allow_isolated=allow_isolated)


def write_hypergraph(h: Hypergraph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_hypergraph(h))


def is_odd_bipartite(h: Hypergraph) -> bool:
    """Brute force over vertex subsets; only for tiny hypergraphs (n <= 16)."""
    if h.k % 2 or h.n > 16:
        raise HypergraphError("brute-force odd-bipartite check needs even k and n <= 16")
    for size in range(1, h.n):
        for subset in combinations(range(h.n), size):
            mask = np.zeros(h.n, dtype=bool)
            mask[list(subset)] = True
            if np.all(mask[h.edges].sum(axis=1) % 2 == 1):
                return True
    return False
