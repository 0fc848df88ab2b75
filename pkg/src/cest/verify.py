"""Oracle checks behind ``cest verify``.

Each check compares a fast path against a brute-force construction that
shares no code with it: dense order-k tensors, finite differences, the
explicitly assembled BFGS matrix, the explicit Cayley matrix, and a dense
symmetric matrix eigensolver for k = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tensor_ops
from .cayley import retract, step_displacement
from .hypergraph import (
    Hypergraph,
    SimpleGraph,
    gen_blowup,
    gen_grid,
    gen_petersen,
    gen_squid,
    gen_sunflower,
    validate_and_build,
)
from .lbfgs import GammaPolicy, LbfgsHistory
from .merit import Direction, Merit, ratio
from .solver import SolverConfig, multi_start, sample_unit
from .tensor_ops import EigKind, TensorSelector


@dataclass
class CheckResult:
    name: str
    worst: float
    tol: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.worst <= self.tol)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{mark}] {self.name:<30} worst={self.worst:.3e}  tol={self.tol:.1e}{extra}"


def small_instances(max_n: int = 13) -> list[tuple[str, Hypergraph]]:
    """Generator instances small enough for dense order-k tensors."""
    triangle = SimpleGraph(3, ((0, 1), (1, 2), (0, 2)))
    path = SimpleGraph(4, ((0, 1), (1, 2), (2, 3)))
    cands = [
        ("sunflower(4,1)", lambda: gen_sunflower(4, 1)),
        ("sunflower(4,2)", lambda: gen_sunflower(4, 2)),
        ("sunflower(4,3)", lambda: gen_sunflower(4, 3)),
        ("sunflower(4,4)", lambda: gen_sunflower(4, 4)),
        ("sunflower(6,2)", lambda: gen_sunflower(6, 2)),
        ("squid(4)", lambda: gen_squid(4)),
        ("grid(0)", lambda: gen_grid(0)),
        ("grid(1)", lambda: gen_grid(1)),
        ("blowup(triangle,2)", lambda: gen_blowup(triangle, 2)),
        ("blowup(path,2)", lambda: gen_blowup(path, 2)),
        ("blowup(triangle,3)", lambda: gen_blowup(triangle, 3)),
        ("petersen-2graph", lambda: gen_blowup(gen_petersen(), 1)),
    ]
    out = []
    for name, make in cands:
        h = make()
        if h.n <= max_n and h.n**h.k <= tensor_ops.DENSE_MAX_ENTRIES:
            out.append((name, h))
    return out


def _rel_err(fast: np.ndarray, ref: np.ndarray) -> float:
    return float(np.max(np.abs(fast - ref) / (1.0 + np.abs(ref))))


def check_products_vs_dense(sel: TensorSelector, max_n: int, rng, trials: int = 20) -> CheckResult:
    worst, where = 0.0, ""
    for name, h in small_instances(max_n):
        dense = tensor_ops.dense_oracle(h, sel)
        for _ in range(trials):
            x = rng.standard_normal(h.n)
            fast = tensor_ops.tensor_apply(h, sel, x)
            ref = tensor_ops.dense_apply(dense, x)
            err = max(_rel_err(fast.vec, ref.vec), _rel_err(np.array([fast.scalar]), np.array([ref.scalar])))
            if err > worst:
                worst, where = err, name
    names = {
        TensorSelector.ADJACENCY: "adjacency-vs-dense",
        TensorSelector.LAPLACIAN: "laplacian-vs-dense",
        TensorSelector.SIGNLESS_LAPLACIAN: "signless-laplacian-vs-dense",
    }
    return CheckResult(names[sel], worst, 1e-12, where)


def check_b_vs_dense(rng, trials: int = 20) -> CheckResult:
    worst = 0.0
    for k in (2, 4):
        for n in (2, 3, 5):
            for kind in EigKind:
                dense = tensor_ops.dense_b(kind, k, n)
                for _ in range(trials):
                    x = rng.standard_normal(n)
                    fast = tensor_ops.b_apply(kind, k, x)
                    ref = tensor_ops.dense_apply(dense, x)
                    worst = max(worst, _rel_err(fast.vec, ref.vec), abs(fast.scalar - ref.scalar) / (1 + abs(ref.scalar)))
    return CheckResult("b-tensor-vs-dense", worst, 1e-12)


def check_scalar_identity(max_n: int, rng, trials: int = 20) -> CheckResult:
    worst = 0.0
    for _, h in small_instances(max_n) + [("squid(6)", gen_squid(6)), ("grid(3)", gen_grid(3))]:
        for sel in TensorSelector:
            for _ in range(trials):
                x = rng.standard_normal(h.n)
                r = tensor_ops.tensor_apply(h, sel, x)
                dot = float(x @ r.vec)
                worst = max(worst, abs(r.scalar - dot) / (1.0 + abs(dot)))
    return CheckResult("scalar-identity", worst, 1e-12)


def fd_gradient(fun: Callable[[np.ndarray], float], x: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """Central differences of ``fun`` along each coordinate axis."""
    g = np.empty_like(x)
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = step
        g[j] = (fun(x + e) - fun(x - e)) / (2 * step)
    return g


def check_gradient_fd(rng, trials: int = 3) -> CheckResult:
    worst, where = 0.0, ""
    hs = [("sunflower(4,3)", gen_sunflower(4, 3)), ("squid(4)", gen_squid(4)),
          ("grid(2)", gen_grid(2)), ("sunflower(4,10)", gen_sunflower(4, 10)),
          ("blowup(petersen,2)", gen_blowup(gen_petersen(), 2))]
    for name, h in hs:
        for sel in TensorSelector:
            for kind in EigKind:
                for direction in Direction:
                    merit = Merit(h, sel, kind, direction)
                    for _ in range(trials):
                        x = sample_unit(rng, h.n)
                        pt = merit(x)
                        fd = direction.sign * fd_gradient(lambda z: ratio(h, sel, kind, z), pt.x)
                        fd -= pt.x * float(pt.x @ fd)
                        err = float(np.max(np.abs(fd - pt.g)))
                        if err > worst:
                            worst, where = err, f"{name} {sel.label} {kind.value} {direction.value}"
    return CheckResult("gradient-vs-fd", worst, 1e-6, where)


def dense_bfgs(pairs, gamma: float, n: int) -> np.ndarray:
    """H = gamma I updated oldest-first by H <- V'HV + rho s s', V = I - rho y s'."""
    h = gamma * np.eye(n)
    for s, y, rho in pairs:
        v = np.eye(n) - rho * np.outer(y, s)
        h = v.T @ h @ v + rho * np.outer(s, s)
    return h


def check_two_loop(rng, trials: int = 200) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 11))
        cap = int(rng.integers(1, 4))
        hist = LbfgsHistory(cap, 1e-10, GammaPolicy.BB1, rng)
        for _ in range(int(rng.integers(0, 6))):
            s = rng.standard_normal(n)
            y = s + 0.5 * rng.standard_normal(n)
            if rng.random() < 0.2:
                y = -y  # negative curvature: must be skipped
            hist.push_pair(s, y)
        g = rng.standard_normal(n)
        gamma = float(rng.uniform(0.1, 3.0))
        p = hist.two_loop(g, gamma)
        ref = -dense_bfgs(list(hist.pairs), gamma, n) @ g
        worst = max(worst, float(np.max(np.abs(p - ref)) / (1.0 + np.max(np.abs(ref)))))
    return CheckResult("two-loop-vs-dense-bfgs", worst, 1e-12)


def explicit_cayley(x: np.ndarray, p: np.ndarray, alpha: float) -> np.ndarray:
    w = alpha * (np.outer(x, p) - np.outer(p, x))
    eye = np.eye(x.size)
    return (eye - w) @ np.linalg.solve(eye + w, x)


def check_cayley(rng, trials: int = 200) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 51))
        x = sample_unit(rng, n)
        p = rng.standard_normal(n) * rng.uniform(0.01, 3.0)
        alpha = float(rng.uniform(0.0, 2.0))
        worst = max(worst, float(np.max(np.abs(retract(x, p, alpha) - explicit_cayley(x, p, alpha)))))
    return CheckResult("cayley-vs-explicit", worst, 1e-12)


def check_displacement(rng, trials: int = 200) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 51))
        x = sample_unit(rng, n)
        p = rng.standard_normal(n)
        alpha = float(rng.uniform(0.0, 2.0))
        direct = float(np.linalg.norm(retract(x, p, alpha) - x))
        worst = max(worst, abs(step_displacement(x, p, alpha) - direct))
    return CheckResult("displacement-vs-norm", worst, 1e-12)


def check_sphere(rng, steps: int = 10_000, n: int = 20) -> CheckResult:
    x = sample_unit(rng, n)
    worst = 0.0
    for _ in range(steps):
        p = rng.standard_normal(n) * 10.0 ** rng.uniform(-6, 1)
        x = retract(x, p, float(rng.uniform(0.0, 1.0)))
        worst = max(worst, abs(float(np.linalg.norm(x)) - 1.0))
    return CheckResult("sphere-preservation", worst, 1e-12, f"{steps} chained retractions")


def check_k2_eigensolver(starts: int = 20, seed: int = 0) -> CheckResult:
    g = gen_petersen()
    h = validate_and_build(2, g.n, g.edges)
    a = g.adjacency_matrix()
    d = np.diag(g.degrees().astype(float))
    mats = {TensorSelector.ADJACENCY: a, TensorSelector.LAPLACIAN: d - a,
            TensorSelector.SIGNLESS_LAPLACIAN: d + a}
    cfg = SolverConfig(rng_seed=seed)
    worst, where = 0.0, ""
    for sel, mat in mats.items():
        ev = np.linalg.eigvalsh(mat)
        for direction, ref in ((Direction.MIN, ev[0]), (Direction.MAX, ev[-1])):
            rep = multi_start(h, sel, EigKind.H, direction, cfg, N=starts)
            err = abs(rep.best_lambda - ref)
            if err > worst:
                worst, where = err, f"{sel.label} {direction.value}"
    return CheckResult("k2-matrix-eigensolver", worst, 1e-8, where)


def run_all(max_n: int = 13, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    checks = [check_products_vs_dense(sel, max_n, rng) for sel in TensorSelector]
    checks += [
        check_b_vs_dense(rng),
        check_scalar_identity(max_n, rng),
        check_gradient_fd(rng),
        check_two_loop(rng),
        check_cayley(rng),
        check_displacement(rng),
        check_sphere(rng),
        check_k2_eigensolver(seed=seed),
    ]
    return checks


def first_failure(results: list[CheckResult]) -> CheckResult | None:
    return next((r for r in results if not r.passed), None)


__all__ = ["CheckResult", "run_all", "first_failure", "small_instances", "fd_gradient",
           "dense_bfgs", "explicit_cayley"]
