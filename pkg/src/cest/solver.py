"""Extreme H-/Z-eigenvalues of hypergraph tensors by L-BFGS on the sphere.

Each iteration evaluates f and its gradient, turns the gradient into an
L-BFGS direction, backtracks along the Cayley curve until the Armijo
condition holds, and stores the new (s, y) pair. Runs stop on a small
gradient, on stagnation of both iterate and value, or at the iteration cap.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from .cayley import LineSearchParams, backtrack
from .errors import IsolatedVertex, LineSearchFailed, OddOrder
from .hypergraph import Hypergraph
from .lbfgs import GammaPolicy, LbfgsHistory
from .merit import Direction, Merit
from .tensor_ops import EigKind, TensorSelector

ACCURACY_RTOL = 1e-8
SQRT_N_SCALING_THRESHOLD = 10**4


class Status(enum.Enum):
    GRAD_CONVERGED = "GradConverged"
    STAGNATION_CONVERGED = "StagnationConverged"
    ITER_CAP = "IterCap"
    STALLED = "Stalled"


@dataclass(frozen=True)
class SolverConfig:
    L: int = 5
    eta: float = 0.01
    beta: float = 0.5
    kappa: float = 1e-10
    grad_tol: float = 1e-6
    step_tol: float = 1e-8
    fval_tol: float = 1e-16
    max_iter: int = 5000
    scale_tols_by_sqrt_n: bool | None = None  # None: only when n > 10^4
    gamma_policy: GammaPolicy = GammaPolicy.RANDOM_MIX
    rng_seed: int = 0
    max_backtracks: int = 60

    def __post_init__(self):
        for name in ("kappa", "grad_tol", "step_tol", "fval_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.L < 0 or self.max_iter < 0:
            raise ValueError("L and max_iter must be non-negative")
        LineSearchParams(self.eta, self.beta, self.max_backtracks)

    def tol_scale(self, n: int) -> float:
        scaled = self.scale_tols_by_sqrt_n
        if scaled is None:
            scaled = n > SQRT_N_SCALING_THRESHOLD
        return math.sqrt(n) if scaled else 1.0


@dataclass
class SolveResult:
    lam: float
    x: np.ndarray
    status: Status
    iters: int
    f_trace: list[float]
    residual_inf: float
    grad_inf: float
    alphas: list[float] = field(default_factory=list)
    nevals: int = 0
    restarts: int = 0

    @property
    def converged(self) -> bool:
        return self.status in (Status.GRAD_CONVERGED, Status.STAGNATION_CONVERGED)


@dataclass
class MultiStartReport:
    runs: list[SolveResult]
    best_lambda: float
    direction: Direction
    reference: float | None = None
    accuracy_rate: float | None = None

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([r.lam for r in self.runs])

    @property
    def best_run(self) -> SolveResult:
        lams = self.lambdas
        i = int(np.argmin(lams) if self.direction is Direction.MIN else np.argmax(lams))
        return self.runs[i]


def sample_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform sample from the unit sphere in R^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    while True:
        z = rng.standard_normal(n)
        nrm = np.linalg.norm(z)
        if nrm > 0:
            return z / nrm


def accuracy_rate(lambdas, reference: float, rtol: float = ACCURACY_RTOL) -> float:
    lams = np.asarray(lambdas, dtype=float)
    hits = np.abs(lams - reference) / (1.0 + abs(reference)) <= rtol
    return float(np.count_nonzero(hits)) / lams.size


def solve(
    h: Hypergraph,
    sel: TensorSelector,
    kind: EigKind,
    direction: Direction,
    config: SolverConfig = SolverConfig(),
    x0=None,
    rng: np.random.Generator | None = None,
) -> SolveResult:
    if h.k % 2:
        raise OddOrder(f"order k={h.k} must be even")
    if kind is EigKind.H and h.has_isolated:
        raise IsolatedVertex("H-eigenvalues need every vertex in some edge")
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    if x0 is None:
        x0 = sample_unit(rng, h.n)

    scale = config.tol_scale(h.n)
    grad_tol = config.grad_tol * scale
    step_tol = config.step_tol * scale
    fval_tol = config.fval_tol * scale
    ls = LineSearchParams(config.eta, config.beta, config.max_backtracks)
    merit = Merit(h, sel, kind, direction)
    hist = LbfgsHistory(config.L, config.kappa, config.gamma_policy, rng)

    def stagnated(old, new) -> bool:
        return (
            float(np.max(np.abs(new.x - old.x))) < step_tol
            and abs(new.f - old.f) / (1.0 + abs(old.f)) < fval_tol
        )

    pt = merit(x0)
    trace = [pt.f]
    alphas: list[float] = []
    restarts = 0
    it = 0
    while True:
        if float(np.max(np.abs(pt.g))) < grad_tol:
            status = Status.GRAD_CONVERGED
            break
        if it >= config.max_iter:
            status = Status.ITER_CAP
            break
        p = hist.two_loop(pt.g)
        if not float(np.dot(p, pt.g)) < 0.0:
            # curvature information went bad numerically; fall back to steepest descent
            hist.clear()
            restarts += 1
            p = -pt.g
        try:
            alpha, new = backtrack(merit, pt.x, pt.f, pt.g, p, ls)
        except LineSearchFailed as exc:
            status = Status.STAGNATION_CONVERGED if stagnated(pt, exc.point) else Status.STALLED
            break
        it += 1
        hist.push_pair(new.x - pt.x, new.g - pt.g)
        done = stagnated(pt, new)
        pt = new
        trace.append(pt.f)
        alphas.append(alpha)
        if done:
            status = Status.STAGNATION_CONVERGED
            break

    return SolveResult(
        lam=pt.lam,
        x=pt.x,
        status=status,
        iters=it,
        f_trace=trace,
        residual_inf=pt.residual_inf(),
        grad_inf=float(np.max(np.abs(pt.g))),
        alphas=alphas,
        nevals=merit.nevals,
        restarts=restarts,
    )


def _run_one(i: int, h, sel, kind, direction, config) -> SolveResult:
    rng = np.random.default_rng(config.rng_seed + i)
    x0 = sample_unit(rng, h.n)
    return solve(h, sel, kind, direction, config, x0=x0, rng=rng)


def multi_start(
    h: Hypergraph,
    sel: TensorSelector,
    kind: EigKind,
    direction: Direction,
    config: SolverConfig = SolverConfig(),
    N: int = 100,
    reference: float | None = None,
    jobs: int = 1,
) -> MultiStartReport:
    """N independent solves; run i is seeded with ``config.rng_seed + i``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    work = partial(_run_one, h=h, sel=sel, kind=kind, direction=direction, config=config)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(work, range(N)))
    else:
        runs = [work(i) for i in range(N)]
    lams = np.array([r.lam for r in runs])
    best = float(lams.min() if direction is Direction.MIN else lams.max())
    acc = accuracy_rate(lams, reference) if reference is not None else None
    return MultiStartReport(runs, best, direction, reference, acc)


def with_overrides(config: SolverConfig, **kw) -> SolverConfig:
    return replace(config, **{k: v for k, v in kw.items() if v is not None})
