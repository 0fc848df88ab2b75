"""Independent reference values: a closed form, and two power-type baselines."""

from __future__ import annotations

import numpy as np

from .errors import BracketFailure, HypergraphError, NoConvergence, NotNonnegative, OddOrder
from .hypergraph import Hypergraph
from .merit import Direction, Merit
from .solver import SolveResult, SolverConfig, Status, sample_unit
from .tensor_ops import EigKind, TensorSelector, tensor_apply


def sunflower_lambda_star(k: int, delta: int, rtol: float = 1e-14) -> float:
    """Largest Laplacian H-eigenvalue of a k-uniform sunflower of degree ``delta``.

    It is the root in (delta, delta + 1] of (1 - lam)^{k-1} (lam - delta) + delta.
    Bisection runs on the offset t = lam - delta so that tiny offsets at
    large delta keep their relative precision.
    """
    if k % 2:
        raise OddOrder(f"order k={k} must be even")
    if k < 4 or delta < 1:
        raise HypergraphError("need even k >= 4 and delta >= 1")

    def phi(t: float) -> float:
        return (1.0 - delta - t) ** (k - 1) * t + delta

    lo, hi = 0.0, 1.0
    f_lo, f_hi = phi(lo), phi(hi)
    if f_hi == 0.0:
        return float(delta + hi)
    if not (f_lo > 0.0 > f_hi):
        raise BracketFailure(f"no sign change on [{delta}, {delta + 1}]: {f_lo}, {f_hi}")
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if phi(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * (delta + lo) and hi - lo <= rtol * lo:
            break
    return float(delta + 0.5 * (lo + hi))


def ng_qi_zhou(
    h: Hypergraph,
    sel: TensorSelector = TensorSelector.ADJACENCY,
    tol: float = 1e-12,
    max_iter: int = 100_000,
    shift: float = 1.0,
) -> tuple[float, np.ndarray]:
    """Largest H-eigenvalue of a nonnegative hypergraph tensor (A or Q).

    Power iteration x <- (T x^{k-1})^{[1/(k-1)]} on the shifted tensor
    T + shift*I, which is primitive whenever T is weakly irreducible
    (connected hypergraph). The ratios (T x^{k-1})_i / x_i^{k-1} bracket the
    eigenvalue from below and above; iteration stops once the bracket is
    narrower than ``tol``.
    """
    if sel is TensorSelector.LAPLACIAN:
        raise NotNonnegative("the Laplacian tensor has negative entries")
    if shift < 0:
        raise ValueError("shift must be >= 0")
    k = h.k
    x = np.full(h.n, h.n ** (-1.0 / k))
    for _ in range(max_iter):
        xk1 = x ** (k - 1)
        y = tensor_apply(h, sel, x).vec + shift * xk1
        ratios = y / xk1
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo < tol:
            return 0.5 * (lo + hi) - shift, x
        x = y ** (1.0 / (k - 1))
        x /= np.linalg.norm(x, ord=k)
        if not np.all(x > 0):
            raise NoConvergence("iterate lost positivity; is the hypergraph connected?")
    raise NoConvergence(f"ratio bracket still [{lo}, {hi}] after {max_iter} iterations")


def shifted_power_method(
    h: Hypergraph,
    sel: TensorSelector,
    kind: EigKind,
    direction: Direction,
    config: SolverConfig = SolverConfig(max_iter=50_000),
    x0=None,
    shift: float | None = None,
    rng: np.random.Generator | None = None,
) -> SolveResult:
    """Shifted power iteration x <- normalize(shift * x - g(x)) on the sphere.

    ``g`` is the gradient of the (signed) quotient, so a large shift is a
    short step. With ``shift=None`` the shift adapts: it doubles until the
    step lowers f and relaxes by a factor 1.5 after each accepted step,
    which keeps the iteration monotone. Stopping tests match :func:`solve`;
    hitting ``config.max_iter`` raises :class:`NoConvergence`.
    """
    if h.k % 2:
        raise OddOrder(f"order k={h.k} must be even")
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    if x0 is None:
        x0 = sample_unit(rng, h.n)
    scale = config.tol_scale(h.n)
    merit = Merit(h, sel, kind, direction)
    pt = merit(x0)
    trace = [pt.f]
    alpha = shift if shift is not None else max(1.0, float(np.linalg.norm(pt.g)))
    it = 0
    while float(np.max(np.abs(pt.g))) >= config.grad_tol * scale:
        if it >= config.max_iter:
            raise NoConvergence(f"shifted power method: no convergence in {config.max_iter} iterations")
        it += 1
        while True:
            new = merit(alpha * pt.x - pt.g)
            dx = float(np.max(np.abs(new.x - pt.x)))
            if shift is not None or new.f < pt.f or dx < config.step_tol * scale:
                break
            alpha *= 2.0
        df = abs(new.f - pt.f) / (1.0 + abs(pt.f))
        if new.f > pt.f:
            # noise floor: the step is below step_tol and still not downhill
            status = Status.STAGNATION_CONVERGED
            break
        pt = new
        trace.append(pt.f)
        if shift is None:
            alpha /= 1.5
        if dx < config.step_tol * scale and df < config.fval_tol * scale:
            status = Status.STAGNATION_CONVERGED
            break
    else:
        status = Status.GRAD_CONVERGED
    return SolveResult(
        lam=pt.lam,
        x=pt.x,
        status=status,
        iters=it,
        f_trace=trace,
        residual_inf=pt.residual_inf(),
        grad_inf=float(np.max(np.abs(pt.g))),
        nevals=merit.nevals,
    )
