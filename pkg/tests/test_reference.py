import numpy as np
import pytest

from cest.errors import BracketFailure, HypergraphError, NoConvergence, NotNonnegative, OddOrder
from cest.hypergraph import gen_grid, gen_squid, gen_sunflower
from cest.merit import Direction
from cest.reference import ng_qi_zhou, shifted_power_method, sunflower_lambda_star
from cest.solver import SolverConfig, Status, multi_start
from cest.tensor_ops import EigKind, TensorSelector, dense_apply, dense_oracle

ADJ, LAP, SLAP = TensorSelector.ADJACENCY, TensorSelector.LAPLACIAN, TensorSelector.SIGNLESS_LAPLACIAN


@pytest.mark.parametrize(
    "k,delta,expected",
    [(4, 10, 10.0137), (4, 100, 100.0001), (6, 10, 10.0002), (4, 1000, 1000.0000), (4, 1, 2.0)],
)
def test_sunflower_values(k, delta, expected):
    assert round(sunflower_lambda_star(k, delta), 4) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("k,delta", [(4, 2), (4, 10), (4, 1000), (6, 3), (6, 100), (8, 5)])
def test_sunflower_root_solves_equation(k, delta):
    lam = sunflower_lambda_star(k, delta)
    assert delta < lam <= delta + 1
    t = lam - delta
    # backward error: residual over the dominant slope term, relative to lam
    resid = (1 - lam) ** (k - 1) * t + delta
    assert abs(resid) / abs(1 - lam) ** (k - 1) <= 1e-13 * lam


def test_sunflower_root_agrees_with_solver():
    h = gen_sunflower(4, 10)
    rep = multi_start(h, LAP, EigKind.H, Direction.MAX, SolverConfig(rng_seed=0), N=20)
    ref = sunflower_lambda_star(4, 10)
    assert abs(rep.best_lambda - ref) / (1 + ref) <= 1e-8


def test_sunflower_argument_errors():
    with pytest.raises(OddOrder):
        sunflower_lambda_star(5, 3)
    with pytest.raises(HypergraphError):
        sunflower_lambda_star(4, 0)
    assert issubclass(BracketFailure, ArithmeticError)


def _dense_power(h, sel, iters=20_000):
    """Plain power iteration on the dense shifted tensor."""
    t = dense_oracle(h, sel)
    k = h.k
    x = np.ones(h.n)
    for _ in range(iters):
        y = dense_apply(t, x).vec + x ** (k - 1)
        x = y ** (1 / (k - 1))
        x /= np.linalg.norm(x, ord=k)
    y = dense_apply(t, x).vec
    return float(np.mean(y / x ** (k - 1)))


def test_ng_qi_zhou_single_edge(single_edge):
    lam, x = ng_qi_zhou(single_edge, ADJ)
    assert lam == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(x, x[0])
    assert _dense_power(single_edge, ADJ, 2000) == pytest.approx(1.0, abs=1e-10)


def test_ng_qi_zhou_squid_value():
    lam, x = ng_qi_zhou(gen_squid(4))
    assert lam == pytest.approx(1.3320, abs=5e-5)
    assert np.all(x > 0)
    assert lam == pytest.approx(_dense_power(gen_squid(4), ADJ), abs=1e-8)


@pytest.mark.parametrize("s,expected", [(1, 4.6344), (2, 6.5754), (3, 7.5293)])
def test_ng_qi_zhou_grid_signless(s, expected):
    lam, _ = ng_qi_zhou(gen_grid(s), SLAP)
    assert lam == pytest.approx(expected, abs=5e-5)


def test_ng_qi_zhou_grid1_vs_dense():
    h = gen_grid(1)
    assert ng_qi_zhou(h, SLAP)[0] == pytest.approx(_dense_power(h, SLAP), abs=1e-8)


def test_ng_qi_zhou_rejects_laplacian():
    with pytest.raises(NotNonnegative):
        ng_qi_zhou(gen_squid(4), LAP)
    with pytest.raises(ValueError):
        ng_qi_zhou(gen_squid(4), ADJ, shift=-1.0)


def test_ng_qi_zhou_iteration_cap():
    with pytest.raises(NoConvergence):
        ng_qi_zhou(gen_grid(2), SLAP, max_iter=2)


@pytest.mark.parametrize(
    "h,sel,kind,direction",
    [
        (gen_squid(4), ADJ, EigKind.H, Direction.MIN),
        (gen_squid(4), SLAP, EigKind.Z, Direction.MAX),
        (gen_sunflower(4, 3), LAP, EigKind.H, Direction.MAX),
        (gen_grid(1), LAP, EigKind.H, Direction.MAX),
        (gen_grid(1), SLAP, EigKind.Z, Direction.MIN),
    ],
)
def test_shifted_power_agrees_with_cest(h, sel, kind, direction):
    assert h.n <= 31
    cfg = SolverConfig(rng_seed=0)
    cest_best = multi_start(h, sel, kind, direction, cfg, N=20).best_lambda
    spm = [shifted_power_method(h, sel, kind, direction, rng=np.random.default_rng(i)).lam for i in range(20)]
    spm_best = min(spm) if direction is Direction.MIN else max(spm)
    assert abs(spm_best - cest_best) <= 1e-6


def test_shifted_power_fixed_shift_and_cap():
    h = gen_squid(4)
    res = shifted_power_method(h, ADJ, EigKind.H, Direction.MIN, shift=50.0, rng=np.random.default_rng(0))
    assert res.status in (Status.GRAD_CONVERGED, Status.STAGNATION_CONVERGED)
    assert np.all(np.diff(res.f_trace) <= 1e-15)
    with pytest.raises(NoConvergence):
        shifted_power_method(h, ADJ, EigKind.H, Direction.MIN, SolverConfig(max_iter=3),
                             rng=np.random.default_rng(0))
