"""CEST against the shifted power method and, where it applies, the Perron power iteration.

    python3 scripts/compare_power.py --starts 20
"""

import argparse
import time

import numpy as np

from cest.hypergraph import gen_blowup, gen_grid, gen_petersen, gen_squid, gen_sunflower
from cest.merit import Direction
from cest.reference import ng_qi_zhou, shifted_power_method
from cest.solver import SolverConfig, multi_start
from cest.tensor_ops import EigKind, TensorSelector

A, L, Q = TensorSelector.ADJACENCY, TensorSelector.LAPLACIAN, TensorSelector.SIGNLESS_LAPLACIAN

CASES = [
    ("squid(4)", lambda: gen_squid(4), Q, Direction.MAX),
    ("grid(2)", lambda: gen_grid(2), L, Direction.MAX),
    ("grid(3)", lambda: gen_grid(3), Q, Direction.MAX),
    ("sunflower(4,10)", lambda: gen_sunflower(4, 10), L, Direction.MAX),
    ("blowup-petersen(4)", lambda: gen_blowup(gen_petersen(), 2), Q, Direction.MIN),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--starts", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'case':<20} {'T':>2} {'dir':>3} {'CEST':>14} {'time':>7} {'SPM':>14} {'time':>7} {'Perron':>14}")
    for name, make, sel, direction in CASES:
        h = make()
        t0 = time.perf_counter()
        rep = multi_start(h, sel, EigKind.H, direction, SolverConfig(rng_seed=args.seed), N=args.starts)
        t_cest = time.perf_counter() - t0

        t0 = time.perf_counter()
        lams = [shifted_power_method(h, sel, EigKind.H, direction, rng=np.random.default_rng(args.seed + i)).lam
                for i in range(args.starts)]
        t_spm = time.perf_counter() - t0
        spm = min(lams) if direction is Direction.MIN else max(lams)

        perron = "-"
        if sel is not L and direction is Direction.MAX:
            perron = f"{ng_qi_zhou(h, sel)[0]:.10f}"
        print(f"{name:<20} {sel.label:>2} {direction.value:>3} {rep.best_lambda:>14.10f} {t_cest:>6.2f}s "
              f"{spm:>14.10f} {t_spm:>6.2f}s {perron:>14}", flush=True)


if __name__ == "__main__":
    main()
