"""Effect of the initial scaling rule and the memory length L on accuracy and cost.

    python3 scripts/gamma_ablation.py --family grid --s 3 --starts 50
"""

import argparse
import statistics

import numpy as np

from cest.cli import derive_reference, make_family
from cest.lbfgs import GammaPolicy
from cest.merit import Direction
from cest.solver import SolverConfig, multi_start
from cest.tensor_ops import EigKind, TensorSelector


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="grid")
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--delta", type=int, default=100)
    ap.add_argument("--s", type=int, default=3)
    ap.add_argument("--t", type=int, default=2)
    ap.add_argument("--tensor", default="lap", choices=[s.value for s in TensorSelector])
    ap.add_argument("--dir", default="max", choices=[d.value for d in Direction])
    ap.add_argument("--starts", type=int, default=50)
    ap.add_argument("--memory", type=int, nargs="+", default=[0, 1, 3, 5, 10])
    args = ap.parse_args()

    h = make_family(args.family, k=args.k, delta=args.delta, s=args.s, t=args.t)
    sel, direction = TensorSelector(args.tensor), Direction(args.dir)
    ref, source = derive_reference(h, sel, EigKind.H, direction)
    if ref is None and sel is TensorSelector.LAPLACIAN and direction is Direction.MAX:
        # grids, squids and sunflowers are odd-bipartite, where L and Q share their largest eigenvalue
        ref, source = derive_reference(h, TensorSelector.SIGNLESS_LAPLACIAN, EigKind.H, direction)
        source = f"{source} on Q"
    print(f"{args.family}: n={h.n} m={h.m}  reference={ref} ({source})")
    print(f"{'gamma':<6} {'L':>3} {'best':>14} {'accu':>6} {'iters':>7} {'evals':>7}")
    for policy in GammaPolicy:
        for mem in args.memory:
            cfg = SolverConfig(L=mem, gamma_policy=policy)
            rep = multi_start(h, sel, EigKind.H, direction, cfg, N=args.starts, reference=ref)
            acc = "-" if rep.accuracy_rate is None else f"{100 * rep.accuracy_rate:.0f}%"
            iters = statistics.median(r.iters for r in rep.runs)
            evals = np.median([r.nevals for r in rep.runs])
            print(f"{policy.value:<6} {mem:>3} {rep.best_lambda:>14.8f} {acc:>6} {iters:>7g} {evals:>7g}", flush=True)


if __name__ == "__main__":
    main()
