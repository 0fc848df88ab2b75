"""Command-line front end: ``cest gen | solve | verify | bench``.

Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
3 numerical failure (including a failed ``verify`` check).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import os
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import verify as verify_mod
from .errors import CestError, HypergraphError, OddOrder
from .hypergraph import (
    Hypergraph,
    format_hypergraph,
    gen_blowup,
    gen_grid,
    gen_icosahedron,
    gen_petersen,
    gen_squid,
    gen_sunflower,
    read_hypergraph,
)
from .lbfgs import GammaPolicy
from .merit import Direction
from .reference import ng_qi_zhou, sunflower_lambda_star
from .solver import MultiStartReport, SolverConfig, multi_start
from .tensor_ops import EigKind, TensorSelector

EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC = 1, 2, 3

FAMILIES = ("squid", "sunflower", "grid", "blowup-petersen", "icosahedron")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunRecord:
    family: str
    n: int
    m: int
    k: int
    selector: str
    eig: str
    direction: str
    starts: int
    best_lambda: float
    accuracy: float | None
    median_iters: float
    wall_time: float
    seed: int

    @classmethod
    def fields(cls) -> list[str]:
        return [f.name for f in dataclasses.fields(cls)]

    def row(self) -> list[str]:
        out = []
        for name in self.fields():
            v = getattr(self, name)
            if v is None:
                out.append("")
            elif isinstance(v, float):
                out.append(repr(v))  # shortest round-trip repr, >= 17 significant digits when needed
            else:
                out.append(str(v))
        return out

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "RunRecord":
        types = {f.name: f.type for f in dataclasses.fields(cls)}
        kw = {}
        for name, raw in row.items():
            t = types[name]
            if raw == "":
                kw[name] = None
            elif t in ("int",):
                kw[name] = int(raw)
            elif t.startswith("float"):
                kw[name] = float(raw)
            else:
                kw[name] = raw
        return cls(**kw)


def append_records(path: str | os.PathLike, records: list[RunRecord]) -> None:
    path = Path(path)
    new = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        if new:
            w.writerow(RunRecord.fields())
        for r in records:
            w.writerow(r.row())


def read_records(path: str | os.PathLike) -> list[RunRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [RunRecord.from_row(r) for r in csv.DictReader(fh)]


# ------------------------------------------------------------------ helpers


def make_family(family: str, k=None, delta=None, s=None, t=None) -> Hypergraph:
    def need(val, flag):
        if val is None:
            raise UsageError(f"family {family!r} needs {flag}")
        return val

    if family == "squid":
        return gen_squid(need(k, "--k"))
    if family == "sunflower":
        return gen_sunflower(need(k, "--k"), need(delta, "--delta"))
    if family == "grid":
        return gen_grid(need(s, "--s"))
    if family == "blowup-petersen":
        return gen_blowup(gen_petersen(), need(t, "--t"))
    if family == "icosahedron":
        return gen_icosahedron(need(s, "--s"))
    raise UsageError(f"unknown family {family!r}")


def sunflower_degree(h: Hypergraph) -> int | None:
    """Return delta if ``h`` is a sunflower (one vertex shared by all edges, others degree 1)."""
    if h.k < 4 or h.k % 2:
        return None
    if h.m == 1:
        return 1
    centers = (h.degrees == h.m).nonzero()[0]
    if len(centers) == 1 and int(h.degrees.sum()) == h.m + (h.n - 1) and h.n == (h.k - 1) * h.m + 1:
        return h.m
    return None


def derive_reference(h: Hypergraph, sel: TensorSelector, kind: EigKind, direction: Direction):
    """A reference value computed independently of CEST, when one is available."""
    if kind is EigKind.H and direction is Direction.MAX:
        delta = sunflower_degree(h)
        if sel is TensorSelector.LAPLACIAN and delta is not None:
            return sunflower_lambda_star(h.k, delta), "sunflower closed form"
        if sel is not TensorSelector.LAPLACIAN:
            try:
                return ng_qi_zhou(h, sel)[0], "Ng-Qi-Zhou"
            except CestError:
                return None, None
    return None, None


def _config_from_args(args) -> SolverConfig:
    scale = {"auto": None, "on": True, "off": False}[args.scale_tols]
    overrides = dict(
        L=args.L, eta=args.eta, beta=args.beta, kappa=args.kappa, grad_tol=args.grad_tol,
        step_tol=args.step_tol, fval_tol=args.fval_tol, max_iter=args.max_iter,
    )
    cfg = SolverConfig(
        scale_tols_by_sqrt_n=scale,
        gamma_policy=GammaPolicy(args.gamma),
        rng_seed=args.seed,
    )
    return dataclasses.replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


def make_record(family, h, sel, kind, direction, report: MultiStartReport, wall, seed) -> RunRecord:
    return RunRecord(
        family=family, n=h.n, m=h.m, k=h.k, selector=sel.value, eig=kind.value,
        direction=direction.value, starts=len(report.runs), best_lambda=report.best_lambda,
        accuracy=report.accuracy_rate, median_iters=float(statistics.median(r.iters for r in report.runs)),
        wall_time=wall, seed=seed,
    )


# ----------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    try:
        h = make_family(args.family, k=args.k, delta=args.delta, s=args.s, t=args.t)
    except (HypergraphError, OddOrder) as exc:
        raise UsageError(str(exc)) from None
    text = format_hypergraph(h)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.family}: k={h.k} m={h.m} n={h.n} -> {args.out}")
    return 0


def cmd_solve(args) -> int:
    h = read_hypergraph(args.input)
    sel = TensorSelector(args.tensor)
    kind = EigKind(args.eig)
    direction = Direction(args.dir)
    cfg = _config_from_args(args)
    reference, source = args.reference, "--reference"
    if reference is None and not args.no_auto_reference:
        reference, source = derive_reference(h, sel, kind, direction)
    t0 = time.perf_counter()
    report = multi_start(h, sel, kind, direction, cfg, N=args.starts, reference=reference, jobs=args.jobs)
    wall = time.perf_counter() - t0
    best = report.best_run
    statuses: dict[str, int] = {}
    for r in report.runs:
        statuses[r.status.value] = statuses.get(r.status.value, 0) + 1

    print(f"input: {args.input} (k={h.k}, m={h.m}, n={h.n})")
    print(f"tensor={sel.label} eig={kind.name} dir={direction.value} starts={args.starts} seed={args.seed}")
    print(f"best lambda: {report.best_lambda:.4f}  ({report.best_lambda!r})")
    if reference is not None:
        re = abs(report.best_lambda - reference) / max(abs(reference), 1e-300)
        print(f"reference: {reference!r} ({source})")
        print(f"relative error: {re:.4e}")
        print(f"accuracy: {100 * report.accuracy_rate:.1f}%")
    print(f"residual_inf: {best.residual_inf:.3e}")
    print("status: " + ", ".join(f"{k}={v}" for k, v in sorted(statuses.items())))
    print(f"median iterations: {statistics.median(r.iters for r in report.runs):g}")
    if args.csv:
        family = args.family or Path(args.input).stem
        append_records(args.csv, [make_record(family, h, sel, kind, direction, report, wall, args.seed)])
    return 0


def cmd_verify(args) -> int:
    results = verify_mod.run_all(max_n=args.max_n, seed=args.seed)
    for r in results:
        print(r.line())
    bad = verify_mod.first_failure(results)
    if bad is not None:
        print(f"verify FAILED: {bad.name}")
        return EXIT_NUMERIC
    print(f"verify passed: {len(results)} checks")
    return 0


# (family label, builder, selector, kind, direction, reference or None)
def bench_cases(table: str, max_delta: int, max_s: int):
    A, L, Q = TensorSelector.ADJACENCY, TensorSelector.LAPLACIAN, TensorSelector.SIGNLESS_LAPLACIAN
    H, Z = EigKind.H, EigKind.Z
    MIN, MAX = Direction.MIN, Direction.MAX
    cases = []
    if table in ("squid", "all"):
        for k in (4, 6, 8):
            h = gen_squid(k)
            cases.append((f"squid(k={k})", h, A, H, MIN, -ng_qi_zhou(h)[0]))
    if table in ("petersen", "all"):
        for t in range(1, 6):
            cases.append((f"blowup-petersen(2k={2 * t})", gen_blowup(gen_petersen(), t), Q, H, MIN, 1.0))
    if table in ("grid", "all"):
        for s in range(1, max_s + 1):
            h = gen_grid(s)
            cases.append((f"grid(s={s})", h, L, H, MAX, ng_qi_zhou(h, Q)[0]))
    if table in ("sunflower", "all"):
        for k in (4, 6):
            delta = 10
            while delta <= max_delta:
                cases.append((f"sunflower(k={k},delta={delta})", gen_sunflower(k, delta), L, H, MAX,
                              sunflower_lambda_star(k, delta)))
                delta *= 10
    if table in ("icosahedron", "all"):
        for s in range(0, max_s + 1):
            h = gen_icosahedron(s)
            cases.append((f"icosahedron(s={s})", h, L, Z, MAX, None))
            cases.append((f"icosahedron(s={s})", h, Q, Z, MAX, None))
    return cases


def cmd_bench(args) -> int:
    cfg = _config_from_args(args)
    records = []
    print(f"{'case':<32} {'T':>2} {'eig':>3} {'dir':>3} {'n':>8} {'m':>8} {'lambda':>14} {'accu':>7} {'iters':>6} {'time(s)':>8}")
    for family, h, sel, kind, direction, ref in bench_cases(args.table, args.max_delta, args.max_s):
        t0 = time.perf_counter()
        rep = multi_start(h, sel, kind, direction, cfg, N=args.starts, reference=ref, jobs=args.jobs)
        wall = time.perf_counter() - t0
        rec = make_record(family, h, sel, kind, direction, rep, wall, args.seed)
        records.append(rec)
        acc = f"{100 * rep.accuracy_rate:.0f}%" if rep.accuracy_rate is not None else "-"
        print(f"{family:<32} {sel.label:>2} {kind.name:>3} {direction.value:>3} {h.n:>8} {h.m:>8} "
              f"{rep.best_lambda:>14.4f} {acc:>7} {rec.median_iters:>6g} {wall:>8.2f}")
    if args.csv:
        append_records(args.csv, records)
    return 0


# ------------------------------------------------------------------- parser


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("solver settings")
    g.add_argument("--starts", type=int, default=100, help="random starts (default 100)")
    g.add_argument("--seed", type=int, default=int(os.environ.get("CEST_SEED", "0")),
                   help="base RNG seed (default $CEST_SEED or 0)")
    g.add_argument("--L", type=int, help="L-BFGS memory (default 5)")
    g.add_argument("--eta", type=float, help="sufficient-decrease coefficient (default 0.01)")
    g.add_argument("--beta", type=float, help="backtracking ratio (default 0.5)")
    g.add_argument("--kappa", type=float, help="curvature floor (default 1e-10)")
    g.add_argument("--grad-tol", type=float)
    g.add_argument("--step-tol", type=float)
    g.add_argument("--fval-tol", type=float)
    g.add_argument("--max-iter", type=int)
    g.add_argument("--gamma", choices=[gp.value for gp in GammaPolicy], default="mix")
    g.add_argument("--scale-tols", choices=("auto", "on", "off"), default="auto",
                   help="multiply tolerances by sqrt(n); auto = only when n > 10^4")
    g.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    g.add_argument("--csv", help="append a result row to this CSV file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cest", description="Extreme eigenvalues of hypergraph tensors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a generated hypergraph file")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="multi-start CEST on a hypergraph file")
    p.add_argument("input")
    p.add_argument("--tensor", choices=[s.value for s in TensorSelector], required=True)
    p.add_argument("--eig", choices=[e.value for e in EigKind], default="h")
    p.add_argument("--dir", choices=[d.value for d in Direction], default="min")
    p.add_argument("--reference", type=float, help="true extreme eigenvalue for the accuracy rate")
    p.add_argument("--no-auto-reference", action="store_true",
                   help="do not derive a reference (sunflower closed form, Ng-Qi-Zhou)")
    p.add_argument("--family", help="label for the CSV record (default: file stem)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run the oracle suite")
    p.add_argument("--max-n", type=int, default=13)
    p.add_argument("--seed", type=int, default=int(os.environ.get("CEST_SEED", "0")))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run the experiment tables")
    p.add_argument("--table", choices=("squid", "petersen", "grid", "sunflower", "icosahedron", "all"),
                   default="all")
    p.add_argument("--max-delta", type=int, default=1000)
    p.add_argument("--max-s", type=int, default=3)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help; return the code to in-process callers
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if getattr(args, "starts", 1) < 1 or getattr(args, "jobs", 1) < 1:
            raise UsageError("--starts and --jobs must be >= 1")
        return args.func(args)
    except UsageError as exc:
        print(f"cest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HypergraphError, OSError) as exc:
        print(f"cest: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CestError, ArithmeticError, ValueError) as exc:
        print(f"cest: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
