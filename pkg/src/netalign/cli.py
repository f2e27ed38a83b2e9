"""Command-line interface: grid sweeps, one-off matching, self-verification.

Machine-readable results go to stdout (or the requested files); progress and
diagnostics go to stderr. Every subcommand is deterministic given its flags.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .align import AlignConfig, eigen_align, projected_power_align
from .graphs import parse_edge_list
from .harness import (ALGORITHMS, GridSpec, render_heatmap, run_grid,
                      summarize, write_csv, write_heatmap_legend)
from .operator import DegenerateBalanceError
from .selftest import run_all_suites

__all__ = ["main"]


def _parse_int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must be non-empty")
    return values


def _parse_float_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must be non-empty")
    return values


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epsilon", type=float, default=0.001,
                        help="scoring regularizer (default 0.001)")
    parser.add_argument("--eigen-tol", type=float, default=1e-8,
                        help="power iteration tolerance (default 1e-8)")
    parser.add_argument("--eigen-max-iters", type=int, default=1000,
                        help="power iteration cap (default 1000)")
    parser.add_argument("--ppa-max-iters", type=int, default=30,
                        help="projected power iteration cap (default 30)")


def _config_from(args: argparse.Namespace) -> AlignConfig:
    return AlignConfig(epsilon=args.epsilon, eigen_tol=args.eigen_tol,
                       eigen_max_iters=args.eigen_max_iters,
                       ppa_max_iters=args.ppa_max_iters)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netalign",
        description="Graph matching via spectral and projected-power methods.")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a planted-instance (n, lambda) recovery sweep")
    sweep.add_argument("--n", type=_parse_int_list, default=[10, 20, 30, 40, 50],
                       help="comma list of graph sizes (default 10,20,30,40,50)")
    sweep.add_argument("--p", type=float, default=0.2,
                       help="edge probability (default 0.2)")
    sweep.add_argument("--lambda", dest="lambdas", type=_parse_float_list,
                       default=[round(0.05 * k, 2) for k in range(11)],
                       help="comma list of noise levels (default 0,0.05,...,0.5)")
    sweep.add_argument("--trials", type=int, default=20,
                       help="trials per grid cell (default 20)")
    sweep.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    sweep.add_argument("--algo", choices=["eigenalign", "ppa", "both"], default="both")
    sweep.add_argument("--csv", required=True, help="output CSV path")
    sweep.add_argument("--heatmap", default=None,
                       help="output PGM path; one file per algorithm, algorithm "
                            "name inserted before the extension")
    sweep.add_argument("--log-scale", action="store_true",
                       help="log-compress the heatmap gray mapping")
    sweep.add_argument("--workers", type=int, default=1,
                       help="parallel worker processes (default 1)")
    _add_config_flags(sweep)
    sweep.set_defaults(func=cmd_sweep)

    match = sub.add_parser("match", help="align two edge-list graphs")
    match.add_argument("--g1", required=True, help="first graph edge-list file")
    match.add_argument("--g2", required=True, help="second graph edge-list file")
    match.add_argument("--algo", choices=["eigenalign", "ppa"], default="ppa")
    match.add_argument("--out", default=None,
                       help="write the correspondence here instead of stdout")
    _add_config_flags(match)
    match.set_defaults(func=cmd_match)

    selftest = sub.add_parser("selftest", help="run the built-in oracle suites")
    selftest.add_argument("--max-n", type=int, default=6,
                          help="largest graph size for dense oracles (default 6)")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.set_defaults(func=cmd_selftest)
    return parser


def cmd_sweep(args: argparse.Namespace) -> int:
    for lam in args.lambdas:
        if not (0.0 <= lam <= 1.0):
            print(f"error: --lambda values must lie in [0, 1], got {lam}", file=sys.stderr)
            return 2
    if not (0.0 <= args.p <= 1.0):
        print(f"error: --p must lie in [0, 1], got {args.p}", file=sys.stderr)
        return 2
    if args.trials < 1 or args.workers < 1:
        print("error: --trials and --workers must be positive", file=sys.stderr)
        return 2
    algorithms = ALGORITHMS if args.algo == "both" else (args.algo,)
    try:
        grid = GridSpec(n_list=tuple(args.n), lambda_list=tuple(args.lambdas),
                        p=args.p, trials=args.trials, algorithms=algorithms,
                        base_seed=args.seed, cfg=_config_from(args))
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    total = len(grid.specs())
    print(f"sweep: {total} trials over {len(args.n)}x{len(args.lambdas)} cells, "
          f"p={args.p}, workers={args.workers}", file=sys.stderr)
    started = time.perf_counter()
    records = run_grid(grid, workers=args.workers)
    elapsed = time.perf_counter() - started
    print(f"sweep: finished in {elapsed:.1f}s", file=sys.stderr)

    failures = [r for r in records if r.failure is not None]
    for rec in failures:
        print(f"warning: trial (n={rec.n}, lambda={rec.lam}, trial={rec.trial_index}, "
              f"algo={rec.algorithm}) failed: {rec.failure}", file=sys.stderr)

    csv_path = Path(args.csv)
    try:
        with csv_path.open("w") as sink:
            write_csv(records, sink)
    except OSError as err:
        print(f"error: cannot write CSV {csv_path}: {err}", file=sys.stderr)
        return 1
    print(f"wrote {csv_path} ({len(records)} records)", file=sys.stderr)

    if args.heatmap:
        summary = summarize(records)
        base = Path(args.heatmap)
        for algo in algorithms:
            path = base.with_name(f"{base.stem}.{algo}{base.suffix or '.pgm'}")
            legend = path.with_name(path.name + ".legend.txt")
            try:
                with path.open("w") as sink:
                    render_heatmap(summary, sink, algo, log_scale=args.log_scale)
                with legend.open("w") as sink:
                    write_heatmap_legend(summary, sink, algo, log_scale=args.log_scale)
            except OSError as err:
                print(f"error: cannot write heatmap {path}: {err}", file=sys.stderr)
                return 1
            print(f"wrote {path} and {legend}", file=sys.stderr)
    return 0


def cmd_match(args: argparse.Namespace) -> int:
    graphs = []
    for label, path_text in (("--g1", args.g1), ("--g2", args.g2)):
        path = Path(path_text)
        try:
            graphs.append(parse_edge_list(path.read_text()))
        except OSError as err:
            print(f"error: cannot read {label} file {path}: {err}", file=sys.stderr)
            return 1
        except ValueError as err:
            print(f"error: {label} file {path}: {err}", file=sys.stderr)
            return 1
    g1, g2 = graphs
    if g1.n != g2.n:
        print(f"error: size mismatch: {args.g1} has {g1.n} vertices, "
              f"{args.g2} has {g2.n}", file=sys.stderr)
        return 1
    runner = eigen_align if args.algo == "eigenalign" else projected_power_align
    try:
        cfg = _config_from(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        result = runner(g1, g2, cfg)
    except DegenerateBalanceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    lines = [f"{i} -> {result.permutation(i)}" for i in range(g1.n)]
    lines.append(f"matched_edges: {result.matched_edges}")
    lines.append(f"objective: {result.objective:.6g}")
    lines.append(f"iterations: {result.iterations}")
    lines.append(f"converged: {str(result.converged).lower()}")
    text = "\n".join(lines) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as err:
            print(f"error: cannot write {args.out}: {err}", file=sys.stderr)
            return 1
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    if args.max_n < 2:
        print("error: --max-n must be at least 2", file=sys.stderr)
        return 2
    results = run_all_suites(max_n=args.max_n, seed=args.seed)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    print(f"{len(results) - failed}/{len(results)} suites passed")
    return 0 if failed == 0 else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
