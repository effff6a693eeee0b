"""Command-line front end.

Exit codes: 0 success, 1 runtime or IO failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bench import check_comparable, export_stats, poi_percent, run_trials
from .instance import CASES, dp_solve, generate_instance, load_instance, save_instance, total_profit, total_weight
from .solver import DEFAULT_MAX_ITER, DEFAULT_N, DEFAULT_THETA, SolverConfig, run


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}")
    if not -(1 << 63) <= value < (1 << 64):
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {value}")
    return value


def parse_theta(text: str) -> float:
    """Radians, or a multiple of pi written like ``0.01pi``."""
    raw = text.strip().lower()
    try:
        if raw.endswith("pi"):
            coeff = raw[:-2].rstrip("*") or "1"
            value = float(coeff) * math.pi
        else:
            value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse theta {text!r}")
    if not 0.0 < value < math.pi / 2:
        raise argparse.ArgumentTypeError(f"theta must lie in (0, pi/2), got {value}")
    return value


def _add_solver_flags(p):
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--algo", choices=["ae-qts", "qts"], default="ae-qts")
    p.add_argument("--n", type=_positive_int, default=DEFAULT_N, help="population size")
    p.add_argument("--max-iter", type=_nonneg_int, default=DEFAULT_MAX_ITER)
    p.add_argument("--theta", type=parse_theta, default=DEFAULT_THETA,
                   help="base rotation angle, radians or e.g. 0.01pi (default 0.01pi)")
    p.add_argument("--pair-count", type=_positive_int, default=None,
                   help="best/worst pairs per update (default n/2 for ae-qts, 1 for qts)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aeqts", description="AE-QTS / QTS knapsack solver")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a Case I/II/III instance")
    p.add_argument("--case", choices=CASES, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("run", help="solve once and report")
    _add_solver_flags(p)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--trace", help="per-iteration CSV: t,best_so_far,iter_best,iter_worst")
    p.add_argument("--dump-register", help="final register CSV: qubit_index,alpha,beta")

    p = sub.add_parser("bench", help="many seeded trials, curve CSV + summary JSON")
    _add_solver_flags(p)
    p.add_argument("--trials", type=_positive_int, default=100)
    p.add_argument("--master-seed", type=_seed, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("compare", help="percentage of improvement between two summaries")
    p.add_argument("baseline")
    p.add_argument("improved")
    p.add_argument("--out", required=True)

    p = sub.add_parser("oracle", help="exact optimum by dynamic programming")
    p.add_argument("instance")
    return parser


def _solver_config(parser, args, seed):
    if args.n < 2:
        parser.error("--n must be at least 2")
    pair_count = args.pair_count
    if args.algo == "qts":
        if pair_count not in (None, 1):
            parser.error("--algo qts uses exactly one pair; drop --pair-count")
        pair_count = 1
    if pair_count is not None and pair_count > args.n // 2:
        parser.error(f"--pair-count must be <= n/2 = {args.n // 2}")
    return SolverConfig(n=args.n, max_iter=args.max_iter, theta=args.theta,
                        pair_count=pair_count, seed=seed)


def _echo_config(cfg):
    print(f"n={cfg.n} max_iter={cfg.max_iter} theta={cfg.theta!r} "
          f"({cfg.theta / math.pi:.6g}pi) pair_count={cfg.pair_count}")


def cmd_gen(args):
    inst = generate_instance(args.case, args.k, args.seed)
    save_instance(inst, args.out)
    print(f"case={inst.case} k={inst.k} seed={args.seed} capacity={float(inst.capacity):g}")
    print(f"wrote {args.out}")


def cmd_run(parser, args):
    cfg = _solver_config(parser, args, args.seed)
    inst = load_instance(args.instance)
    rows = []
    final = {}

    def record(state):
        profits = state.population.profits
        rows.append((state.t, state.best.profit, int(profits.max()), int(profits.min())))
        final["register"] = state.register

    want_hook = args.trace or args.dump_register
    result = run(cfg, inst, on_step=record if want_hook else None)
    weight = total_weight(result.best_bits, inst)
    feasible = inst.fits(weight) and total_profit(result.best_bits, inst) == result.best_profit
    _echo_config(cfg)
    print(f"seed={cfg.seed}")
    print(f"best_profit={result.best_profit}")
    print(f"last_update_iter={result.last_update_iter}")
    print(f"weight={weight} capacity={float(inst.capacity):g}")
    print(f"feasible={'yes' if feasible else 'NO'}")
    print("selection=" + "".join(str(int(b)) for b in result.best_bits))
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            out = csv.writer(fh, lineterminator="\n")
            out.writerow(["t", "best_so_far", "iter_best", "iter_worst"])
            out.writerows(rows)
    if args.dump_register and "register" in final:
        final["register"].write_csv(args.dump_register)


def cmd_bench(parser, args):
    cfg = _solver_config(parser, args, args.master_seed)
    inst = load_instance(args.instance)
    stats = run_trials(cfg, inst, args.trials, args.master_seed,
                       workers=args.workers, instance_file=args.instance)
    csv_path, json_path = export_stats(stats, args.out)
    _echo_config(cfg)
    print(f"trials={stats.trials} master_seed={stats.master_seed}")
    print(f"mean_final_profit={stats.mean_final_profit:.4f} std={stats.std_final_profit:.4f}")
    print(f"mean_last_update={stats.mean_last_update:.2f}")
    print(f"wrote {csv_path} {json_path}")


def cmd_compare(args):
    baseline = json.loads(Path(args.baseline).read_text())
    improved = json.loads(Path(args.improved).read_text())
    check_comparable(baseline, improved)
    pct = poi_percent(baseline["mean_last_update"], improved["mean_last_update"])
    report = {"baseline": baseline, "improved": improved, "poi_percent": pct}
    Path(args.out).write_text(json.dumps(report, indent=2) + "\n")
    print(f"baseline mean_last_update={baseline['mean_last_update']}")
    print(f"improved mean_last_update={improved['mean_last_update']}")
    print(f"poi_percent={pct:.2f}")


def cmd_oracle(args):
    inst = load_instance(args.instance)
    value, bits = dp_solve(inst)
    print(f"optimum={value}")
    print(f"weight={total_weight(bits, inst)} capacity={float(inst.capacity):g}")
    print("selection=" + "".join(str(int(b)) for b in bits))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            cmd_gen(args)
        elif args.command == "run":
            cmd_run(parser, args)
        elif args.command == "bench":
            cmd_bench(parser, args)
        elif args.command == "compare":
            cmd_compare(args)
        elif args.command == "oracle":
            cmd_oracle(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
