"""Command line entry point: ``twochoices {run,synth,metrics,scatter}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import harness, synth
from .dynamics import Mode
from .extraction import extract
from .graph import load_graph, serialize
from .partition import metrics_record


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _read_labels(path: str) -> list[str]:
    return [line.strip() for line in Path(path).read_text().splitlines() if line.strip()]


def cmd_run(args) -> int:
    config = harness.ExperimentConfig(
        core_method=args.core_method,
        trials=args.trials,
        max_rounds=args.max_rounds,
        consensus_fraction=args.consensus,
        base_seed=args.seed,
        mode=Mode(args.mode),
        stats_every=args.stats_every,
        workers=args.workers,
    )
    labels = _read_labels(args.partition) if args.partition else None
    report, results, partition, g = harness.run_experiment(args.input, config, labels)
    harness.write_outputs(args.out, report, results, g, partition, args.seed,
                          rounds_files=args.stats_every > 0)
    print(f"{report.dataset}: C={report.frac_C:.2f} P={report.frac_P:.2f} M={report.frac_M:.2f} "
          f"mean_rounds={report.mean_rounds:.1f} c_r={report.c_r:.3g} c_d={report.c_d:.3g}")
    return 0


def cmd_synth(args) -> int:
    spec = synth.SynthSpec(args.n, args.epsilon, args.d_core_out, args.d_peri_in,
                           args.cr, args.cd, seed=args.seed, core_size=args.core_size)
    g, partition = synth.generate(spec)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(serialize(g))
    core_path = out.with_name(out.name + ".core")
    core_path.write_text("".join(f"{v}\n" for v in partition.core))
    print(f"wrote {out} ({g.n} agents, {g.m} edges) and {core_path} ({partition.core_size} core agents)")
    return 0


def cmd_metrics(args) -> int:
    g = load_graph(args.input)
    partition = extract(g, args.core_method)
    record = metrics_record(g, partition)
    record["core_method"] = args.core_method
    record["core_labels"] = [g.label(v) for v in partition.core]
    json.dump(record, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def cmd_scatter(args) -> int:
    reports = harness.load_reports(args.reports)
    summary = harness.write_scatter(args.out, reports)
    print(f"{len(reports)} reports -> {args.out}")
    for key, value in summary.items():
        print(f"{key}: {value:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twochoices", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run seeded trials on an edge-list file")
    p.add_argument("--input", required=True)
    p.add_argument("--core-method", choices=harness.METHODS, default="densest")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-rounds", type=int, default=None, help="default: |V| after preprocessing")
    p.add_argument("--consensus", type=float, default=0.95)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--stats-every", type=int, default=1, help="0 disables rounds_<i>.csv")
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=[m.value for m in (Mode.PLAIN, Mode.STUBBORN_CORE)], default="plain")
    p.add_argument("--partition", help="file of core labels (one per line) instead of extraction")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("synth", help="generate a synthetic core-periphery network")
    p.add_argument("--n", type=int, required=True, help="periphery size")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--cr", type=_rational, required=True)
    p.add_argument("--cd", type=_rational, required=True)
    p.add_argument("--d-core-out", type=int, required=True)
    p.add_argument("--d-peri-in", type=int, required=True)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--core-size", type=int, default=None, help="override round(n ** epsilon)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("metrics", help="extract a core and print its metrics")
    p.add_argument("--input", required=True)
    p.add_argument("--core-method", choices=harness.METHODS, default="densest")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("scatter", help="collect report.json files into scatter.csv")
    p.add_argument("--reports", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scatter)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, synth.SynthesisError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
