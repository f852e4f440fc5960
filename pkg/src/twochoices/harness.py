"""Experiment pipeline: preprocess, extract a core, color it blue, run seeded
trials, classify, and write Table-1 / Figure-1 style outputs.

Output files in an experiment directory:

``report.json``   the :class:`ExperimentReport`
``trials.csv``    one row per trial (column order fixed, see ``TRIALS_HEADER``)
``core.txt``      external labels of the core agents, one per line
``rounds_<i>.csv`` per-round statistics of trial ``i`` (when enabled)
"""
from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import theory
from .dynamics import (DynamicsParams, Mode, Outcome, RoundStats, RunResult, TrialOutcome,
                       core_blue, run)
from .extraction import extract
from .graph import Graph, load_graph
from .partition import Partition, dominance, metrics_record, robustness

log = logging.getLogger(__name__)

REPORT_VERSION = 1
TRIALS_HEADER = ["trial", "seed", "label", "rounds", "final_blue_volume"]
SCATTER_HEADER = ["dataset", "c_d", "dominant", "frac_C", "frac_M", "mean_rounds",
                  "side_of_c_star", "side_of_sigma"]
METHODS = ("densest", "krich")


@dataclass(frozen=True)
class ExperimentConfig:
    core_method: str = "densest"
    trials: int = 50
    max_rounds: int | None = None
    """None means |V| of the preprocessed graph."""
    consensus_fraction: float = 0.95
    base_seed: int = 0
    mode: Mode = Mode.PLAIN
    stats_every: int = 0
    delta: float = 0.1
    """Positive slack used for the regime prediction's robustness bound."""
    workers: int = 1

    def __post_init__(self):
        if self.core_method not in METHODS:
            raise ValueError(f"core_method must be one of {METHODS}")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        object.__setattr__(self, "mode", Mode(self.mode))


@dataclass
class ExperimentReport:
    dataset: str
    c_d: float
    frac_C: float
    frac_P: float
    frac_M: float
    mean_rounds: float | None = None
    n: int | None = None
    m: int | None = None
    core_size: int | None = None
    c_r: float | None = None
    c_r_alt: float | None = None
    c_d_alt: float | None = None
    counts: dict[str, int] = field(default_factory=dict)
    max_rounds: int | None = None
    core_method: str | None = None
    predicted_regime: str | None = None
    dominance_gap: float | None = None
    thresholds: dict[str, float] = field(default_factory=lambda: asdict(theory.THRESHOLDS))
    metrics: dict | None = None
    config: dict | None = None
    version: int = REPORT_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        return cls(**json.loads(text))

    @property
    def dominant(self) -> Outcome:
        fracs = [(self.frac_C, Outcome.CORE), (self.frac_P, Outcome.PERIPHERY), (self.frac_M, Outcome.METASTABLE)]
        return max(fracs, key=lambda t: t[0])[1]


def classify(outcomes: list[TrialOutcome]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(frac_C, frac_P, frac_M, mean_rounds) as exact fractions."""
    if not outcomes:
        raise ValueError("no trial outcomes to classify")
    total = len(outcomes)
    count = {o: 0 for o in Outcome}
    for t in outcomes:
        count[Outcome(t.label)] += 1
    mean_rounds = Fraction(sum(t.rounds for t in outcomes), total)
    return (Fraction(count[Outcome.CORE], total), Fraction(count[Outcome.PERIPHERY], total),
            Fraction(count[Outcome.METASTABLE], total), mean_rounds)


def _ratio_float(x) -> float:
    return math.inf if x == math.inf else float(x)


def run_trials(g: Graph, partition: Partition, config: ExperimentConfig,
               max_rounds: int) -> list[RunResult]:
    """Run ``config.trials`` seeded trials from the core-blue configuration."""
    init = core_blue(g, partition)

    def one(i: int) -> RunResult:
        params = DynamicsParams(config.mode, seed=config.base_seed + i, max_rounds=max_rounds,
                                consensus_fraction=config.consensus_fraction)
        return run(g, init, params, partition, stats_every=config.stats_every)

    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            return list(pool.map(one, range(config.trials)))
    return [one(i) for i in range(config.trials)]


def run_on_graph(g: Graph, config: ExperimentConfig, dataset: str = "graph",
                 partition: Partition | None = None) -> tuple[ExperimentReport, list[RunResult], Partition]:
    """Experiment on an already preprocessed graph.

    Both extraction methods are evaluated for the metric columns; the
    configured one (or the supplied ``partition``) seeds the dynamics.
    """
    chosen = partition if partition is not None else extract(g, config.core_method)
    alt_method = next(m for m in METHODS if m != config.core_method)
    try:
        alt = extract(g, alt_method)
    except ValueError as exc:
        log.warning("alternate extraction %s failed: %s", alt_method, exc)
        alt = None

    max_rounds = config.max_rounds if config.max_rounds is not None else g.n
    results = run_trials(g, chosen, config, max_rounds)
    outcomes = [r.outcome for r in results]
    f_c, f_p, f_m, mean_rounds = classify(outcomes)

    c_r, c_d = robustness(g, chosen), dominance(g, chosen)
    k, n_p = chosen.core_size, g.n - chosen.core_size
    epsilon = math.log(k) / math.log(n_p) if n_p > 1 and k > 1 else 0.0
    pred = theory.predict_regime(_ratio_float(c_r), _ratio_float(c_d), n_p, epsilon, config.delta)
    report = ExperimentReport(
        dataset=dataset,
        n=g.n,
        m=g.m,
        core_size=k,
        c_r=_ratio_float(c_r),
        c_d=_ratio_float(c_d),
        c_r_alt=_ratio_float(robustness(g, alt)) if alt is not None else None,
        c_d_alt=_ratio_float(dominance(g, alt)) if alt is not None else None,
        frac_C=float(f_c),
        frac_P=float(f_p),
        frac_M=float(f_m),
        counts={o.value: sum(1 for t in outcomes if t.label is o) for o in Outcome},
        mean_rounds=float(mean_rounds),
        max_rounds=max_rounds,
        core_method=config.core_method,
        predicted_regime=pred.regime.value,
        dominance_gap=pred.dominance_gap,
        metrics=metrics_record(g, chosen),
        config={
            "trials": config.trials,
            "base_seed": config.base_seed,
            "consensus_fraction": config.consensus_fraction,
            "mode": config.mode.value,
            "delta": config.delta,
        },
    )
    return report, results, chosen


def run_experiment(graph_path: str | Path, config: ExperimentConfig,
                   partition_labels: list[str] | None = None) -> tuple[ExperimentReport, list[RunResult], Partition, Graph]:
    """Load, preprocess and run; ``partition_labels`` overrides core extraction."""
    path = Path(graph_path)
    g = load_graph(path)
    partition = None
    if partition_labels is not None:
        partition = partition_from_labels(g, partition_labels)
    name = path.name
    for suffix in (".gz", ".txt", ".tsv", ".edges"):
        name = name.removesuffix(suffix)
    report, results, chosen = run_on_graph(g, config, name, partition)
    return report, results, chosen, g


def partition_from_labels(g: Graph, labels) -> Partition:
    index = {g.label(v): v for v in range(g.n)}
    missing = [lab for lab in labels if lab not in index]
    if missing:
        raise ValueError(f"{len(missing)} core labels not in the graph, e.g. {missing[0]!r}")
    return Partition.from_core(g, [index[lab] for lab in labels])


def write_outputs(out_dir: str | Path, report: ExperimentReport, results: list[RunResult],
                  g: Graph, partition: Partition, base_seed: int, rounds_files: bool = False) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.to_json())
    with open(out / "trials.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRIALS_HEADER)
        for i, r in enumerate(results):
            o = r.outcome
            w.writerow([i, base_seed + i, o.label.value, o.rounds, o.final_blue_volume])
    (out / "core.txt").write_text("".join(g.label(v) + "\n" for v in partition.core))
    if rounds_files:
        for i, r in enumerate(results):
            lines = [RoundStats.CSV_HEADER] + [s.csv_row() for s in r.stats]
            (out / f"rounds_{i}.csv").write_text("\n".join(lines) + "\n")


def scatter_data(reports: list[ExperimentReport]) -> tuple[list[dict], dict[str, float]]:
    """One row per dataset plus the threshold summary.

    The summary holds the fraction of datasets with ``c_d < sigma`` whose
    dominant outcome is metastability, and the fraction with ``c_d > sigma``
    whose dominant outcome is an almost-consensus (either color). Keys are
    omitted when no dataset falls on that side.
    """
    sigma, c_star = theory.SIGMA_EMPIRICAL, theory.C_STAR
    rows = []
    for r in reports:
        rows.append({
            "dataset": r.dataset,
            "c_d": r.c_d,
            "dominant": r.dominant.value,
            "frac_C": r.frac_C,
            "frac_M": r.frac_M,
            "mean_rounds": r.mean_rounds,
            "side_of_c_star": "below" if r.c_d < c_star else "above",
            "side_of_sigma": "below" if r.c_d < sigma else "above",
        })
    summary: dict[str, float] = {}
    below = [r for r in reports if r.c_d < sigma]
    above = [r for r in reports if r.c_d > sigma]
    if below:
        summary["metastable_below_sigma"] = sum(r.dominant is Outcome.METASTABLE for r in below) / len(below)
    if above:
        summary["consensus_above_sigma"] = sum(r.dominant is not Outcome.METASTABLE for r in above) / len(above)
    return rows, summary


def write_scatter(path: str | Path, reports: list[ExperimentReport]) -> dict[str, float]:
    rows, summary = scatter_data(reports)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SCATTER_HEADER)
        for row in rows:
            w.writerow(["" if row[k] is None else row[k] for k in SCATTER_HEADER])
        for key, value in summary.items():
            fh.write(f"# {key},{value!r}\n")
    return summary


def load_reports(directory: str | Path) -> list[ExperimentReport]:
    paths = sorted(Path(directory).rglob("report.json"))
    return [ExperimentReport.from_json(p.read_text()) for p in paths]
