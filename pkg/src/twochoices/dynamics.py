"""Synchronous 2-Choices dynamics, plain, p-biased, or with a stubborn core.

Colors are stored as uint8 with ``BLUE = 1`` and ``RED = 0``. Each round
every agent samples two neighbors uniformly with replacement and adopts
their color when the two agree. In p-biased mode each sample is
independently replaced by the bias color with probability ``p``. Updates
read only the previous round's colors.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .graph import Graph
from .partition import Partition

RED = 0
BLUE = 1


class Mode(str, enum.Enum):
    PLAIN = "plain"
    BIASED = "p-biased"
    STUBBORN_CORE = "stubborn-core"


class Outcome(str, enum.Enum):
    CORE = "C"
    PERIPHERY = "P"
    METASTABLE = "M"


@dataclass(frozen=True)
class DynamicsParams:
    mode: Mode = Mode.PLAIN
    p: float = 0.0
    sigma: int = BLUE
    seed: int = 0
    max_rounds: int = 1000
    consensus_fraction: float = 0.95

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if self.sigma not in (RED, BLUE):
            raise ValueError("sigma must be RED (0) or BLUE (1)")
        if not 0.5 < self.consensus_fraction <= 1.0:
            raise ValueError("consensus_fraction must be in (1/2, 1]")
        if self.max_rounds < 0:
            raise ValueError("max_rounds must be nonnegative")

    @property
    def effective_p(self) -> float:
        return self.p if self.mode is Mode.BIASED else 0.0


@dataclass(frozen=True, eq=False)
class ColorConfig:
    colors: np.ndarray
    blue_volume: int
    round: int = 0

    @classmethod
    def from_colors(cls, g: Graph, colors, rnd: int = 0) -> "ColorConfig":
        colors = np.ascontiguousarray(colors, dtype=np.uint8)
        if colors.shape != (g.n,):
            raise ValueError("one color per agent required")
        return cls(colors, int(g.degrees[colors.astype(bool)].sum()), rnd)


def core_blue(g: Graph, partition: Partition) -> ColorConfig:
    """Core blue, periphery red."""
    return ColorConfig.from_colors(g, partition.in_core.astype(np.uint8))


def uniform(g: Graph, color: int) -> ColorConfig:
    return ColorConfig.from_colors(g, np.full(g.n, color, dtype=np.uint8))


@dataclass(frozen=True)
class RoundStats:
    round: int
    blue_volume: int
    red_volume: int
    phi_min: float
    phi_max: float

    CSV_HEADER = "round,blue_volume,red_volume,phi_min,phi_max"

    def csv_row(self) -> str:
        return f"{self.round},{self.blue_volume},{self.red_volume},{self.phi_min!r},{self.phi_max!r}"


@dataclass(frozen=True)
class TrialOutcome:
    label: Outcome
    rounds: int
    final_blue_volume: int


@dataclass
class RunResult:
    outcome: TrialOutcome
    final: ColorConfig
    blue_volumes: np.ndarray
    """Blue volume after each round, index 0 being the initial configuration."""
    stats: list[RoundStats] = field(default_factory=list)
    core_blue_volumes: np.ndarray | None = None


def _check_setup(g: Graph, params: DynamicsParams, partition: Partition | None):
    if g.n == 0 or (g.degrees == 0).any():
        raise ValueError("every agent needs at least one neighbor")
    if params.mode is Mode.STUBBORN_CORE and partition is None:
        raise ValueError("stubborn-core mode needs a partition")


def _frozen(params: DynamicsParams, partition: Partition | None):
    if params.mode is Mode.STUBBORN_CORE:
        return np.ascontiguousarray(partition.in_core, dtype=np.uint8)
    return None


def phi_extremes(g: Graph, colors: np.ndarray) -> tuple[float, float]:
    """Min and max over agents of the fraction of red neighbors."""
    blue_nbrs = np.bincount(g.sources(), weights=colors[g.indices], minlength=g.n)
    phi = 1.0 - blue_nbrs / g.degrees
    return float(phi.min()), float(phi.max())


def round_stats(g: Graph, cfg: ColorConfig) -> RoundStats:
    lo, hi = phi_extremes(g, cfg.colors)
    return RoundStats(cfg.round, cfg.blue_volume, 2 * g.m - cfg.blue_volume, lo, hi)


def step(g: Graph, cfg: ColorConfig, params: DynamicsParams,
         partition: Partition | None = None) -> ColorConfig:
    """Advance one synchronous round."""
    _check_setup(g, params, partition)
    out = np.empty(g.n, dtype=np.uint8)
    blue = kernels.two_choices_round(g.indptr, g.indices, cfg.colors, out, _frozen(params, partition),
                                     params.effective_p, params.sigma,
                                     kernels.seed_key(params.seed), cfg.round)
    return ColorConfig(out, int(blue), cfg.round + 1)


def consensus_volume(total_volume: int, fraction: float) -> int:
    """Smallest integer volume that counts as almost-consensus."""
    return math.ceil(Fraction(repr(float(fraction))) * total_volume)


def classify_volume(blue_volume: int, total_volume: int, threshold: int,
                    stop_on=(Outcome.CORE, Outcome.PERIPHERY)) -> Outcome | None:
    if blue_volume >= threshold and Outcome.CORE in stop_on:
        return Outcome.CORE
    if total_volume - blue_volume >= threshold and Outcome.PERIPHERY in stop_on:
        return Outcome.PERIPHERY
    return None


def run(g: Graph, init: ColorConfig, params: DynamicsParams, partition: Partition | None = None,
        stats_every: int = 0, stop_on=(Outcome.CORE, Outcome.PERIPHERY)) -> RunResult:
    """Iterate until one color holds ``consensus_fraction`` of the volume or
    ``max_rounds`` elapse.

    Blue consensus is labelled ``Outcome.CORE`` (the core starts blue by
    convention), red consensus ``Outcome.PERIPHERY``. With ``stats_every > 0``
    a :class:`RoundStats` is recorded every that many rounds and at the end.
    When ``partition`` is given the blue volume inside the core is tracked
    every round as well.

    ``stop_on`` lists the consensus outcomes that end the run; pass
    ``(Outcome.CORE,)`` to keep going from an all-red start, or ``()`` for a
    fixed horizon. A run that never stops is labelled metastable.
    """
    stop_on = tuple(Outcome(o) for o in stop_on)
    _check_setup(g, params, partition)
    total = 2 * g.m
    threshold = consensus_volume(total, params.consensus_fraction)
    frozen = _frozen(params, partition)
    key = kernels.seed_key(params.seed)
    p, sigma = params.effective_p, params.sigma
    deg = g.degrees

    a = init.colors.copy()
    b = np.empty_like(a)
    blue = init.blue_volume
    rnd = init.round
    volumes = [blue]
    core_idx = core_deg = None
    core_volumes = None
    if partition is not None:
        core_idx = partition.core
        core_deg = deg[core_idx]
        core_volumes = [int(core_deg @ a[core_idx])]
    stats = []
    if stats_every:
        stats.append(round_stats(g, ColorConfig(a, blue, rnd)))

    label = classify_volume(blue, total, threshold, stop_on)
    done = 0
    while label is None and done < params.max_rounds:
        blue = kernels.two_choices_round(g.indptr, g.indices, a, b, frozen, p, sigma, key, rnd)
        a, b = b, a
        rnd += 1
        done += 1
        volumes.append(int(blue))
        if core_idx is not None:
            core_volumes.append(int(core_deg @ a[core_idx]))
        if stats_every and done % stats_every == 0:
            stats.append(round_stats(g, ColorConfig(a, int(blue), rnd)))
        label = classify_volume(blue, total, threshold, stop_on)

    final = ColorConfig(a, int(blue), rnd)
    if stats_every and stats[-1].round != rnd:
        stats.append(round_stats(g, final))
    outcome = TrialOutcome(label if label is not None else Outcome.METASTABLE, done, int(blue))
    return RunResult(outcome, final, np.asarray(volumes, dtype=np.int64), stats,
                     None if core_volumes is None else np.asarray(core_volumes, dtype=np.int64))


def replay_batch(g: Graph, init: ColorConfig, params: DynamicsParams, trials: int, rounds: int,
                 partition: Partition | None = None) -> np.ndarray:
    """Final colors of ``trials`` independent runs of ``rounds`` rounds.

    Trial ``i`` uses seed ``params.seed + i``; the result has shape ``(trials, n)``.
    """
    _check_setup(g, params, partition)
    if init.round != 0:
        raise ValueError("batched replays start at round 0")
    return kernels.simulate_batch(g.indptr, g.indices, init.colors, _frozen(params, partition),
                                  params.effective_p, params.sigma, params.seed, trials, rounds)


def state_index(colors: np.ndarray) -> np.ndarray:
    """Encode color rows as integers, bit v set when agent v is blue."""
    colors = np.atleast_2d(colors).astype(np.int64)
    return colors @ (1 << np.arange(colors.shape[1], dtype=np.int64))


MAX_EXACT_AGENTS = 12


def exact_distribution(g: Graph, init: ColorConfig, params: DynamicsParams, rounds: int,
                       partition: Partition | None = None) -> np.ndarray:
    """Exact law of the configuration after ``rounds`` rounds.

    Returns a probability vector over the ``2**n`` states indexed as in
    :func:`state_index`. Agents update independently given the current
    configuration; each pick sees blue with probability
    ``p*[sigma is blue] + (1-p) * (blue neighbor fraction)``.
    """
    _check_setup(g, params, partition)
    n = g.n
    if n > MAX_EXACT_AGENTS:
        raise ValueError(f"exact distribution limited to {MAX_EXACT_AGENTS} agents, got {n}")
    states = np.arange(1 << n, dtype=np.int64)
    bits = ((states[:, None] >> np.arange(n)) & 1).astype(np.float64)
    adj = np.zeros((n, n))
    adj[g.sources(), g.indices] = 1.0
    blue_frac = bits @ adj.T / g.degrees
    p = params.effective_p
    beta = p * (params.sigma == BLUE) + (1.0 - p) * blue_frac
    q_blue = beta ** 2 + bits * 2.0 * beta * (1.0 - beta)
    frozen = _frozen(params, partition)
    if frozen is not None:
        q_blue[:, frozen.astype(bool)] = bits[:, frozen.astype(bool)]
    trans = np.ones((1 << n, 1 << n))
    for v in range(n):
        target_blue = bits[:, v].astype(bool)
        trans *= np.where(target_blue[None, :], q_blue[:, v][:, None], 1.0 - q_blue[:, v][:, None])
    dist = np.zeros(1 << n)
    dist[int(state_index(init.colors)[0])] = 1.0
    for _ in range(rounds):
        dist = dist @ trans
    return dist
