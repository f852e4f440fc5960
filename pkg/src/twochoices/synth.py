"""Synthetic core-periphery networks with exact per-agent neighbor ratios.

The graph is the union of three blocks: a regular graph on the core, a
regular graph on the periphery, and a biregular bipartite graph between
them. Every core agent ends up with exactly ``c_r`` times as many core
neighbors as periphery neighbors, every periphery agent with exactly
``c_d`` times as many core neighbors as periphery neighbors.

Blocks are drawn by stub pairing. Colliding pairs (loops, repeated edges)
are re-paired among themselves and, when that stalls, fixed with degree
preserving edge switches.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, is_connected
from .partition import Partition

MAX_BLOCK_RESTARTS = 1000
MAX_CONNECT_RETRIES = 50


class SpecError(ValueError):
    """A synthetic spec violates an integrality or handshake constraint."""


class SynthesisError(RuntimeError):
    """Generation failed (infeasible degrees or retries exhausted)."""


class SmallDegreeWarning(UserWarning):
    pass


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class SynthSpec:
    n_periphery: int
    epsilon: float
    d_core_out: int
    d_peri_in: int
    c_r: Fraction
    c_d: Fraction
    seed: int = 0
    core_size: int | None = None
    """Overrides round(n_periphery ** epsilon) when set."""

    def __post_init__(self):
        object.__setattr__(self, "c_r", to_fraction(self.c_r))
        object.__setattr__(self, "c_d", to_fraction(self.c_d))


@dataclass(frozen=True)
class BlockDegrees:
    core_size: int
    n_periphery: int
    core_internal: int
    core_external: int
    peri_core: int
    peri_internal: int

    @property
    def n_total(self) -> int:
        return self.core_size + self.n_periphery

    @property
    def core_degree(self) -> int:
        return self.core_internal + self.core_external

    @property
    def periphery_degree(self) -> int:
        return self.peri_core + self.peri_internal


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value <= 0:
        raise SpecError(f"{what} = {value} is not a positive integer")
    return int(value)


def validate(spec: SynthSpec) -> BlockDegrees:
    """Check integrality, handshake and parity; return the four block degrees."""
    if not 0.5 <= spec.epsilon <= 1.0:
        raise SpecError(f"epsilon must be in [1/2, 1], got {spec.epsilon}")
    if spec.n_periphery < 2:
        raise SpecError("periphery needs at least two agents")
    k = spec.core_size if spec.core_size is not None else round(spec.n_periphery ** spec.epsilon)
    if k < 1:
        raise SpecError("core size must be positive")
    if spec.d_core_out <= 0 or spec.d_peri_in <= 0:
        raise SpecError("d_core_out and d_peri_in must be positive")
    core_internal = _integral(spec.c_r * spec.d_core_out, "core-internal degree c_r * d_core_out")
    peri_core = _integral(spec.c_d * spec.d_peri_in, "periphery core-degree c_d * d_peri_in")
    if k * spec.d_core_out != spec.n_periphery * peri_core:
        raise SpecError(
            f"handshake violated: |C| * d_core_out = {k * spec.d_core_out} but "
            f"|P| * peri_core = {spec.n_periphery * peri_core}")
    if (k * core_internal) % 2:
        raise SpecError(f"parity: |C| * core-internal = {k * core_internal} is odd")
    if (spec.n_periphery * spec.d_peri_in) % 2:
        raise SpecError(f"parity: |P| * d_peri_in = {spec.n_periphery * spec.d_peri_in} is odd")
    return BlockDegrees(k, spec.n_periphery, core_internal, spec.d_core_out, peri_core, spec.d_peri_in)


def _check_realizable(b: BlockDegrees):
    problems = []
    if b.core_internal > b.core_size - 1:
        problems.append(f"core-internal degree {b.core_internal} exceeds |C| - 1 = {b.core_size - 1}")
    if b.peri_internal > b.n_periphery - 1:
        problems.append(f"periphery-internal degree {b.peri_internal} exceeds |P| - 1 = {b.n_periphery - 1}")
    if b.core_external > b.n_periphery:
        problems.append(f"core-external degree {b.core_external} exceeds |P| = {b.n_periphery}")
    if b.peri_core > b.core_size:
        problems.append(f"periphery core-degree {b.peri_core} exceeds |C| = {b.core_size}")
    if problems:
        raise SynthesisError("no simple graph has these degrees: " + "; ".join(problems))


def _first_occurrence(keys: np.ndarray) -> np.ndarray:
    mask = np.zeros(len(keys), dtype=bool)
    mask[np.unique(keys, return_index=True)[1]] = True
    return mask


def _pair_stubs(left: np.ndarray, right: np.ndarray, n_right: int, bipartite: bool,
                rng: np.random.Generator) -> np.ndarray | None:
    """Pair stubs; return sorted edge keys ``u * n_right + v`` or None on failure.

    For a non-bipartite block ``left`` and ``right`` are the two halves of
    one shuffled stub list and keys are normalized to ``u < v``.
    """
    accepted = np.empty(0, dtype=np.int64)
    stalls = 0
    while left.size:
        if bipartite:
            rng.shuffle(right)
            u, v = left, right
        else:
            stubs = np.concatenate([left, right])
            rng.shuffle(stubs)
            u, v = np.minimum(stubs[0::2], stubs[1::2]), np.maximum(stubs[0::2], stubs[1::2])
        keys = u * n_right + v
        ok = _first_occurrence(keys) & ~np.isin(keys, accepted, assume_unique=False)
        if not bipartite:
            ok &= u != v
        if ok.any():
            accepted = np.union1d(accepted, keys[ok])
            stalls = 0
        else:
            stalls += 1
        left, right = u[~ok], v[~ok]
        if left.size and (stalls >= 3 or left.size <= 4):
            return _switch_repair(accepted, left, right, n_right, bipartite, rng)
    return accepted


def _switch_repair(accepted: np.ndarray, left: np.ndarray, right: np.ndarray, n_right: int,
                   bipartite: bool, rng: np.random.Generator) -> np.ndarray | None:
    """Absorb leftover stub pairs by degree-preserving switches with accepted edges."""
    edges = set(accepted.tolist())
    pool = accepted.tolist()

    def key(a, b):
        if not bipartite and a > b:
            a, b = b, a
        return a * n_right + b

    pending = list(zip(left.tolist(), right.tolist()))
    budget = 1000 * (len(pending) + 10)
    while pending and budget and pool:
        budget -= 1
        u, v = pending[-1]
        direct = key(u, v)
        if (bipartite or u != v) and direct not in edges:
            edges.add(direct)
            pool.append(direct)
            pending.pop()
            continue
        idx = int(rng.integers(len(pool)))
        x, y = divmod(pool[idx], n_right)
        if not bipartite and rng.random() < 0.5:
            x, y = y, x
        if bipartite:
            # (u, v) + (x, y) -> (u, y) + (x, v)
            k1, k2 = key(u, y), key(x, v)
        else:
            # (u, v) + (x, y) -> (u, x) + (v, y)
            k1, k2 = key(u, x), key(v, y)
        if u == x or v == y or k1 == k2 or k1 in edges or k2 in edges:
            continue
        edges.discard(pool[idx])
        edges.update((k1, k2))
        pool[idx] = k1
        pool.append(k2)
        pending.pop()
    if pending:
        return None
    return np.array(sorted(edges), dtype=np.int64)


def _regular_keys(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    if d == 0:
        return np.empty(0, dtype=np.int64)
    if d > (n - 1) // 2 + 1 and n <= 20000:
        # dense: take the complement of a sparse regular graph
        sparse = _regular_keys(n, n - 1 - d, rng)
        iu, ju = np.triu_indices(n, 1)
        full = iu.astype(np.int64) * n + ju
        return np.setdiff1d(full, sparse, assume_unique=True)
    for _ in range(MAX_BLOCK_RESTARTS):
        stubs = np.repeat(np.arange(n, dtype=np.int64), d)
        half = stubs.size // 2
        keys = _pair_stubs(stubs[:half], stubs[half:], n, False, rng)
        if keys is not None:
            return keys
    raise SynthesisError(f"could not draw a simple {d}-regular graph on {n} agents; "
                         "try larger degrees or population")


def _biregular_keys(n_left: int, d_left: int, n_right: int, d_right: int,
                    rng: np.random.Generator) -> np.ndarray:
    if d_left == 0:
        return np.empty(0, dtype=np.int64)
    if 2 * d_left > n_right and n_left * n_right <= 50_000_000:
        # dense: complement of a sparse biregular graph
        sparse = _biregular_keys(n_left, n_right - d_left, n_right, n_left - d_right, rng)
        full = np.arange(n_left * n_right, dtype=np.int64)
        return np.setdiff1d(full, sparse, assume_unique=True)
    for _ in range(MAX_BLOCK_RESTARTS):
        left = np.repeat(np.arange(n_left, dtype=np.int64), d_left)
        right = np.repeat(np.arange(n_right, dtype=np.int64), d_right)
        keys = _pair_stubs(left, right, n_right, True, rng)
        if keys is not None:
            return keys
    raise SynthesisError("could not draw a simple biregular cut; try larger degrees or population")


def random_regular_graph(n: int, d: int, seed: int = 0) -> Graph:
    """Uniform-ish simple d-regular graph on n agents (pairing with repair)."""
    if (n * d) % 2 or not 0 < d < n:
        raise ValueError("need 0 < d < n and n * d even")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_CONNECT_RETRIES):
        keys = _regular_keys(n, d, rng)
        g = Graph.from_edges(n, np.column_stack([keys // n, keys % n]))
        if is_connected(g):
            return g
    raise SynthesisError("could not draw a connected regular graph")


def generate(spec: SynthSpec) -> tuple[Graph, Partition]:
    """Draw the network; core agents are ids ``0..|C|-1``."""
    b = validate(spec)
    _check_realizable(b)
    min_degree = min(b.core_degree, b.periphery_degree)
    if min_degree < 2 * math.log2(b.n_total):
        warnings.warn(f"minimum degree {min_degree} is below 2*log2(n) = {2 * math.log2(b.n_total):.1f}",
                      SmallDegreeWarning, stacklevel=2)
    k, n = b.core_size, b.n_periphery
    rng = np.random.default_rng(spec.seed)
    for _ in range(MAX_CONNECT_RETRIES):
        core_keys = _regular_keys(k, b.core_internal, rng)
        peri_keys = _regular_keys(n, b.peri_internal, rng)
        cut_keys = _biregular_keys(k, b.core_external, n, b.peri_core, rng)
        pairs = np.concatenate([
            np.column_stack([core_keys // k, core_keys % k]),
            np.column_stack([peri_keys // n, peri_keys % n]) + k,
            np.column_stack([cut_keys // n, cut_keys % n + k]),
        ])
        g = Graph.from_edges(b.n_total, pairs)
        if is_connected(g):
            return g, Partition.from_core(g, np.arange(k))
    raise SynthesisError(f"no connected sample in {MAX_CONNECT_RETRIES} attempts")
