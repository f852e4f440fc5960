"""Core extraction: k-rich-club at the symmetry point, and densest-core.

Densest-core repeatedly peels the remaining graph (greedy min-degree
removal, the classic 1/2-approximation for densest subgraph) and moves the
densest suffix whose addition keeps the core at no more than half of the
original volume into the core. It stops once no such suffix exists.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .graph import Graph
from .partition import Partition, as_mask


class ExtractionError(ValueError):
    """Raised when no core can be extracted from a graph."""


def degree_ranking(g: Graph) -> np.ndarray:
    """Agents by decreasing degree, ties by increasing id."""
    return np.lexsort((np.arange(g.n), -g.degrees))


def k_rich_club(g: Graph, k: int) -> Partition:
    """Core = the ``k`` highest-degree agents."""
    if not 1 <= k < g.n:
        raise ValueError(f"k must be in [1, {g.n - 1}], got {k}")
    return Partition.from_core(g, degree_ranking(g)[:k])


def symmetry_point(g: Graph) -> int:
    """Smallest k whose top-k degree set holds at least half the volume."""
    if g.n < 2:
        raise ValueError("need at least two agents")
    cum = np.cumsum(g.degrees[degree_ranking(g)])
    return int(np.searchsorted(2 * cum, cum[-1], side="left")) + 1


@dataclass(frozen=True)
class PeelingTrace:
    """Audit record of one peeling pass.

    ``best_prefix_index`` counts removed agents, so the chosen set is
    ``removal_order[best_prefix_index:]``. ``denser_over_cap`` counts the
    suffixes denser than the chosen one that were skipped for exceeding the
    volume cap (peeling continues past them).
    """

    removal_order: np.ndarray
    best_prefix_density: Fraction | None
    best_prefix_index: int
    denser_over_cap: int = 0

    @property
    def chosen(self) -> np.ndarray:
        if self.best_prefix_density is None:
            return np.empty(0, dtype=np.int64)
        return np.sort(self.removal_order[self.best_prefix_index:])


def peel(g: Graph, weights: np.ndarray | None = None, volume_cap: int | None = None,
         base_volume: int = 0) -> PeelingTrace:
    """One greedy peeling pass with the volume-capped best-suffix rule.

    A suffix is eligible when ``base_volume + weights(suffix) <= volume_cap``
    and its density is positive; among eligible suffixes the first densest
    one (in removal order) wins.
    """
    order, rdeg = kernels.peel(g.indptr, g.indices)
    n = g.n
    if weights is None:
        weights = g.degrees
    # index i describes the suffix left after removing order[:i]
    removed = np.concatenate([[0], np.cumsum(rdeg)])
    remaining = n - np.arange(n + 1)
    edges_left = g.m - removed
    weight_left = int(weights.sum()) - np.concatenate([[0], np.cumsum(weights[order])])
    nonempty = remaining > 0
    dens = np.zeros(n + 1)
    dens[nonempty] = 2.0 * edges_left[nonempty] / remaining[nonempty]
    feasible = nonempty & (dens > 0)
    if volume_cap is not None:
        feasible &= (base_volume + weight_left) <= volume_cap
    if not feasible.any():
        return PeelingTrace(order, None, n, 0)
    top = dens[feasible].max()
    # exact tie-break among floating-point near-maxima
    near = np.flatnonzero(feasible & (dens >= top * (1 - 1e-9)))
    exact = [Fraction(2 * int(edges_left[i]), int(remaining[i])) for i in near]
    best_val = max(exact)
    i = int(near[exact.index(best_val)])
    denser = int(np.count_nonzero(nonempty & ~feasible & (dens > top * (1 + 1e-12))))
    return PeelingTrace(order, best_val, i, denser)


def constrained_densest_subgraph(g: Graph, volume_cap: int | None, existing_core=(),
                                 *, return_trace: bool = False):
    """Densest peeling suffix of ``g`` minus ``existing_core`` under a volume cap.

    Volumes are degrees in ``g``; the cap bounds ``vol(existing_core) +
    vol(suffix)``. ``volume_cap=None`` disables the cap. Returns the chosen
    agent ids of ``g`` (empty when nothing qualifies).
    """
    core_mask = as_mask(g, existing_core) if len(existing_core) else np.zeros(g.n, dtype=bool)
    rest = np.flatnonzero(~core_mask)
    sub = g.subgraph(rest) if core_mask.any() else g
    trace = peel(sub, weights=g.degrees[rest], volume_cap=volume_cap,
                 base_volume=int(g.degrees[core_mask].sum()))
    chosen = rest[trace.chosen]
    return (chosen, trace) if return_trace else chosen


def densest_core(g: Graph) -> Partition:
    """Accumulate capped densest subgraphs until none fits; core volume <= vol(V)/2."""
    cap = g.m  # half of vol(V) = 2m
    core = np.zeros(g.n, dtype=bool)
    while True:
        found = constrained_densest_subgraph(g, cap, core)
        if len(found) == 0:
            break
        core[found] = True
        if core.all():
            break
    if not core.any():
        raise ExtractionError("no extractable core")
    return Partition.from_core(g, core)


def extract(g: Graph, method: str) -> Partition:
    if method == "densest":
        return densest_core(g)
    if method == "krich":
        return k_rich_club(g, min(symmetry_point(g), g.n - 1))
    raise ValueError(f"unknown core method {method!r}")
