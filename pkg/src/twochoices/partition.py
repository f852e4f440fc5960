"""Cut sets, density, dominance and robustness of a core/periphery split.

Cut sizes count *ordered* pairs: ``cut_size(g, A, B)`` is the number of
``(u, v)`` with ``u in A``, ``v in B`` and ``{u, v}`` an edge. An internal
edge of ``A`` therefore contributes 2 to ``cut_size(g, A, A)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph

INF = math.inf


def as_mask(g: Graph, s) -> np.ndarray:
    if isinstance(s, np.ndarray) and s.dtype == bool:
        if s.shape != (g.n,):
            raise ValueError("mask length does not match graph")
        return s
    mask = np.zeros(g.n, dtype=bool)
    idx = np.fromiter(s, dtype=np.int64) if not isinstance(s, np.ndarray) else s.astype(np.int64)
    mask[idx] = True
    return mask


def cut_size(g: Graph, a, b) -> int:
    """Number of ordered pairs (u, v), u in a, v in b, joined by an edge."""
    am, bm = as_mask(g, a), as_mask(g, b)
    return int(np.count_nonzero(am[g.sources()] & bm[g.indices]))


def density(g: Graph, x) -> Fraction:
    """``|c(X, X)| / |X|`` with the ordered-pair convention."""
    xm = as_mask(g, x)
    size = int(xm.sum())
    if size == 0:
        raise ValueError("density of the empty set is undefined")
    return Fraction(cut_size(g, xm, xm), size)


def _ratio(num: int, den: int, what: str) -> Fraction | float:
    if den == 0:
        if num == 0:
            raise ValueError(f"{what} undefined: both cut counts are zero")
        return INF
    return Fraction(num, den)


@dataclass(frozen=True)
class Partition:
    """Core/periphery bipartition with cached cut and volume counts."""

    in_core: np.ndarray
    cut_cc: int
    cut_cp: int
    cut_pp: int
    vol_core: int
    vol_periphery: int

    @classmethod
    def from_core(cls, g: Graph, core) -> "Partition":
        mask = as_mask(g, core).copy()
        if not mask.any() or mask.all():
            raise ValueError("core and periphery must both be nonempty")
        mask.setflags(write=False)
        src_core = mask[g.sources()]
        dst_core = mask[g.indices]
        deg = g.degrees
        return cls(
            in_core=mask,
            cut_cc=int(np.count_nonzero(src_core & dst_core)),
            cut_cp=int(np.count_nonzero(src_core & ~dst_core)),
            cut_pp=int(np.count_nonzero(~src_core & ~dst_core)),
            vol_core=int(deg[mask].sum()),
            vol_periphery=int(deg[~mask].sum()),
        )

    @property
    def cut_pc(self) -> int:
        return self.cut_cp

    @property
    def core(self) -> np.ndarray:
        return np.flatnonzero(self.in_core)

    @property
    def periphery(self) -> np.ndarray:
        return np.flatnonzero(~self.in_core)

    @property
    def core_size(self) -> int:
        return int(self.in_core.sum())


def dominance(g: Graph, p: Partition) -> Fraction | float:
    """c_d = |c(C, P)| / |c(P, P)|; ``math.inf`` when the periphery has no internal edge."""
    return _ratio(p.cut_cp, p.cut_pp, "dominance")


def robustness(g: Graph, p: Partition) -> Fraction | float:
    """c_r = |c(C, C)| / |c(P, C)|; ``math.inf`` when the core has no outside edge."""
    return _ratio(p.cut_cc, p.cut_pc, "robustness")


def per_agent_ratios(g: Graph, p: Partition) -> tuple[np.ndarray, np.ndarray]:
    """Per-agent neighbor ratios.

    Core agents get (core neighbors / periphery neighbors); periphery agents
    get (core neighbors / periphery neighbors) as well, i.e. the per-agent
    robustness and dominance. Division by zero yields ``inf``.
    """
    core_nbrs = np.bincount(g.sources()[p.in_core[g.indices]], minlength=g.n)
    peri_nbrs = g.degrees - core_nbrs
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(peri_nbrs > 0, core_nbrs / np.maximum(peri_nbrs, 1), np.inf)
    return ratio[p.in_core], ratio[~p.in_core]


def _stats(values: np.ndarray) -> dict[str, float]:
    return {"min": float(values.min()), "mean": float(values.mean()), "max": float(values.max())}


def metrics_record(g: Graph, p: Partition) -> dict:
    """Flat key/value metrics report for a partition."""
    core_r, peri_r = per_agent_ratios(g, p)
    d_core = density(g, p.in_core)
    d_all = Fraction(2 * g.m, g.n)
    return {
        "cut_convention": "ordered-pairs",
        "ratio_kind": "global",
        "n": g.n,
        "m": g.m,
        "core_size": p.core_size,
        "vol_core": p.vol_core,
        "vol_periphery": p.vol_periphery,
        "c_r": float(robustness(g, p)),
        "c_d": float(dominance(g, p)),
        "core_ratio": _stats(core_r),
        "periphery_ratio": _stats(peri_r),
        "density_core": float(d_core),
        "density_all": float(d_all),
        "density_axiom": d_core > d_all,
    }
