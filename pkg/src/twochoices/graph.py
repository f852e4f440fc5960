"""Undirected simple graphs in CSR form, plus edge-list ingestion.

Agents are dense integer ids ``0..n-1``. External labels from the input
file are kept alongside so reports can name agents the way the dataset does.
"""
from __future__ import annotations

import gzip
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

COMMENT_PREFIXES = ("#", "%")


class GraphFormatError(ValueError):
    """Raised for unparseable edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGraphError(ValueError):
    """Raised when a graph has no edges left to run dynamics on."""


@dataclass(frozen=True)
class EdgeList:
    """Raw (u, v) pairs over dense ids, in file order.

    Duplicates and self-loops are preserved; :func:`normalize` removes them.
    """

    pairs: np.ndarray
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    ``indices[indptr[v]:indptr[v+1]]`` is the sorted neighbor list of ``v``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def sources(self) -> np.ndarray:
        """Source id of every directed adjacency entry (parallel to ``indices``)."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)

    def edges(self) -> np.ndarray:
        """Undirected edges as an ``(m, 2)`` array with ``u < v``, sorted."""
        src = self.sources()
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def subgraph(self, nodes: Iterable[int]) -> "Graph":
        """Induced subgraph; ids are re-densified preserving relative order."""
        nodes = np.unique(np.asarray(list(nodes) if not isinstance(nodes, np.ndarray) else nodes, dtype=np.int64))
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes), dtype=np.int64)
        src = self.sources()
        keep = (remap[src] >= 0) & (remap[self.indices] >= 0)
        new_src = remap[src[keep]]
        new_dst = remap[self.indices[keep]]
        indptr = np.zeros(len(nodes) + 1, dtype=np.int64)
        np.cumsum(np.bincount(new_src, minlength=len(nodes)), out=indptr[1:])
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[i] for i in nodes)
        return Graph(indptr, new_dst.astype(np.int64), labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    __hash__ = None

    @classmethod
    def from_edges(cls, n: int, pairs, labels: Sequence[str] | None = None) -> "Graph":
        """Build a simple graph on ``n`` agents, dropping loops and parallel edges."""
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        u, v = pairs[:, 0], pairs[:, 1]
        keep = u != v
        u, v = u[keep], v[keep]
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        keys = np.unique(src * n + dst)
        src, dst = keys // n, keys % n
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst.astype(np.int64), tuple(labels) if labels is not None else None)


def parse_edge_list(text: bytes | str, comment_prefixes: Sequence[str] = COMMENT_PREFIXES) -> EdgeList:
    """Parse a whitespace-separated edge list (SNAP / KONECT style).

    Tokens past the second on each line (weights, timestamps) are ignored.
    Labels get dense ids in order of first appearance.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    ids: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    prefixes = tuple(comment_prefixes)
    for lineno, line in enumerate(io.StringIO(text), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(prefixes):
            continue
        tokens = stripped.split()
        if len(tokens) < 2:
            raise GraphFormatError(f"expected at least two tokens, got {stripped!r}", lineno)
        a = ids.setdefault(tokens[0], len(ids))
        b = ids.setdefault(tokens[1], len(ids))
        pairs.append((a, b))
    if not pairs:
        raise GraphFormatError("no edges in input")
    return EdgeList(np.array(pairs, dtype=np.int64), tuple(ids))


def normalize(edges: EdgeList) -> Graph:
    """Drop orientation, self-loops and parallel edges."""
    g = Graph.from_edges(edges.n, edges.pairs, edges.labels)
    if g.m == 0:
        raise EmptyGraphError("graph has no edges after removing loops")
    return g


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component.

    Ties on node count go to the component holding the smallest id.
    """
    adj = csr_matrix((np.ones(len(g.indices), dtype=np.int8), g.indices, g.indptr), shape=(g.n, g.n))
    ncomp, comp = connected_components(adj, directed=False)
    if ncomp == 1:
        return g
    sizes = np.bincount(comp, minlength=ncomp)
    first_member = np.full(ncomp, g.n, dtype=np.int64)
    np.minimum.at(first_member, comp, np.arange(g.n))
    best = max(range(ncomp), key=lambda c: (sizes[c], -first_member[c]))
    return g.subgraph(np.flatnonzero(comp == best))


def is_connected(g: Graph) -> bool:
    adj = csr_matrix((np.ones(len(g.indices), dtype=np.int8), g.indices, g.indptr), shape=(g.n, g.n))
    return connected_components(adj, directed=False)[0] == 1


def volume(g: Graph, s) -> int:
    """Sum of degrees over the agent set ``s``."""
    s = np.asarray(list(s) if not isinstance(s, np.ndarray) else s)
    if s.dtype == bool:
        return int(g.degrees[s].sum())
    if s.size == 0:
        return 0
    return int(g.degrees[s.astype(np.int64)].sum())


def serialize(g: Graph, use_labels: bool = False) -> str:
    """Canonical text form: one ``u v`` line per edge, ``u < v``, sorted by id."""
    e = g.edges()
    if use_labels and g.labels is not None:
        lab = g.labels
        return "".join(f"{lab[u]} {lab[v]}\n" for u, v in e.tolist())
    return "".join(f"{u} {v}\n" for u, v in e.tolist())


def read_edge_list(path: str | Path) -> EdgeList:
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rb") as fh:
        return parse_edge_list(fh.read())


def load_graph(path: str | Path) -> Graph:
    """Read, normalize and restrict to the largest component."""
    return largest_component(normalize(read_edge_list(path)))
