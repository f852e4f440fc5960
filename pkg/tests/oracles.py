"""Brute-force reference computations used by the tests."""
from fractions import Fraction
from itertools import combinations

import numpy as np


def adjacency(g):
    a = np.zeros((g.n, g.n), dtype=np.int64)
    a[g.sources(), g.indices] = 1
    return a


def ordered_cut(g, a_set, b_set):
    adj = adjacency(g)
    return int(sum(adj[u, v] for u in a_set for v in b_set))


def best_density(g, max_volume=None):
    """Max |c(X,X)|/|X| over nonempty X by enumeration (optionally volume-capped)."""
    adj = adjacency(g)
    deg = adj.sum(1)
    best, best_set = None, None
    for size in range(1, g.n + 1):
        for x in combinations(range(g.n), size):
            if max_volume is not None and deg[list(x)].sum() > max_volume:
                continue
            ix = np.ix_(x, x)
            d = Fraction(int(adj[ix].sum()), size)
            if best is None or d > best:
                best, best_set = d, x
    return best, best_set
