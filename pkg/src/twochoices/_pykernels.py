"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Same signatures, same outputs bit for bit; used when the extension is not
built or when ``TWOCHOICES_BACKEND=python``.
"""
from __future__ import annotations

import heapq

import numpy as np

from . import rng


def seed_key(seed: int) -> int:
    return int(rng.seed_key(seed))


def _observed(indptr, indices, colors, akey, p, sigma, starts, deg):
    c0 = colors[indices[starts + rng.bounded(rng.slot_word(akey, rng.SLOT_PICK0), deg)]]
    c1 = colors[indices[starts + rng.bounded(rng.slot_word(akey, rng.SLOT_PICK1), deg)]]
    if p > 0.0:
        c0 = np.where(rng.unit(rng.slot_word(akey, rng.SLOT_BIAS0)) < p, np.uint8(sigma), c0)
        c1 = np.where(rng.unit(rng.slot_word(akey, rng.SLOT_BIAS1)) < p, np.uint8(sigma), c1)
    return c0, c1


def two_choices_round(indptr, indices, colors, out, frozen, p, sigma, key, rnd):
    n = len(indptr) - 1
    starts = indptr[:-1]
    deg = np.diff(indptr)
    akey = rng.agent_key(rng.round_key(np.uint64(key), rnd), np.arange(n, dtype=np.uint64))
    c0, c1 = _observed(indptr, indices, colors, akey, p, sigma, starts, deg)
    new = np.where(c0 == c1, c0, colors).astype(np.uint8)
    if frozen is not None:
        new = np.where(frozen.astype(bool), colors, new)
    out[:] = new
    return int(deg[out.astype(bool)].sum())


def simulate_batch(indptr, indices, colors0, frozen, p, sigma, seed0, trials, rounds):
    n = len(indptr) - 1
    starts = indptr[:-1]
    deg = np.diff(indptr)
    with np.errstate(over="ignore"):
        seeds = np.uint64(seed0) + np.arange(trials, dtype=np.uint64)
    keys = rng.seed_key(seeds)[:, None]
    agents = np.arange(n, dtype=np.uint64)[None, :]
    state = np.broadcast_to(np.asarray(colors0, dtype=np.uint8), (trials, n)).copy()
    rows = np.arange(trials)[:, None]
    for t in range(rounds):
        akey = rng.agent_key(rng.round_key(keys, t), agents)
        i0 = starts + rng.bounded(rng.slot_word(akey, rng.SLOT_PICK0), deg)
        i1 = starts + rng.bounded(rng.slot_word(akey, rng.SLOT_PICK1), deg)
        c0 = state[rows, indices[i0]]
        c1 = state[rows, indices[i1]]
        if p > 0.0:
            c0 = np.where(rng.unit(rng.slot_word(akey, rng.SLOT_BIAS0)) < p, np.uint8(sigma), c0)
            c1 = np.where(rng.unit(rng.slot_word(akey, rng.SLOT_BIAS1)) < p, np.uint8(sigma), c1)
        new = np.where(c0 == c1, c0, state).astype(np.uint8)
        if frozen is not None:
            new = np.where(np.asarray(frozen, dtype=bool)[None, :], state, new)
        state = new
    return state


def peel(indptr, indices):
    n = len(indptr) - 1
    deg = np.diff(indptr).astype(np.int64).tolist()
    adj = [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]
    removed = [False] * n
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    order = np.empty(n, dtype=np.int64)
    rdeg = np.empty(n, dtype=np.int64)
    count = 0
    while count < n:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order[count] = v
        rdeg[count] = d
        count += 1
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, rdeg
