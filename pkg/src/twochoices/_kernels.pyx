# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: one synchronous 2-Choices round, batched small-graph
replays, and greedy min-degree peeling. Must stay bit-identical to
``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t AGENT_MULT = 0xD1B54A32D192ED03ULL
cdef double TWO_M53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t slot_word(uint64_t akey, uint64_t slot) noexcept nogil:
    return mix64(akey + (slot + 1) * GOLDEN)


cdef inline int64_t bounded(uint64_t w, uint64_t bound) noexcept nogil:
    return <int64_t>(((w >> 32) * bound) >> 32)


cdef inline double unit(uint64_t w) noexcept nogil:
    return <double>(w >> 11) * TWO_M53


def seed_key(uint64_t seed):
    return mix64(seed + GOLDEN)


cdef int64_t _round(const int64_t[::1] indptr, const int64_t[::1] indices,
                    const uint8_t[::1] colors, uint8_t[::1] out,
                    const uint8_t[::1] frozen, bint has_frozen,
                    double p, uint8_t sigma, uint64_t key, uint64_t rnd) noexcept nogil:
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t v
    cdef uint64_t rkey = mix64(key ^ mix64(rnd + GOLDEN))
    cdef uint64_t akey
    cdef int64_t start, deg, blue_volume = 0
    cdef uint8_t c0, c1, new
    for v in range(n):
        start = indptr[v]
        deg = indptr[v + 1] - start
        if has_frozen and frozen[v]:
            new = colors[v]
        else:
            akey = mix64(rkey ^ (<uint64_t>v * AGENT_MULT))
            c0 = colors[indices[start + bounded(slot_word(akey, 0), deg)]]
            c1 = colors[indices[start + bounded(slot_word(akey, 1), deg)]]
            if p > 0.0:
                if unit(slot_word(akey, 2)) < p:
                    c0 = sigma
                if unit(slot_word(akey, 3)) < p:
                    c1 = sigma
            new = c0 if c0 == c1 else colors[v]
        out[v] = new
        if new:
            blue_volume += deg
    return blue_volume


def two_choices_round(const int64_t[::1] indptr, const int64_t[::1] indices,
                      const uint8_t[::1] colors, uint8_t[::1] out,
                      frozen, double p, int sigma, uint64_t key, uint64_t rnd):
    """Write round ``rnd + 1`` colors into ``out``; return its blue volume."""
    cdef const uint8_t[::1] fz
    cdef bint has_frozen = frozen is not None
    cdef int64_t result
    fz = frozen if has_frozen else colors
    with nogil:
        result = _round(indptr, indices, colors, out, fz, has_frozen, p, <uint8_t>sigma, key, rnd)
    return result


def simulate_batch(const int64_t[::1] indptr, const int64_t[::1] indices,
                   const uint8_t[::1] colors0, frozen, double p, int sigma,
                   uint64_t seed0, Py_ssize_t trials, Py_ssize_t rounds):
    """Replay ``trials`` independent runs (seeds seed0, seed0+1, ...) for
    ``rounds`` rounds each; return final colors as a (trials, n) array."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t i, t
    cdef bint has_frozen = frozen is not None
    cdef const uint8_t[::1] fz = frozen if has_frozen else colors0
    result = np.empty((trials, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] res = result
    cdef uint8_t[::1] a = np.empty(n, dtype=np.uint8)
    cdef uint8_t[::1] b = np.empty(n, dtype=np.uint8)
    cdef uint8_t[::1] tmp
    cdef uint64_t key
    with nogil:
        for i in range(trials):
            key = mix64(seed0 + <uint64_t>i + GOLDEN)
            a[:] = colors0
            for t in range(rounds):
                _round(indptr, indices, a, b, fz, has_frozen, p, <uint8_t>sigma, key, <uint64_t>t)
                tmp = a
                a = b
                b = tmp
            res[i, :] = a
    return result


cdef inline void _heap_push(int64_t[::1] heap, Py_ssize_t *size, int64_t item) noexcept nogil:
    cdef Py_ssize_t pos = size[0]
    cdef Py_ssize_t parent
    size[0] += 1
    while pos > 0:
        parent = (pos - 1) >> 1
        if heap[parent] <= item:
            break
        heap[pos] = heap[parent]
        pos = parent
    heap[pos] = item


cdef inline int64_t _heap_pop(int64_t[::1] heap, Py_ssize_t *size) noexcept nogil:
    cdef int64_t top = heap[0]
    cdef int64_t last
    cdef Py_ssize_t pos = 0, child, n
    size[0] -= 1
    n = size[0]
    if n == 0:
        return top
    last = heap[n]
    while True:
        child = 2 * pos + 1
        if child >= n:
            break
        if child + 1 < n and heap[child + 1] < heap[child]:
            child += 1
        if heap[child] >= last:
            break
        heap[pos] = heap[child]
        pos = child
    heap[pos] = last
    return top


def peel(const int64_t[::1] indptr, const int64_t[::1] indices):
    """Greedy min-degree peeling (ties to smallest id).

    Returns (order, degree_at_removal)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m2 = indices.shape[0]
    order_arr = np.empty(n, dtype=np.int64)
    rdeg_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] order = order_arr
    cdef int64_t[::1] rdeg = rdeg_arr
    cdef int64_t[::1] deg = np.empty(n, dtype=np.int64)
    cdef uint8_t[::1] removed = np.zeros(n, dtype=np.uint8)
    cdef int64_t[::1] heap = np.empty(n + m2 + 1, dtype=np.int64)
    cdef Py_ssize_t size = 0, count = 0, v, j
    cdef int64_t key, w, nn = n
    with nogil:
        for v in range(n):
            deg[v] = indptr[v + 1] - indptr[v]
            _heap_push(heap, &size, deg[v] * nn + v)
        while count < n:
            key = _heap_pop(heap, &size)
            v = key % nn
            if removed[v] or key // nn != deg[v]:
                continue
            removed[v] = 1
            order[count] = v
            rdeg[count] = deg[v]
            count += 1
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if not removed[w]:
                    deg[w] -= 1
                    _heap_push(heap, &size, deg[w] * nn + w)
    return order_arr, rdeg_arr
