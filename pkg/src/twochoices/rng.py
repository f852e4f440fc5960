"""Counter-based random words keyed by (seed, round, agent, slot).

Every random decision of the dynamics is a pure function of its key, so a
trial can be replayed, split across workers, or checked agent-by-agent
without carrying generator state around. The mixing function is the
SplitMix64 finalizer.

Slots per agent and round: 0 and 1 are the two neighbor picks, 2 and 3 the
bias overrides of those picks.
"""
from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
AGENT_MULT = np.uint64(0xD1B54A32D192ED03)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1

SLOT_PICK0, SLOT_PICK1, SLOT_BIAS0, SLOT_BIAS1 = 0, 1, 2, 3


def mix64(z):
    """SplitMix64 finalizer on uint64 scalars or arrays (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def seed_key(seed) -> np.ndarray:
    if isinstance(seed, (int, np.integer)):
        seed = np.uint64(int(seed) & _MASK)
    with np.errstate(over="ignore"):
        return mix64(np.asarray(seed, dtype=np.uint64) + GOLDEN)


def round_key(key, rnd: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        return mix64(np.asarray(key, dtype=np.uint64) ^ mix64(np.uint64(rnd) + GOLDEN))


def agent_key(rkey, agents) -> np.ndarray:
    agents = np.asarray(agents, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(np.asarray(rkey, dtype=np.uint64) ^ (agents * AGENT_MULT))


def slot_word(akey, slot: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        return mix64(np.asarray(akey, dtype=np.uint64) + np.uint64(slot + 1) * GOLDEN)


def bounded(word, bound) -> np.ndarray:
    """Map a 64-bit word to ``[0, bound)`` by multiply-shift on the top 32 bits."""
    hi = np.asarray(word, dtype=np.uint64) >> np.uint64(32)
    return ((hi * np.asarray(bound, dtype=np.uint64)) >> np.uint64(32)).astype(np.int64)


def unit(word) -> np.ndarray:
    """Map a 64-bit word to a double in ``[0, 1)`` with 53 random bits."""
    return (np.asarray(word, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)
