from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twochoices import kernels
from twochoices.extraction import (ExtractionError, constrained_densest_subgraph, densest_core, extract,
                                   k_rich_club, peel, symmetry_point)
from twochoices.graph import Graph
from twochoices.partition import density

from conftest import clique, make, random_graph
from oracles import best_density


def test_k_rich_club_examples(star, k4, path4):
    assert k_rich_club(star, 1).core.tolist() == [0]
    assert k_rich_club(k4, 2).core.tolist() == [0, 1]
    assert k_rich_club(path4, 2).core.tolist() == [1, 2]
    with pytest.raises(ValueError):
        k_rich_club(k4, 4)
    with pytest.raises(ValueError):
        k_rich_club(k4, 0)


def test_symmetry_point_examples(star, k4):
    assert symmetry_point(star) == 1
    assert symmetry_point(k4) == 2
    assert symmetry_point(make(3, [(0, 1), (1, 2)])) == 1


def test_k_rich_club_on_regular_graph_is_id_prefix():
    g = make(6, [(i, (i + 1) % 6) for i in range(6)])
    assert k_rich_club(g, 3).core.tolist() == [0, 1, 2]


def test_peel_order_tie_breaks_by_id(k4):
    order, _ = kernels.peel(k4.indptr, k4.indices)
    assert order.tolist() == [0, 1, 2, 3]


def test_uncapped_k4_with_pendant():
    g = make(5, clique(4) + [(0, 4)])
    chosen = constrained_densest_subgraph(g, None)
    assert chosen.tolist() == [0, 1, 2, 3]
    assert density(g, chosen) == 3


def test_cap_forces_empty(k4):
    assert constrained_densest_subgraph(k4, 1).size == 0


def test_triangle_cap_allows_nothing(k3):
    assert constrained_densest_subgraph(k3, k3.m).size == 0
    with pytest.raises(ExtractionError):
        densest_core(k3)


def test_two_k4_bridge_core_is_one_k4():
    g = make(8, clique(4) + clique(4, 4) + [(3, 4)])
    core = densest_core(g).core.tolist()
    assert core in ([0, 1, 2, 3], [4, 5, 6, 7])


def test_k4_plus_cycle_core_respects_cap():
    # vol(K4) = 13 exceeds the cap m = 11, so the best admissible set is a
    # triangle inside the K4 rather than the K4 itself
    cycle = [(4, 5), (5, 6), (6, 7), (7, 4)]
    g = make(8, clique(4) + cycle + [(0, 4)])
    core = densest_core(g).core
    opt, _ = best_density(g, max_volume=g.m)
    assert core.tolist() == [1, 2, 3]
    assert density(g, core) == opt == 2
    assert constrained_densest_subgraph(g, None).tolist() == [0, 1, 2, 3]


def test_densest_core_respects_half_volume_and_is_deterministic():
    rng = np.random.default_rng(4)
    g = random_graph(rng, 60, 0.1)
    a, b = densest_core(g), densest_core(g)
    assert a.vol_core <= g.m
    assert np.array_equal(a.in_core, b.in_core)


def test_trace_reports_skipped_denser_suffixes():
    g = make(8, clique(4) + clique(4, 4) + [(3, 4)])
    _, trace = constrained_densest_subgraph(g, g.m, return_trace=True)
    # the whole graph is denser than one K4 but too big
    assert trace.denser_over_cap >= 1
    assert trace.best_prefix_density == 3


def test_extract_dispatch(star):
    assert extract(star, "krich").core.tolist() == [0]
    with pytest.raises(ValueError):
        extract(star, "spectral")


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.floats(0.15, 0.9), st.integers(0, 2**32 - 1))
def test_peeling_is_half_approximation(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    if g.m == 0:
        return
    trace = peel(g)
    opt, _ = best_density(g)
    assert trace.best_prefix_density >= opt / 2
    assert density(g, trace.chosen) == trace.best_prefix_density


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.floats(0.2, 0.9), st.integers(0, 2**32 - 1))
def test_capped_suffix_is_within_cap(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    if g.m == 0:
        return
    chosen, trace = constrained_densest_subgraph(g, g.m, return_trace=True)
    if chosen.size:
        assert g.degrees[chosen].sum() <= g.m
        assert density(g, chosen) > 0


def test_backends_peel_identically():
    g = random_graph(np.random.default_rng(7), 200, 0.05)
    o1, d1 = kernels.python.peel(g.indptr, g.indices)
    o2, d2 = kernels.peel(g.indptr, g.indices)
    assert np.array_equal(o1, o2) and np.array_equal(d1, d2)
