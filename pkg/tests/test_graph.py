import gzip

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twochoices.graph import (EmptyGraphError, Graph, GraphFormatError, is_connected, largest_component,
                              load_graph, normalize, parse_edge_list, serialize, volume)

from conftest import clique, make


def test_parse_identity_ids():
    e = parse_edge_list("0 1\n1 2\n2 0")
    assert e.n == 3
    assert e.pairs.tolist() == [[0, 1], [1, 2], [2, 0]]


def test_parse_labels_comments_and_duplicates():
    e = parse_edge_list("% comment\na b\nb a\nc c")
    assert e.n == 3
    assert e.pairs.tolist() == [[0, 1], [1, 0], [2, 2]]
    assert e.labels == ("a", "b", "c")


def test_parse_drops_extra_columns():
    e = parse_edge_list(b"5 7 1234567890\n")
    assert e.n == 2 and e.pairs.tolist() == [[0, 1]]


def test_parse_hash_comments_and_blank_lines():
    e = parse_edge_list("# header\n\n1 2\n")
    assert e.pairs.tolist() == [[0, 1]]


def test_parse_malformed_line_reports_line_number():
    with pytest.raises(GraphFormatError) as info:
        parse_edge_list("1 2\n3\n")
    assert info.value.line == 2


def test_parse_empty_input():
    with pytest.raises(GraphFormatError):
        parse_edge_list("% nothing here\n")


def test_normalize_dedupes_and_drops_loops():
    e = parse_edge_list("0 1\n1 0\n2 2\n1 2\n")
    g = normalize(e)
    assert g.m == 2
    assert g.edges().tolist() == [[0, 1], [1, 2]]


def test_normalize_triangle_and_single_edge():
    tri = normalize(parse_edge_list("0 1\n1 2\n2 0"))
    assert tri.m == 3 and tri.degrees.tolist() == [2, 2, 2]
    one = normalize(parse_edge_list("0 1"))
    assert one.m == 1 and one.degrees.tolist() == [1, 1]


def test_normalize_rejects_loop_only_graph():
    with pytest.raises(EmptyGraphError):
        normalize(parse_edge_list("3 3\n"))


def test_largest_component_tie_goes_to_smallest_id():
    g = make(6, clique(3) + clique(3, 3))
    lcc = largest_component(g)
    assert lcc.n == 3
    assert [lcc.label(v) for v in range(3)] == ["0", "1", "2"]


def test_largest_component_path_beats_edge():
    g = make(5, [(0, 1), (1, 2), (3, 4)])
    lcc = largest_component(g)
    assert lcc.n == 3 and lcc.m == 2


def test_largest_component_connected_unchanged(k4):
    assert largest_component(k4) == k4
    assert is_connected(k4)


def test_volume_examples(k3, star):
    assert volume(k3, [0, 1, 2]) == 6
    assert volume(star, [0]) == 4
    assert volume(star, [1, 2, 3, 4]) == 4
    assert volume(star, []) == 0
    assert volume(star, np.array([True, False, False, False, False])) == 4


def test_graph_arrays_are_read_only(k3):
    with pytest.raises(ValueError):
        k3.indices[0] = 2


def test_subgraph_keeps_labels():
    g = normalize(parse_edge_list("a b\nb c\nc d\n"))
    sub = g.subgraph([1, 2, 3])
    assert [sub.label(v) for v in range(3)] == ["b", "c", "d"]
    assert sub.m == 2


def test_load_graph_gz(tmp_path):
    p = tmp_path / "g.txt.gz"
    with gzip.open(p, "wt") as fh:
        fh.write("# x\n10 11\n11 12\n20 21\n")
    g = load_graph(p)
    assert g.n == 3 and [g.label(v) for v in range(3)] == ["10", "11", "12"]


edge_lists = st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), min_size=1, max_size=60)


@settings(max_examples=200, deadline=None)
@given(edge_lists)
def test_serialize_roundtrip(pairs):
    pairs = [(u, v) for u, v in pairs if u != v]
    if not pairs:
        return
    used = sorted({x for e in pairs for x in e})
    dense = {x: i for i, x in enumerate(used)}
    g = make(len(used), [(dense[u], dense[v]) for u, v in pairs])
    back = normalize(parse_edge_list(serialize(g)))
    # parse assigns ids by first appearance; map them back through the labels
    relabel = np.array([int(back.label(v)) for v in range(back.n)])
    order = np.argsort(relabel)
    rebuilt = Graph.from_edges(back.n, np.argsort(order)[back.edges()])
    assert rebuilt == g


@settings(max_examples=200, deadline=None)
@given(edge_lists)
def test_normalize_invariants(pairs):
    e = parse_edge_list("".join(f"{u} {v}\n" for u, v in pairs))
    try:
        g = normalize(e)
    except EmptyGraphError:
        assert all(u == v for u, v in pairs)
        return
    src = g.sources()
    assert (src != g.indices).all()
    assert g.degrees.sum() == 2 * g.m
    fwd = set(zip(src.tolist(), g.indices.tolist()))
    assert all((v, u) in fwd for u, v in fwd)
    assert len(fwd) == 2 * g.m
