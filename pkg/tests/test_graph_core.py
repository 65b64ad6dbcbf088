"""Graph model, validation, serialization tests."""

import random

import pytest

from conftest import random_graph
from switchhom.errors import ContractError, ValidationError
from switchhom.graph_core import (
    build_graph,
    disjoint_union,
    format_graph,
    induced_subgraph,
    is_forest,
    parse_graph,
    t_neighbors,
    to_dot,
)
from switchhom.typeset import Alphabet

A11 = Alphabet(1, 1)
A10 = Alphabet(1, 0)


def test_build_arc_mirror():
    g = build_graph(A11, ["u", "v"], [("u", "v", 2)])
    assert g.adjacency("u", "v") == 2
    assert g.adjacency("v", "u") == 1


def test_build_empty_edge_list():
    g = build_graph(A11, ["u", "v"], [])
    assert g.n_adjacent_pairs() == 0


def test_build_rejects_duplicate_pair():
    with pytest.raises(ValidationError):
        build_graph(A11, ["u", "v"], [("u", "v", 2), ("v", "u", 2)])


def test_build_rejects_loop():
    with pytest.raises(ValidationError):
        build_graph(A11, ["u"], [("u", "u", 2)])


def test_build_rejects_bad_type():
    with pytest.raises(ValidationError):
        build_graph(A11, ["u", "v"], [("u", "v", 4)])


def test_build_rejects_unknown_vertex():
    with pytest.raises(ValidationError):
        build_graph(A11, ["u"], [("u", "w", 1)])


def test_t_neighbors_star():
    star = build_graph(A11, ["c", "v1", "v2"], [("c", "v1", 1), ("c", "v2", 3)])
    assert t_neighbors(star, "c", 1) == {"v1"}
    assert t_neighbors(star, "c", 3) == {"v2"}
    assert t_neighbors(star, "c", 2) == set()


def test_t_neighbors_path():
    path = build_graph(A10, ["u", "v", "w"], [("u", "v", 2), ("v", "w", 2)])
    assert t_neighbors(path, "v", 2) == {"w"}
    assert t_neighbors(path, "v", 1) == {"u"}


def test_t_neighbors_unknown_vertex():
    g = build_graph(A11, ["u"], [])
    with pytest.raises(ValidationError):
        t_neighbors(g, "z", 1)


def test_induced_subgraph():
    tri = build_graph(A11, ["a", "b", "c"],
                      [("a", "b", 3), ("b", "c", 2), ("a", "c", 1)])
    assert induced_subgraph(tri, ["a", "b", "c"]) == tri
    single = induced_subgraph(tri, ["b"])
    assert single.labels == ("b",) and single.n_adjacent_pairs() == 0
    pair = induced_subgraph(tri, ["a", "c"])
    assert pair.adjacency("a", "c") == 1


def test_disjoint_union_counts():
    g = build_graph(A11, ["a", "b"], [("a", "b", 3)])
    h = build_graph(A11, ["c", "d", "e"], [("c", "d", 2)])
    u = disjoint_union(g, h)
    assert u.n_vertices == 5
    assert u.n_adjacent_pairs() == 2
    assert u.adjacency("a", "b") == 3 and u.adjacency("c", "d") == 2
    assert u.adjacency("a", "c") is None


def test_disjoint_union_label_collision():
    g = build_graph(A11, ["a"], [])
    u = disjoint_union(g, g)
    assert u.labels == ("L.a", "R.a")


def test_disjoint_union_alphabet_mismatch():
    g = build_graph(A11, ["a"], [])
    h = build_graph(A10, ["b"], [])
    with pytest.raises(ContractError):
        disjoint_union(g, h)


def test_roundtrip_random_graphs():
    rng = random.Random(42)
    for _ in range(30):
        n, m = rng.choice([(1, 0), (0, 1), (1, 1), (0, 2), (2, 0), (2, 1)])
        g = random_graph(rng, Alphabet(n, m), rng.randint(1, 6))
        assert parse_graph(format_graph(g)) == g


def test_mirror_invariant_everywhere():
    rng = random.Random(7)
    for _ in range(20):
        g = random_graph(rng, A11, 5, edge_prob=0.7)
        for u in g.labels:
            for v in g.labels:
                if u == v:
                    continue
                t = g.adjacency(u, v)
                s = g.adjacency(v, u)
                if t is None:
                    assert s is None
                else:
                    assert s == g.alphabet.bar(t)


def test_parse_errors():
    with pytest.raises(ValidationError):
        parse_graph("vertices a b\n")
    with pytest.raises(ValidationError):
        parse_graph("nmgraph 1 1\nadj a b 1\n")
    with pytest.raises(ValidationError):
        parse_graph("nmgraph 1 1\nvertices a b\nadj a b x\n")


def test_parse_comments():
    g = parse_graph("# a comment\nnmgraph 1 1\nvertices a b # trailing\nadj a b 2\n")
    assert g.adjacency("a", "b") == 2


def test_to_dot():
    g = build_graph(A11, ["u", "v", "w"], [("u", "v", 2), ("v", "w", 3)])
    dot = to_dot(g)
    assert '"u" -> "v" [label="1"];' in dot
    assert '"v" -> "w" [dir=none, label="1"];' in dot


def test_to_dot_edgeless():
    g = build_graph(A11, ["u"], [])
    assert "->" not in to_dot(g)


def test_to_dot_tail_view():
    # adj(u,v) odd means the arc runs v -> u
    g = build_graph(A10, ["u", "v"], [("u", "v", 1)])
    assert '"v" -> "u" [label="1"];' in to_dot(g)


def test_disjoint_union_commutative_associative_up_to_iso():
    from switchhom.hom_engine import plain_iso

    rng = random.Random(53)
    for _ in range(8):
        g = random_graph(rng, A11, rng.randint(1, 3), prefix="g")
        h = random_graph(rng, A11, rng.randint(1, 3), prefix="h")
        k = random_graph(rng, A11, rng.randint(1, 3), prefix="k")
        assert plain_iso(disjoint_union(g, h), disjoint_union(h, g)) is not None
        left = disjoint_union(disjoint_union(g, h), k)
        right = disjoint_union(g, disjoint_union(h, k))
        assert plain_iso(left, right) is not None


def test_is_forest():
    tree = build_graph(A10, ["a", "b", "c"], [("a", "b", 2), ("b", "c", 2)])
    assert is_forest(tree)
    tri = build_graph(A10, ["a", "b", "c"],
                      [("a", "b", 2), ("b", "c", 2), ("a", "c", 2)])
    assert not is_forest(tri)
