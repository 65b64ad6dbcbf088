"""Switch operations, equivalence classes, and the switched blowup."""

import random

import pytest

from conftest import random_graph, random_sc_group
from switchhom.errors import ContractError, ResourceLimitError
from switchhom.graph_core import build_graph
from switchhom.switching import (
    SwitchAssignment,
    apply_assignment,
    equivalence_class,
    enumerate_switched,
    rho,
    rho_factorization_check,
    sigma_switch,
)
from switchhom.typeset import (
    Alphabet,
    TypePerm,
    group_closure,
    orbit_of,
    symmetric_group,
    trivial_group,
)

A11 = Alphabet(1, 1)
A10 = Alphabet(1, 0)


def _push():
    return group_closure(A10, [TypePerm((2, 1))])


def _c3():
    return group_closure(A11, [TypePerm((2, 3, 1))])


def test_sigma_switch_identity():
    g = build_graph(A11, ["u", "v"], [("u", "v", 2)])
    assert sigma_switch(g, "u", TypePerm((1, 2, 3))) == g


def test_sigma_switch_arc_to_edge():
    # the cyclic switch turns an arc (type 2 seen from u) into an edge (type 3)
    g = build_graph(A11, ["v", "u"], [("v", "u", 2)])
    switched = sigma_switch(g, "v", _c3().element(1))
    assert switched.adjacency("v", "u") == 3
    assert switched.adjacency("u", "v") == 3


def test_push_reverses_arcs():
    g = build_graph(A10, ["v", "a", "b"], [("v", "a", 2), ("b", "v", 2)])
    switched = sigma_switch(g, "v", _push().element(1))
    assert switched.adjacency("v", "a") == 1
    assert switched.adjacency("v", "b") == 2


def test_sigma_switch_inverts():
    rng = random.Random(5)
    for _ in range(20):
        group = random_sc_group(rng, A11)
        g = random_graph(rng, A11, 4, edge_prob=0.6)
        sigma = group.element(rng.randrange(len(group)))
        v = g.labels[rng.randrange(g.n_vertices)]
        assert sigma_switch(sigma_switch(g, v, sigma), v, sigma.inverse()) == g


def test_non_adjacent_switches_commute_exactly():
    # even for a non-switch-commutative group element pair
    s3 = symmetric_group(Alphabet(0, 3))
    g = build_graph(Alphabet(0, 3), ["u", "v", "w"], [("u", "v", 1)])
    for sigma in s3:
        for tau in s3:
            one = sigma_switch(sigma_switch(g, "u", sigma), "w", tau)
            two = sigma_switch(sigma_switch(g, "w", tau), "u", sigma)
            assert one == two


def test_apply_assignment_identity():
    g = build_graph(A11, ["u", "v"], [("u", "v", 2)])
    assert apply_assignment(g, SwitchAssignment({}), _c3()) == g


def test_apply_assignment_single_vertex_equals_sigma_switch():
    rng = random.Random(11)
    group = _c3()
    for _ in range(10):
        g = random_graph(rng, A11, 4, edge_prob=0.6)
        sigma = group.element(rng.randrange(len(group)))
        v = g.labels[rng.randrange(g.n_vertices)]
        assert (apply_assignment(g, SwitchAssignment({v: sigma}), group)
                == sigma_switch(g, v, sigma))


def test_apply_assignment_equals_any_sequential_order():
    rng = random.Random(13)
    for _ in range(15):
        alphabet = A11
        group = random_sc_group(rng, alphabet)
        g = random_graph(rng, alphabet, 4, edge_prob=0.7)
        sigmas = {v: group.element(rng.randrange(len(group))) for v in g.labels}
        combined = apply_assignment(g, SwitchAssignment(sigmas), group)
        vertices = list(g.labels)
        for _ in range(3):
            rng.shuffle(vertices)
            sequential = g
            for v in vertices:
                sequential = sigma_switch(sequential, v, sigmas[v])
            assert sequential == combined


def test_apply_assignment_rejects_non_switch_commutative():
    s3 = symmetric_group(Alphabet(0, 3))
    g = build_graph(Alphabet(0, 3), ["u", "v"], [("u", "v", 1)])
    with pytest.raises(ContractError):
        apply_assignment(g, SwitchAssignment({}), s3)


def test_equivalence_class_trivial_group():
    g = build_graph(A11, ["u", "v"], [("u", "v", 2)])
    assert list(equivalence_class(g, trivial_group(A11))) == [g]


def test_equivalence_class_push_arc():
    g = build_graph(A10, ["u", "v"], [("u", "v", 2)])
    graphs = list(equivalence_class(g, _push()))
    assert len(graphs) == 2
    assert {x.adjacency("u", "v") for x in graphs} == {1, 2}


def test_equivalence_class_edgeless():
    g = build_graph(A10, ["u", "v", "w"], [])
    assert list(equivalence_class(g, _push())) == [g]


def test_equivalence_class_cap():
    g = build_graph(A10, ["a", "b", "c", "d"], [])
    with pytest.raises(ResourceLimitError):
        list(equivalence_class(g, _push(), cap=8))


def test_orbit_preservation_for_consistent_groups():
    rng = random.Random(17)
    for _ in range(10):
        alphabet = A11
        group = _c3()  # consistent
        g = random_graph(rng, alphabet, 3, edge_prob=0.8)
        for variant in equivalence_class(g, group):
            for u, v, t in g.adj_entries():
                assert variant.adjacency(u, v) in orbit_of(group, t)


def _rho_by_definition(g, group):
    """Independent construction: blow up first, then switch each copy
    vertex sequentially with its own element."""
    order = len(group)
    labels = [f"{v}^{k}" for v in g.labels for k in range(order)]
    entries = []
    for u, v, t in g.adj_entries():
        for i in range(order):
            for j in range(order):
                entries.append((f"{u}^{i}", f"{v}^{j}", t))
    blown = build_graph(g.alphabet, labels, entries)
    for v in g.labels:
        for k, sigma in enumerate(group.elements):
            blown = sigma_switch(blown, f"{v}^{k}", sigma)
    return blown


def test_rho_matches_definitional_construction():
    rng = random.Random(23)
    for _ in range(10):
        group = random_sc_group(rng, A11)
        g = random_graph(rng, A11, 3, edge_prob=0.7)
        assert rho(g, group).graph == _rho_by_definition(g, group)


def test_rho_counts_and_copies_non_adjacent():
    rng = random.Random(29)
    for _ in range(10):
        group = random_sc_group(rng, A11)
        g = random_graph(rng, A11, 3, edge_prob=0.5)
        blowup = rho(g, group)
        assert blowup.graph.n_vertices == len(group) * g.n_vertices
        for v in g.labels:
            for i in range(len(group)):
                for j in range(len(group)):
                    if i != j:
                        assert blowup.graph.adjacency(f"{v}^{i}", f"{v}^{j}") is None


def test_rho_single_edge_c3_types():
    # hand oracle: adj((u,sigma),(v,tau)) = bar(tau(bar(sigma(3))))
    group = _c3()
    g = build_graph(A11, ["u", "v"], [("u", "v", 3)])
    blowup = rho(g, group).graph
    a = A11
    for i, sigma in enumerate(group.elements):
        for j, tau in enumerate(group.elements):
            expected = a.bar(tau(a.bar(sigma(3))))
            assert blowup.adjacency(f"u^{i}", f"v^{j}") == expected


def test_rho_trivial_group_isomorphic_to_base():
    from switchhom.hom_engine import plain_iso

    rng = random.Random(31)
    g = random_graph(rng, A11, 4, edge_prob=0.6)
    blowup = rho(g, trivial_group(A11))
    assert plain_iso(blowup.graph, g) is not None


def test_rho_rejects_non_switch_commutative():
    s3 = symmetric_group(Alphabet(0, 3))
    g = build_graph(Alphabet(0, 3), ["u", "v"], [("u", "v", 1)])
    with pytest.raises(ContractError):
        rho(g, s3)


def test_rho_factorization_trivial_cases():
    group = _c3()
    g = build_graph(A11, ["u", "v"], [("u", "v", 2)])
    assert rho_factorization_check(g, group, [group.identity])
    assert rho_factorization_check(g, group, list(group.elements))


def test_rho_factorization_c6():
    a = Alphabet(0, 6)
    c6 = group_closure(a, [TypePerm((2, 3, 4, 5, 6, 1))])
    c2 = [p for p in c6 if p.compose(p).is_identity()]
    g = build_graph(a, ["u", "v"], [("u", "v", 3)])
    assert rho_factorization_check(g, c6, c2)


def test_rho_factorization_no_complement():
    a = Alphabet(0, 4)
    c4 = group_closure(a, [TypePerm((2, 3, 4, 1))])
    c2 = [p for p in c4 if p.compose(p).is_identity()]
    g = build_graph(a, ["u", "v"], [("u", "v", 1)])
    with pytest.raises(ContractError):
        rho_factorization_check(g, c4, c2)


def test_enumerate_switched_assignments_are_canonical():
    g = build_graph(A10, ["u", "v"], [("u", "v", 2)])
    firsts = [sigmas for sigmas, _ in enumerate_switched(g, _push())]
    assert firsts[0] == (_push().identity, _push().identity)
