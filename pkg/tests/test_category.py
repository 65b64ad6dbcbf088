"""Product/coproduct constructions and their algebra.

The blowup-distribution-over-product identity and the strict universal
property are checked against computed truth here; the runs that exposed
the failing instances live in the acceptance module.
"""

import random

import pytest

from conftest import random_graph, random_sc_group
from switchhom.category import (
    algebra_checks,
    coproduct,
    coproduct_mediating,
    product_e,
    product_gamma,
    universal_property_check,
)
from switchhom.errors import ContractError
from switchhom.graph_core import build_graph, disjoint_union
from switchhom.hom_engine import (
    gamma_hom,
    gamma_hom_brute_force,
    plain_iso,
    verify_hom_witness,
)
from switchhom.switching import rho
from switchhom.typeset import Alphabet, TypePerm, group_closure, trivial_group

A11 = Alphabet(1, 1)
A10 = Alphabet(1, 0)
A02 = Alphabet(0, 2)


def _push():
    return group_closure(A10, [TypePerm((2, 1))])


def _swap():
    return group_closure(A02, [TypePerm((2, 1))])


def test_product_e_with_single_vertex():
    g = build_graph(A11, ["a", "b"], [("a", "b", 2)])
    lone = build_graph(A11, ["x"], [])
    p = product_e(g, lone)
    assert p.n_vertices == 2
    assert p.n_adjacent_pairs() == 0


def test_product_e_matching_edges():
    e1 = build_graph(A11, ["a", "b"], [("a", "b", 3)])
    e2 = build_graph(A11, ["x", "y"], [("x", "y", 3)])
    p = product_e(e1, e2)
    assert p.n_vertices == 4
    assert p.n_adjacent_pairs() == 2
    assert p.adjacency("(a,x)", "(b,y)") == 3
    assert p.adjacency("(a,y)", "(b,x)") == 3
    assert p.adjacency("(a,x)", "(b,x)") is None


def test_product_e_type_disagreement():
    arc = build_graph(A11, ["a", "b"], [("a", "b", 2)])
    edge = build_graph(A11, ["x", "y"], [("x", "y", 3)])
    p = product_e(arc, edge)
    assert p.n_vertices == 4
    assert p.n_adjacent_pairs() == 0


def test_product_gamma_trivial_group_is_tensor():
    g = build_graph(A11, ["a", "b"], [("a", "b", 3)])
    h = build_graph(A11, ["x", "y"], [("x", "y", 3)])
    p = product_gamma(g, h, trivial_group(A11))
    tensor = product_e(g, h)
    assert p.graph.n_vertices == tensor.n_vertices
    assert plain_iso(p.graph, tensor) is not None


def test_product_gamma_vertex_count():
    rng = random.Random(3)
    for _ in range(10):
        n, m = rng.choice([(1, 0), (0, 2), (1, 1)])
        alphabet = Alphabet(n, m)
        group = random_sc_group(rng, alphabet)
        g = random_graph(rng, alphabet, rng.randint(1, 3))
        h = random_graph(rng, alphabet, rng.randint(1, 3), prefix="w")
        p = product_gamma(g, h, group)
        assert p.graph.n_vertices == len(group) * g.n_vertices * h.n_vertices


def test_product_gamma_paper_count_instance():
    # 2 vertices times 3 vertices times group order 2 gives 12
    g = build_graph(A10, ["a", "b"], [("a", "b", 2)])
    h = build_graph(A10, ["x", "y", "z"], [("x", "y", 2)])
    p = product_gamma(g, h, _push())
    assert p.graph.n_vertices == 12


def test_coproduct_with_empty_graph():
    g = build_graph(A10, ["a", "b"], [("a", "b", 2)])
    empty = build_graph(A10, [], [])
    cop = coproduct(g, empty)
    assert cop.graph == g
    assert cop.incl_h.vertex_map == {}


def test_product_projections_verify():
    rng = random.Random(5)
    for _ in range(15):
        n, m = rng.choice([(1, 0), (0, 2), (1, 1)])
        alphabet = Alphabet(n, m)
        group = random_sc_group(rng, alphabet)
        g = random_graph(rng, alphabet, rng.randint(1, 3))
        h = random_graph(rng, alphabet, rng.randint(1, 3), prefix="w")
        p = product_gamma(g, h, group)
        assert verify_hom_witness(p.graph, g, group, p.proj_g)
        assert verify_hom_witness(p.graph, h, group, p.proj_h)


def test_universal_property_product_itself():
    g = build_graph(A10, ["a", "b"], [("a", "b", 2)])
    p = product_gamma(g, g, _push())
    report = universal_property_check(p, g, g, p.graph, _push())
    assert report.exists and report.commutes and report.unique


def test_universal_property_single_vertex_trial():
    g = build_graph(A10, ["a", "b"], [("a", "b", 2)])
    lone = build_graph(A10, ["t"], [])
    p = product_gamma(g, g, _push())
    report = universal_property_check(p, g, g, lone, _push())
    assert report.ok


def test_universal_property_requires_both_homs():
    arc = build_graph(A10, ["a", "b"], [("a", "b", 2)])
    p3 = build_graph(A10, ["x", "y", "z"], [("x", "y", 2), ("y", "z", 2)])
    e = trivial_group(A10)
    p = product_gamma(arc, arc, e)
    with pytest.raises(ContractError):
        universal_property_check(p, arc, arc, p3, e)


def test_universal_property_failure_instance():
    """Computed counterexample: both factor homs exist but the diagonal
    product is edgeless, so no mediating morphism can exist.  This is
    the instance behind the red acceptance sub-check."""
    swap = _swap()
    g = build_graph(A02, ["g0", "g1"], [("g0", "g1", 2)])
    h = build_graph(A02, ["h0", "h1"], [("h0", "h1", 1)])
    t = build_graph(A02, ["t0", "t1"], [("t0", "t1", 1)])
    assert gamma_hom(t, g, swap) is not None
    assert gamma_hom(t, h, swap) is not None
    assert gamma_hom_brute_force(t, g, swap) is not None
    assert gamma_hom_brute_force(t, h, swap) is not None
    p = product_gamma(g, h, swap)
    assert p.graph.n_adjacent_pairs() == 0  # raw types never agree
    assert gamma_hom_brute_force(t, p.graph, swap) is None
    report = universal_property_check(p, g, h, t, swap)
    assert not report.exists


def test_coproduct_inclusions_verify():
    rng = random.Random(7)
    for _ in range(10):
        n, m = rng.choice([(1, 0), (1, 1)])
        alphabet = Alphabet(n, m)
        group = random_sc_group(rng, alphabet)
        g = random_graph(rng, alphabet, rng.randint(1, 3))
        h = random_graph(rng, alphabet, rng.randint(1, 3), prefix="w")
        cop = coproduct(g, h)
        assert verify_hom_witness(g, cop.graph, group, cop.incl_g)
        assert verify_hom_witness(h, cop.graph, group, cop.incl_h)


def test_coproduct_mediating_map():
    rng = random.Random(11)
    group = _push()
    hits = 0
    for _ in range(40):
        g = random_graph(rng, A10, rng.randint(1, 3))
        h = random_graph(rng, A10, rng.randint(1, 3), prefix="w")
        c = random_graph(rng, A10, rng.randint(1, 3), prefix="c")
        wg = gamma_hom(g, c, group)
        wh = gamma_hom(h, c, group)
        if wg is None or wh is None:
            continue
        hits += 1
        cop = coproduct(g, h)
        phi = coproduct_mediating(cop, g, h, c, group, wg, wh)
        assert verify_hom_witness(cop.graph, c, group, phi)
        # commutation with the inclusions at the vertex level
        for x in g.labels:
            assert phi.vertex_map[cop.incl_g.vertex_map[x]] == wg.vertex_map[x]
        for x in h.labels:
            assert phi.vertex_map[cop.incl_h.vertex_map[x]] == wh.vertex_map[x]
    assert hits >= 5


def test_coproduct_is_join_in_hom_order():
    rng = random.Random(13)
    group = _push()
    for _ in range(30):
        g = random_graph(rng, A10, rng.randint(1, 3))
        h = random_graph(rng, A10, rng.randint(1, 3), prefix="w")
        k = random_graph(rng, A10, rng.randint(1, 3), prefix="k")
        both = (gamma_hom(g, k, group) is not None
                and gamma_hom(h, k, group) is not None)
        union = disjoint_union(g, h)
        assert both == (gamma_hom(union, k, group) is not None)


def test_algebra_checks_single_vertex():
    g = build_graph(A10, ["a"], [])
    rep = algebra_checks(g, g, g, _push())
    assert rep.commutative_ok and rep.associative_ok and rep.distributive_ok
    assert rep.rho_product_ok and rep.rho_coproduct_ok


def test_algebra_checks_push_arcs():
    """Computed truth: on the all-arcs triple under the push group the
    blowup distributes over the coproduct but NOT over the product (the
    left side has isolated vertices, the right side none)."""
    arc = build_graph(A10, ["a", "b"], [("a", "b", 2)])
    rep = algebra_checks(arc, arc, arc, _push())
    assert rep.commutative_ok
    assert rep.associative_ok
    assert rep.distributive_ok
    assert rep.rho_coproduct_ok
    assert not rep.rho_product_ok


def test_rho_product_isolated_vertex_counterexample():
    """The structural reason the blowup-product identity fails."""
    push = _push()
    arc = build_graph(A10, ["a", "b"], [("a", "b", 2)])
    p = product_gamma(arc, arc, push)
    lhs = rho(p.graph, push).graph
    rhs = product_e(rho(arc, push).graph, rho(arc, push).graph)
    lhs_isolated = sum(1 for x in range(lhs.n_vertices) if not lhs.neighbor_indices(x))
    rhs_isolated = sum(1 for x in range(rhs.n_vertices) if not rhs.neighbor_indices(x))
    assert lhs.n_vertices == rhs.n_vertices == 16
    assert lhs_isolated == 8 and rhs_isolated == 0
    assert plain_iso(lhs, rhs) is None
