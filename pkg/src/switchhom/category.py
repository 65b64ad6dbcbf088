"""Categorical product and coproduct under switching homomorphisms.

The plain tensor product puts (u,v) adjacent to (u',v') with type t
exactly when both coordinates are t-adjacent.  The switching product is
the induced subgraph of the tensor of the two switched blowups on the
diagonal copies {(u^s, v^s)}: |Gamma| copies of each coordinate pair,
copy s carrying the jointly s-switched types.  Projections forget one
coordinate and switch copy s back by s^{-1}.

The coproduct is the disjoint union with identity inclusions; the
mediating map out of it is piecewise.

Morphism equality throughout is equality of induced vertex maps after
composing assignments pointwise (the only workable notion here: copies
of a product vertex differing in switch index project identically).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .errors import ContractError
from .graph_core import NMGraph, disjoint_union
from .hom_engine import (
    HomWitness,
    compose_witnesses,
    find_assignment_for_map,
    gamma_hom,
    gamma_iso_via_rho,
    plain_iso,
    verify_hom_witness,
)
from .switching import SwitchAssignment, require_switch_commutative, rho
from .typeset import SwitchGroup, switched_type


def _check_same_alphabet(g: NMGraph, h: NMGraph) -> None:
    if g.alphabet != h.alphabet:
        raise ContractError("graphs live over different alphabets")


def pair_label(u: str, v: str) -> str:
    return f"({u},{v})"


def product_e(g: NMGraph, h: NMGraph) -> NMGraph:
    """Plain tensor product: common-type adjacency on V(G) x V(H)."""
    _check_same_alphabet(g, h)
    labels = [pair_label(u, v) for u in g.labels for v in h.labels]
    nh = h.n_vertices

    adjacency: dict[tuple[int, int], int] = {}
    for (gu, gv), tg in g.raw_adjacency().items():
        for (hu, hv), th in h.raw_adjacency().items():
            if tg == th:
                adjacency[(gu * nh + hu, gv * nh + hv)] = tg
    return NMGraph(g.alphabet, labels, adjacency)


@dataclass(frozen=True)
class ProductGraph:
    """Switching product with its two projection witnesses."""

    graph: NMGraph
    base_g: NMGraph
    base_h: NMGraph
    group: SwitchGroup
    proj_g: HomWitness
    proj_h: HomWitness

    def vertex(self, u: str, v: str, k: int) -> str:
        return f"({u},{v})^{k}"

    def source_of(self, label: str) -> tuple[str, str, int]:
        pair, _, k = label.rpartition("^")
        inner = pair[1:-1]
        u, _, v = inner.partition(",")
        return u, v, int(k)


def product_gamma(g: NMGraph, h: NMGraph, group: SwitchGroup) -> ProductGraph:
    """Diagonal induced subgraph of the tensor of the switched blowups.

    Vertex (u,v)^k is the pair (u^{s_k}, v^{s_k}); adjacency to
    (u',v')^{k'} exists iff the base types agree (t = adj_G(u,u') =
    adj_H(v,v')) and then carries the (s_k, s_k')-switched type.  The
    projection to G maps (u,v)^k to u with switch s_k^{-1}; likewise H.
    """
    _check_same_alphabet(g, h)
    require_switch_commutative(group)
    order = len(group)
    nh = h.n_vertices
    labels = [
        f"({u},{v})^{k}"
        for u in g.labels for v in h.labels for k in range(order)
    ]

    def vid(ui: int, vi: int, k: int) -> int:
        return (ui * nh + vi) * order + k

    adjacency: dict[tuple[int, int], int] = {}
    for (gu, gv), tg in g.raw_adjacency().items():
        for (hu, hv), th in h.raw_adjacency().items():
            if tg != th:
                continue
            for i, sigma in enumerate(group.elements):
                for j, tau in enumerate(group.elements):
                    adjacency[(vid(gu, hu, i), vid(gv, hv, j))] = (
                        switched_type(g.alphabet, sigma, tau, tg))
    graph = NMGraph(g.alphabet, labels, adjacency)

    proj_g_map: dict[str, str] = {}
    proj_h_map: dict[str, str] = {}
    switches: dict[str, object] = {}
    for u in g.labels:
        for v in h.labels:
            for k, sigma in enumerate(group.elements):
                name = f"({u},{v})^{k}"
                proj_g_map[name] = u
                proj_h_map[name] = v
                if not sigma.is_identity():
                    switches[name] = sigma.inverse()
    proj_g = HomWitness(proj_g_map, SwitchAssignment(dict(switches)))
    proj_h = HomWitness(proj_h_map, SwitchAssignment(dict(switches)))
    result = ProductGraph(graph, g, h, group, proj_g, proj_h)
    if not verify_hom_witness(graph, g, group, proj_g):
        raise AssertionError("product projection to the first factor failed to verify")
    if not verify_hom_witness(graph, h, group, proj_h):
        raise AssertionError("product projection to the second factor failed to verify")
    return result


@dataclass(frozen=True)
class CoproductResult:
    graph: NMGraph
    incl_g: HomWitness
    incl_h: HomWitness


def coproduct(g: NMGraph, h: NMGraph) -> CoproductResult:
    """Disjoint union with identity-switch inclusion witnesses."""
    union = disjoint_union(g, h)
    g_labels = union.labels[: g.n_vertices]
    h_labels = union.labels[g.n_vertices:]
    incl_g = HomWitness(dict(zip(g.labels, g_labels)), SwitchAssignment({}))
    incl_h = HomWitness(dict(zip(h.labels, h_labels)), SwitchAssignment({}))
    return CoproductResult(union, incl_g, incl_h)


def coproduct_mediating(
    cop: CoproductResult,
    g: NMGraph,
    h: NMGraph,
    target: NMGraph,
    group: SwitchGroup,
    wg: HomWitness,
    wh: HomWitness,
) -> HomWitness:
    """Piecewise map out of g + h induced by homs from the two parts."""
    e = group.identity
    vertex_map: dict[str, str] = {}
    switches = {}
    for orig, tagged in zip(g.labels, cop.graph.labels[: g.n_vertices]):
        vertex_map[tagged] = wg.vertex_map[orig]
        sigma = wg.assignment.get(orig, e)
        if not sigma.is_identity():
            switches[tagged] = sigma
    for orig, tagged in zip(h.labels, cop.graph.labels[g.n_vertices:]):
        vertex_map[tagged] = wh.vertex_map[orig]
        sigma = wh.assignment.get(orig, e)
        if not sigma.is_identity():
            switches[tagged] = sigma
    return HomWitness(vertex_map, SwitchAssignment(switches))


@dataclass(frozen=True)
class UniversalPropertyReport:
    exists: bool
    commutes: bool
    unique: bool
    used_joint_search: bool
    mediating: HomWitness | None
    mediating_variants: int

    @property
    def ok(self) -> bool:
        return self.exists and self.commutes and self.unique


def universal_property_check(
    p: ProductGraph,
    g: NMGraph,
    h: NMGraph,
    trial: NMGraph,
    group: SwitchGroup,
    timeout: float | None = None,
) -> UniversalPropertyReport:
    """Construct and vet the mediating morphism for a trial object.

    Requires switching homs trial -> g and trial -> h.  The mediating
    map sends x to the diagonal vertex over (phi_g(x), phi_h(x)); when
    the two independently found witnesses are not jointly switchable the
    construction re-derives a compatible pair from a hom into the
    product itself.  Uniqueness is checked by enumerating every copy
    lift of the forced base map: all lifts that are homs must induce the
    same projection composites (the declared morphism-equality notion).
    """
    wg = gamma_hom(trial, g, group, timeout=timeout)
    wh = gamma_hom(trial, h, group, timeout=timeout)
    if wg is None or wh is None:
        raise ContractError("trial object lacks a switching hom to a factor")

    used_joint = False
    mediating = _lift_to_product(p, trial, group, wg, wh)
    if mediating is None:
        joint = gamma_hom(trial, p.graph, group, timeout=timeout)
        if joint is not None:
            used_joint = True
            mediating = joint
            wg = compose_witnesses(trial, p.graph, g, group, joint, p.proj_g)
            wh = compose_witnesses(trial, p.graph, h, group, joint, p.proj_h)
    if mediating is None:
        return UniversalPropertyReport(False, False, False, False, None, 0)

    comp_g = compose_witnesses(trial, p.graph, g, group, mediating, p.proj_g)
    comp_h = compose_witnesses(trial, p.graph, h, group, mediating, p.proj_h)
    commutes = (
        comp_g.vertex_map == wg.vertex_map
        and comp_h.vertex_map == wh.vertex_map
        and verify_hom_witness(trial, g, group, comp_g)
        and verify_hom_witness(trial, h, group, comp_h)
    )

    variants = _enumerate_copy_lifts(p, trial, group, wg, wh)
    composites = {
        tuple(sorted(
            (x, p.proj_g.vertex_map[w.vertex_map[x]], p.proj_h.vertex_map[w.vertex_map[x]])
            for x in w.vertex_map))
        for w in variants
    }
    unique = len(variants) >= 1 and len(composites) == 1
    return UniversalPropertyReport(
        True, commutes, unique, used_joint, mediating, len(variants))


def _lift_to_product(
    p: ProductGraph,
    trial: NMGraph,
    group: SwitchGroup,
    wg: HomWitness,
    wh: HomWitness,
) -> HomWitness | None:
    """Try every copy-index lift of the base map forced by the witnesses."""
    lifts = _enumerate_copy_lifts(p, trial, group, wg, wh, first_only=True)
    return lifts[0] if lifts else None


def _enumerate_copy_lifts(
    p: ProductGraph,
    trial: NMGraph,
    group: SwitchGroup,
    wg: HomWitness,
    wh: HomWitness,
    first_only: bool = False,
) -> list[HomWitness]:
    """All maps x -> (wg(x), wh(x))^{k_x} that are switching homs.

    These are exactly the candidate mediating maps whose projection
    composites equal the given witnesses at the vertex level.
    """
    order = len(group)
    found: list[HomWitness] = []
    for copy_choice in iter_product(range(order), repeat=trial.n_vertices):
        vertex_map = {
            x: p.vertex(wg.vertex_map[x], wh.vertex_map[x], copy_choice[i])
            for i, x in enumerate(trial.labels)
        }
        assignment = find_assignment_for_map(trial, p.graph, group, vertex_map)
        if assignment is not None:
            found.append(HomWitness(vertex_map, assignment))
            if first_only:
                return found
    return found


@dataclass(frozen=True)
class AlgebraReport:
    commutative_ok: bool
    associative_ok: bool
    distributive_ok: bool
    rho_product_ok: bool
    rho_coproduct_ok: bool

    @property
    def all_ok(self) -> bool:
        return (self.commutative_ok and self.associative_ok
                and self.distributive_ok and self.rho_product_ok
                and self.rho_coproduct_ok)


def _swap_iso_ok(gh: ProductGraph, hg: ProductGraph) -> bool:
    """Verify the explicit coordinate swap as a plain isomorphism."""
    mapping = {}
    for label in gh.graph.labels:
        u, v, k = gh.source_of(label)
        mapping[label] = hg.vertex(v, u, k)
    for x in gh.graph.labels:
        for y in gh.graph.labels:
            if x == y:
                continue
            if gh.graph.adjacency(x, y) != hg.graph.adjacency(mapping[x], mapping[y]):
                return False
    return True


def algebra_checks(
    g: NMGraph,
    h: NMGraph,
    k: NMGraph,
    group: SwitchGroup,
    timeout: float | None = None,
) -> AlgebraReport:
    """Verify the product/coproduct algebra on one triple.

    Commutativity uses the explicit coordinate-swap isomorphism;
    distributivity and the blowup/coproduct distribution compare by
    plain isomorphism; associativity and fallbacks go through the blowup
    criterion (switching-isomorphic iff blowups plainly isomorphic).
    """
    require_switch_commutative(group)
    gh = product_gamma(g, h, group)
    hg = product_gamma(h, g, group)
    commutative_ok = _swap_iso_ok(gh, hg)

    hk = product_gamma(h, k, group)
    assoc_l = product_gamma(gh.graph, k, group).graph
    assoc_r = product_gamma(g, hk.graph, group).graph
    associative_ok = gamma_iso_via_rho(assoc_l, assoc_r, group, timeout=timeout)

    dist_l = product_gamma(g, coproduct(h, k).graph, group).graph
    dist_r = coproduct(product_gamma(g, h, group).graph,
                       product_gamma(g, k, group).graph).graph
    distributive_ok = plain_iso(dist_l, dist_r, timeout=timeout) is not None
    if not distributive_ok:
        distributive_ok = gamma_iso_via_rho(dist_l, dist_r, group, timeout=timeout)

    rho_prod_l = rho(gh.graph, group).graph
    rho_prod_r = product_e(rho(g, group).graph, rho(h, group).graph)
    rho_product_ok = plain_iso(rho_prod_l, rho_prod_r, timeout=timeout) is not None

    rho_cop_l = rho(disjoint_union(g, h), group).graph
    rho_cop_r = disjoint_union(rho(g, group).graph, rho(h, group).graph)
    rho_coproduct_ok = plain_iso(rho_cop_l, rho_cop_r, timeout=timeout) is not None

    return AlgebraReport(
        commutative_ok=commutative_ok,
        associative_ok=associative_ok,
        distributive_ok=distributive_ok,
        rho_product_ok=rho_product_ok,
        rho_coproduct_ok=rho_coproduct_ok,
    )
