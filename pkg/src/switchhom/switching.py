"""Switching machinery: per-vertex switches, equivalence classes, rho.

A sigma-switch at v relabels every adjacency incident to v as seen from
v: adj(v, u) becomes sigma(adj(v, u)), with the mirror entry updated to
keep the bar invariant.  For switch-commutative groups a whole sequence
of switches collapses to one group element per vertex (a
SwitchAssignment), and the combined effect on a pair (u, v) with
adj(u, v) = t is bar(sigma_v(bar(sigma_u(t)))).

rho(G) is the switched blowup: one copy of G per group element, copy
sigma switched by sigma at every vertex, with all copies of adjacent
base vertices adjacent.  Plain homomorphisms into rho(H) encode
switching homomorphisms into H, which is what the hom engine exploits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping

from .errors import ContractError, ResourceLimitError, ValidationError
from .graph_core import NMGraph
from .typeset import SwitchGroup, TypePerm, is_switch_commutative, switched_type

DEFAULT_CLASS_CAP = 10_000_000


@dataclass(frozen=True)
class SwitchAssignment:
    """Map vertex label -> group element; unmentioned vertices stay put."""

    switches: Mapping[str, TypePerm] = field(default_factory=dict)

    def get(self, v: str, identity: TypePerm) -> TypePerm:
        return self.switches.get(v, identity)

    def items(self):
        return self.switches.items()

    def validate(self, g: NMGraph, group: SwitchGroup) -> None:
        for v, sigma in self.switches.items():
            if not g.has_vertex(v):
                raise ValidationError(f"assignment names unknown vertex {v!r}")
            if sigma not in group:
                raise ValidationError(f"assignment value for {v!r} is not in the group")


def require_switch_commutative(group: SwitchGroup) -> None:
    if not is_switch_commutative(group):
        raise ContractError("group is not switch-commutative")


def sigma_switch(g: NMGraph, v: str, sigma: TypePerm) -> NMGraph:
    """Switch a single vertex: its t-neighbors become sigma(t)-neighbors."""
    if sigma.degree != g.alphabet.size:
        raise ValidationError("permutation degree does not match the graph alphabet")
    vi = g.index_of(v)
    adjacency = g.raw_adjacency()
    for u in g.neighbor_indices(vi):
        t = adjacency[(vi, u)]
        adjacency[(vi, u)] = sigma(t)
        adjacency[(u, vi)] = g.alphabet.bar(sigma(t))
    return NMGraph(g.alphabet, g.labels, adjacency)


def apply_assignment(g: NMGraph, assignment: SwitchAssignment, group: SwitchGroup) -> NMGraph:
    """Apply one switch per vertex; order-independent by the contract.

    Requires a switch-commutative group, under which the result equals
    performing the individual switches sequentially in any order.
    """
    require_switch_commutative(group)
    assignment.validate(g, group)
    e = group.identity
    sigmas = [assignment.get(v, e) for v in g.labels]
    return _apply_sigmas(g, sigmas)


def _apply_sigmas(g: NMGraph, sigmas: list[TypePerm]) -> NMGraph:
    alphabet = g.alphabet
    adjacency = {}
    for (u, v), t in g.raw_adjacency().items():
        adjacency[(u, v)] = switched_type(alphabet, sigmas[u], sigmas[v], t)
    return NMGraph(alphabet, g.labels, adjacency)


def assignment_from_sigmas(g: NMGraph, sigmas: list[TypePerm], group: SwitchGroup) -> SwitchAssignment:
    e = group.identity
    return SwitchAssignment({v: s for v, s in zip(g.labels, sigmas) if s != e})


def enumerate_switched(
    g: NMGraph, group: SwitchGroup, cap: int = DEFAULT_CLASS_CAP
) -> Iterator[tuple[tuple[TypePerm, ...], NMGraph]]:
    """All (assignment, switched graph) pairs, deduplicated by adjacency.

    Assignments run in lexicographic order over the group's canonical
    element order, so the first representative of each distinct graph is
    deterministic.
    """
    require_switch_commutative(group)
    total = len(group) ** g.n_vertices
    if total > cap:
        raise ResourceLimitError(
            f"{len(group)}^{g.n_vertices} assignments exceed the cap of {cap}")
    seen = set()
    for sigmas in product(group.elements, repeat=g.n_vertices):
        switched = _apply_sigmas(g, list(sigmas))
        key = switched.adjacency_key()
        if key in seen:
            continue
        seen.add(key)
        yield sigmas, switched


def equivalence_class(
    g: NMGraph, group: SwitchGroup, cap: int = DEFAULT_CLASS_CAP
) -> Iterator[NMGraph]:
    """All graphs switch-equivalent to g (deduplicated, deterministic order)."""
    for _, switched in enumerate_switched(g, group, cap=cap):
        yield switched


def rho_label(v: str, k: int) -> str:
    return f"{v}^{k}"


@dataclass(frozen=True)
class RhoGraph:
    """The switched blowup of a base graph: one switched copy per element.

    Vertex (v, sigma_k) carries the label "v^k" with k the element index
    in the group's canonical order; index 0 is the identity copy.
    """

    base: NMGraph
    group: SwitchGroup
    graph: NMGraph

    def vertex(self, v: str, k: int) -> str:
        return rho_label(v, k)

    def source_of(self, label: str) -> tuple[str, int]:
        v, _, k = label.rpartition("^")
        return v, int(k)


def rho(g: NMGraph, group: SwitchGroup) -> RhoGraph:
    """Build rho(g): copies (v, sigma), copy sigma switched by sigma.

    adj((u, sigma), (v, tau)) = bar(tau(bar(sigma(t)))) for every base
    adjacency adj(u, v) = t; copies of one vertex are never adjacent.
    Well-defined only for switch-commutative groups (rejected otherwise).
    """
    require_switch_commutative(group)
    alphabet = g.alphabet
    order = len(group)
    labels = [rho_label(v, k) for v in g.labels for k in range(order)]

    def vid(base_index: int, k: int) -> int:
        return base_index * order + k

    adjacency: dict[tuple[int, int], int] = {}
    for (u, v), t in g.raw_adjacency().items():
        for i, sigma in enumerate(group.elements):
            for j, tau in enumerate(group.elements):
                adjacency[(vid(u, i), vid(v, j))] = switched_type(alphabet, sigma, tau, t)
    graph = NMGraph(alphabet, labels, adjacency)
    return RhoGraph(base=g, group=group, graph=graph)


def rho_factorization_check(g: NMGraph, g1: SwitchGroup, g2_elements) -> bool:
    """Check rho_{G1}(g) against rho_{complement}(rho_{G2}(g)).

    Valid when |G1| is squarefree so a complement of G2 in G1 exists and
    stands in for the quotient G1/G2; compares the two constructions by
    plain isomorphism search.
    """
    from .hom_engine import plain_iso
    from .typeset import subgroup_and_complement

    require_switch_commutative(g1)
    sub, complement = subgroup_and_complement(g1, g2_elements)
    if complement is None:
        raise ContractError("no complement exists for the given subgroup")
    lhs = rho(g, g1).graph
    rhs = rho(rho(g, sub).graph, complement).graph
    return plain_iso(lhs, rhs) is not None
