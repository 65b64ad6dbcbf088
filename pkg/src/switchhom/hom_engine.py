"""Homomorphism, isomorphism and core decision procedures.

Plain (identity-group) homomorphisms are found by backtracking over
vertex images with forward checking; switching homomorphisms reduce to
plain ones into the switched blowup rho(H): a plain map x -> (v, sigma)
yields the switching witness (x -> v, switch x by sigma^{-1}).  Every
witness returned by a public function is re-verified before it leaves
the engine.

Switching isomorphism is decided by a combined backtracking over
(image, switch) choices per vertex: G and H are switching-isomorphic
exactly when some per-vertex switching of G is plainly isomorphic to H.
The blowup-based criterion (compare rho(G) with rho(H) by plain
isomorphism) is exposed separately as a cross-check mode.

Decision calls take a timeout budget (default 60 s); expiring raises
TimeoutExceeded, an explicit "unknown" distinct from "absent".
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import ContractError, TimeoutExceeded
from .graph_core import NMGraph, delete_vertex
from .switching import (
    SwitchAssignment,
    apply_assignment,
    require_switch_commutative,
    rho,
)
from .typeset import SwitchGroup, TypePerm, switched_type

DEFAULT_TIMEOUT_SECS = 60.0


class _Deadline:
    """Cheap cooperative deadline checks inside search loops."""

    __slots__ = ("at", "counter")

    def __init__(self, timeout: float | None):
        self.at = None if timeout is None else time.monotonic() + timeout
        self.counter = 0

    def tick(self) -> None:
        if self.at is None:
            return
        self.counter += 1
        if self.counter & 0x3F == 1 and time.monotonic() > self.at:
            raise TimeoutExceeded("search ran past its time budget; outcome unknown")


@dataclass(frozen=True)
class HomWitness:
    """A vertex map plus the source switching that certifies it."""

    vertex_map: dict[str, str]
    assignment: SwitchAssignment


@dataclass(frozen=True)
class IsoWitness:
    """A bijection plus the source switching making it a plain isomorphism."""

    vertex_map: dict[str, str]
    assignment: SwitchAssignment


def _check_same_alphabet(g: NMGraph, h: NMGraph) -> None:
    if g.alphabet != h.alphabet:
        raise ContractError("graphs live over different alphabets")


def verify_hom_witness(g: NMGraph, h: NMGraph, group: SwitchGroup, w: HomWitness) -> bool:
    """Soundness check: switch g by the assignment, then confirm every
    typed adjacency is preserved exactly by the vertex map."""
    _check_same_alphabet(g, h)
    if set(w.vertex_map) != set(g.labels):
        return False
    if any(not h.has_vertex(v) for v in w.vertex_map.values()):
        return False
    switched = apply_assignment(g, w.assignment, group)
    for u, v, t in switched.adj_entries():
        if h.adjacency(w.vertex_map[u], w.vertex_map[v]) != t:
            return False
    return True


def verify_iso_witness(g: NMGraph, h: NMGraph, group: SwitchGroup, w: IsoWitness) -> bool:
    """Bijectivity plus exact adjacency/type correspondence both ways."""
    _check_same_alphabet(g, h)
    if g.n_vertices != h.n_vertices:
        return False
    if set(w.vertex_map) != set(g.labels):
        return False
    if set(w.vertex_map.values()) != set(h.labels):
        return False
    switched = apply_assignment(g, w.assignment, group)
    for x in switched.labels:
        for y in switched.labels:
            if x == y:
                continue
            if switched.adjacency(x, y) != h.adjacency(w.vertex_map[x], w.vertex_map[y]):
                return False
    return True


# ---------------------------------------------------------------------------
# Plain homomorphism search
# ---------------------------------------------------------------------------


def _target_tables(h: NMGraph):
    """Adjacency dict, per-vertex seen-type sets, per-(vertex,type) neighbor lists."""
    adj = h.raw_adjacency()
    sees: list[set[int]] = [set() for _ in range(h.n_vertices)]
    by_type: list[dict[int, list[int]]] = [{} for _ in range(h.n_vertices)]
    for (a, b), t in adj.items():
        sees[a].add(t)
        by_type[a].setdefault(t, []).append(b)
    for row in by_type:
        for t in row:
            row[t].sort()
    return adj, sees, by_type


def _search_order(g: NMGraph) -> list[int]:
    """Vertices by descending degree, ties by index: deterministic witnesses."""
    return sorted(range(g.n_vertices),
                  key=lambda x: (-len(g.neighbor_indices(x)), x))


def _ac3(
    g_adj: dict[tuple[int, int], int],
    h_adj: dict[tuple[int, int], int],
    neighbors: Sequence[Sequence[int]],
    domains: list[list[int]],
) -> bool:
    """Arc-consistency propagation over the adjacency constraints."""
    queue = [(x, y) for x in range(len(domains)) for y in neighbors[x]]
    while queue:
        x, y = queue.pop()
        t = g_adj[(x, y)]
        kept = [a for a in domains[x]
                if any(h_adj.get((a, b)) == t for b in domains[y])]
        if len(kept) != len(domains[x]):
            if not kept:
                return False
            domains[x] = kept
            queue.extend((z, x) for z in neighbors[x] if z != y)
    return True


def plain_hom(
    g: NMGraph,
    h: NMGraph,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
    propagation: str = "fc",
) -> HomWitness | None:
    """Complete search for a type-preserving vertex map g -> h.

    Backtracking over candidate lists with forward checking; candidates
    for x are pruned to vertices whose seen-type set dominates x's.  Pass
    propagation="ac3" for full arc consistency at every node.
    """
    _check_same_alphabet(g, h)
    if propagation not in ("fc", "ac3"):
        raise ValueError(f"unknown propagation mode {propagation!r}")
    deadline = _Deadline(timeout)
    n = g.n_vertices
    if n == 0:
        return HomWitness({}, SwitchAssignment({}))
    if h.n_vertices == 0:
        return None

    g_adj = g.raw_adjacency()
    h_adj, h_sees, h_by_type = _target_tables(h)
    g_sees: list[set[int]] = [set() for _ in range(n)]
    for (x, y), t in g_adj.items():
        g_sees[x].add(t)
    neighbors = [g.neighbor_indices(x) for x in range(n)]

    domains: list[list[int]] = []
    for x in range(n):
        domains.append([b for b in range(h.n_vertices) if g_sees[x] <= h_sees[b]])
        if not domains[x]:
            return None

    order = _search_order(g)
    assigned = [-1] * n

    def extend(pos: int, doms: list[list[int]]) -> bool:
        if pos == n:
            return True
        x = order[pos]
        for a in doms[x]:
            deadline.tick()
            assigned[x] = a
            pruned = list(doms)
            ok = True
            for y in neighbors[x]:
                if assigned[y] >= 0:
                    if h_adj.get((a, assigned[y])) != g_adj[(x, y)]:
                        ok = False
                        break
                else:
                    t = g_adj[(x, y)]
                    allowed = set(h_by_type[a].get(t, ()))
                    newdom = [b for b in pruned[y] if b in allowed]
                    if not newdom:
                        ok = False
                        break
                    pruned[y] = newdom
            if ok and propagation == "ac3":
                pruned[x] = [a]
                ok = _ac3(g_adj, h_adj, neighbors, pruned)
            if ok and extend(pos + 1, pruned):
                return True
            assigned[x] = -1
        return False

    if not extend(0, domains):
        return None
    vertex_map = {g.labels[x]: h.labels[assigned[x]] for x in range(n)}
    return HomWitness(vertex_map, SwitchAssignment({}))


# ---------------------------------------------------------------------------
# Plain isomorphism search
# ---------------------------------------------------------------------------


def _refine_colors(g: NMGraph, h: NMGraph) -> tuple[list[int], list[int]] | None:
    """Joint 1-WL color refinement with adjacency types; None when the
    color multisets separate the graphs."""
    n = g.n_vertices
    colors_g = [g.type_degree_table[x] for x in range(n)]
    colors_h = [h.type_degree_table[x] for x in range(h.n_vertices)]
    palette: dict[object, int] = {}

    def canon(values):
        out = []
        for v in values:
            if v not in palette:
                palette[v] = len(palette)
            out.append(palette[v])
        return out

    cg, ch = canon(colors_g), canon(colors_h)
    for _ in range(n):
        if sorted(cg) != sorted(ch):
            return None
        sig_g = [
            (cg[x], tuple(sorted((g.adjacency_by_index(x, y), cg[y])
                                 for y in g.neighbor_indices(x))))
            for x in range(n)
        ]
        sig_h = [
            (ch[x], tuple(sorted((h.adjacency_by_index(x, y), ch[y])
                                 for y in h.neighbor_indices(x))))
            for x in range(h.n_vertices)
        ]
        palette.clear()
        new_g, new_h = canon(sig_g), canon(sig_h)
        if len(set(new_g)) == len(set(cg)):
            cg, ch = new_g, new_h
            break
        cg, ch = new_g, new_h
    if sorted(cg) != sorted(ch):
        return None
    return cg, ch


def plain_iso(
    g: NMGraph, h: NMGraph, timeout: float | None = DEFAULT_TIMEOUT_SECS
) -> IsoWitness | None:
    """Exact typed-adjacency isomorphism search.

    Initial candidate classes come from a joint 1-WL refinement over
    (type, color) neighborhoods; the backtracking then keeps dynamic
    domains, re-filtering every unassigned vertex against each placed
    pair (adjacency status and exact type both ways), choosing the
    smallest domain next.  The dynamic filtering is what keeps highly
    regular instances, where refinement alone cannot split classes,
    tractable.
    """
    _check_same_alphabet(g, h)
    n = g.n_vertices
    if n != h.n_vertices:
        return None
    if n == 0:
        return IsoWitness({}, SwitchAssignment({}))
    if sorted(g.type_degree_table) != sorted(h.type_degree_table):
        return None
    refined = _refine_colors(g, h)
    if refined is None:
        return None
    cg, ch = refined
    domains = [[b for b in range(n) if ch[b] == cg[x]] for x in range(n)]
    if any(not d for d in domains):
        return None

    deadline = _Deadline(timeout)
    assigned = [-1] * n

    def extend(doms: list[list[int]], remaining: int) -> bool:
        if remaining == 0:
            return True
        x = min((v for v in range(n) if assigned[v] < 0),
                key=lambda v: (len(doms[v]), v))
        for b in doms[x]:
            deadline.tick()
            assigned[x] = b
            pruned: list[list[int]] = doms[:]
            ok = True
            for y in range(n):
                if assigned[y] >= 0 or not ok:
                    continue
                t = g.adjacency_by_index(y, x)
                newdom = [c for c in pruned[y]
                          if c != b and h.adjacency_by_index(c, b) == t]
                if not newdom:
                    ok = False
                    break
                pruned[y] = newdom
            if ok and extend(pruned, remaining - 1):
                return True
            assigned[x] = -1
        return False

    if not extend(domains, n):
        return None
    vertex_map = {g.labels[x]: h.labels[assigned[x]] for x in range(n)}
    return IsoWitness(vertex_map, SwitchAssignment({}))


# ---------------------------------------------------------------------------
# Switching homomorphism via the blowup reduction
# ---------------------------------------------------------------------------


def gamma_hom(
    g: NMGraph,
    h: NMGraph,
    group: SwitchGroup,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
    propagation: str = "fc",
) -> HomWitness | None:
    """Decide g -> h up to switching by searching g -> rho(h) plainly.

    A plain image (v, sigma) for x translates to mapping x to v after
    switching x by sigma^{-1}; the witness is verified before returning.
    """
    _check_same_alphabet(g, h)
    require_switch_commutative(group)
    blowup = rho(h, group)
    plain = plain_hom(g, blowup.graph, timeout=timeout, propagation=propagation)
    if plain is None:
        return None
    vertex_map: dict[str, str] = {}
    switches: dict[str, TypePerm] = {}
    for x, image in plain.vertex_map.items():
        v, k = blowup.source_of(image)
        vertex_map[x] = v
        sigma = group.element(k)
        if not sigma.is_identity():
            switches[x] = sigma.inverse()
    witness = HomWitness(vertex_map, SwitchAssignment(switches))
    if not verify_hom_witness(g, h, group, witness):
        raise AssertionError("blowup reduction produced an unverifiable witness")
    return witness


def gamma_hom_brute_force(
    g: NMGraph, h: NMGraph, group: SwitchGroup
) -> HomWitness | None:
    """Definitional oracle: try every assignment in Gamma^V and every
    vertex map, checking adjacency preservation directly."""
    _check_same_alphabet(g, h)
    require_switch_commutative(group)
    n = g.n_vertices
    if h.n_vertices == 0:
        return None if n else HomWitness({}, SwitchAssignment({}))
    base_adj = g.raw_adjacency()
    h_adj = h.raw_adjacency()
    entries = list(base_adj.items())
    for sigmas in product(group.elements, repeat=n):
        switched = [
            ((x, y), switched_type(g.alphabet, sigmas[x], sigmas[y], t))
            for (x, y), t in entries
        ]
        for images in product(range(h.n_vertices), repeat=n):
            if all(h_adj.get((images[x], images[y])) == t for (x, y), t in switched):
                vertex_map = {g.labels[x]: h.labels[images[x]] for x in range(n)}
                switches = {g.labels[x]: sigmas[x] for x in range(n)
                            if not sigmas[x].is_identity()}
                return HomWitness(vertex_map, SwitchAssignment(switches))
    return None


def find_assignment_for_map(
    g: NMGraph,
    h: NMGraph,
    group: SwitchGroup,
    vertex_map: dict[str, str],
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
) -> SwitchAssignment | None:
    """Given a fixed vertex map, search for a switching that makes it a
    plain homomorphism; None when no assignment works."""
    _check_same_alphabet(g, h)
    require_switch_commutative(group)
    deadline = _Deadline(timeout)
    n = g.n_vertices
    if set(vertex_map) != set(g.labels):
        raise ContractError("vertex map must cover every source vertex")
    images = [h.index_of(vertex_map[v]) for v in g.labels]
    # adjacency must be preserved regardless of switching
    for (x, y), t in g.raw_adjacency().items():
        if h.adjacency_by_index(images[x], images[y]) is None:
            return None
    alphabet = g.alphabet
    order = _search_order(g)
    chosen: list[TypePerm | None] = [None] * n
    neighbors = [g.neighbor_indices(x) for x in range(n)]

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        x = order[pos]
        for sigma in group.elements:
            deadline.tick()
            ok = True
            for y in neighbors[x]:
                if chosen[y] is None:
                    continue
                t = g.adjacency_by_index(x, y)
                want = h.adjacency_by_index(images[x], images[y])
                if switched_type(alphabet, sigma, chosen[y], t) != want:
                    ok = False
                    break
            if ok:
                chosen[x] = sigma
                if extend(pos + 1):
                    return True
                chosen[x] = None
        return False

    if n and not extend(0):
        return None
    switches = {g.labels[x]: chosen[x] for x in range(n)
                if chosen[x] is not None and not chosen[x].is_identity()}
    return SwitchAssignment(switches)


# ---------------------------------------------------------------------------
# Switching isomorphism
# ---------------------------------------------------------------------------


def gamma_iso(
    g: NMGraph,
    h: NMGraph,
    group: SwitchGroup,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
) -> IsoWitness | None:
    """Search per-vertex (image, switch) choices for a plain isomorphism
    of the switched source onto h.

    Complete: G and H are switching-isomorphic iff some per-vertex
    switching of G is plainly isomorphic to H (a bijective switching
    homomorphism with switching-homomorphism inverse reflects adjacency,
    hence is plain-iso after switching).
    """
    _check_same_alphabet(g, h)
    require_switch_commutative(group)
    n = g.n_vertices
    if n != h.n_vertices:
        return None
    deg_g = sorted(len(g.neighbor_indices(x)) for x in range(n))
    deg_h = sorted(len(h.neighbor_indices(b)) for b in range(n))
    if deg_g != deg_h:
        return None

    deadline = _Deadline(timeout)
    alphabet = g.alphabet
    order = _search_order(g)
    candidates = [
        [b for b in range(n)
         if len(h.neighbor_indices(b)) == len(g.neighbor_indices(x))]
        for x in range(n)
    ]
    assigned = [-1] * n
    chosen_sigma: list[TypePerm | None] = [None] * n
    used = [False] * (n or 1)
    placed: list[int] = []

    def consistent(x: int, b: int, sigma: TypePerm) -> bool:
        for y in placed:
            t = g.adjacency_by_index(x, y)
            s = h.adjacency_by_index(b, assigned[y])
            if t is None:
                if s is not None:
                    return False
            else:
                if s is None:
                    return False
                if switched_type(alphabet, sigma, chosen_sigma[y], t) != s:
                    return False
        return True

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        x = order[pos]
        for b in candidates[x]:
            if used[b]:
                continue
            for sigma in group.elements:
                deadline.tick()
                if not consistent(x, b, sigma):
                    continue
                assigned[x] = b
                chosen_sigma[x] = sigma
                used[b] = True
                placed.append(x)
                if extend(pos + 1):
                    return True
                placed.pop()
                used[b] = False
                assigned[x] = -1
                chosen_sigma[x] = None
        return False

    if n and not extend(0):
        return None
    vertex_map = {g.labels[x]: h.labels[assigned[x]] for x in range(n)}
    switches = {g.labels[x]: chosen_sigma[x] for x in range(n)
                if chosen_sigma[x] is not None and not chosen_sigma[x].is_identity()}
    witness = IsoWitness(vertex_map, SwitchAssignment(switches))
    if not verify_iso_witness(g, h, group, witness):
        raise AssertionError("isomorphism search produced an unverifiable witness")
    return witness


def gamma_iso_via_rho(
    g: NMGraph,
    h: NMGraph,
    group: SwitchGroup,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
) -> bool:
    """Cross-check mode: compare the switched blowups by plain isomorphism."""
    _check_same_alphabet(g, h)
    require_switch_commutative(group)
    if g.n_vertices != h.n_vertices:
        return False
    lhs = rho(g, group).graph
    rhs = rho(h, group).graph
    return plain_iso(lhs, rhs, timeout=timeout) is not None


# ---------------------------------------------------------------------------
# Cores
# ---------------------------------------------------------------------------


def gamma_core(
    g: NMGraph,
    group: SwitchGroup,
    order: Sequence[str] | None = None,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
) -> NMGraph:
    """Greedy retraction: repeatedly drop a vertex whose deletion still
    receives a switching homomorphism, until no vertex can go.

    Single-vertex deletions suffice: a hom onto a smaller induced
    subgraph composes with the inclusion into any single-deletion step.
    The result is unique up to switching isomorphism regardless of the
    deletion order tried.
    """
    require_switch_commutative(group)
    current = g
    try_order = list(order) if order is not None else list(g.labels)
    changed = True
    while changed and current.n_vertices > 1:
        changed = False
        for v in try_order:
            if not current.has_vertex(v) or current.n_vertices == 1:
                continue
            smaller = delete_vertex(current, v)
            if gamma_hom(current, smaller, group, timeout=timeout) is not None:
                current = smaller
                changed = True
    return current


# ---------------------------------------------------------------------------
# Witness algebra
# ---------------------------------------------------------------------------


def compose_witnesses(
    g: NMGraph,
    h: NMGraph,
    k: NMGraph,
    group: SwitchGroup,
    w1: HomWitness,
    w2: HomWitness,
) -> HomWitness:
    """Composite witness of g -> k from witnesses of g -> h and h -> k.

    The composite switch at x is (switch of w2 at w1(x)) after (switch of
    w1 at x); sound because per-vertex switches at one vertex compose and
    the group is switch-commutative.
    """
    require_switch_commutative(group)
    e = group.identity
    vertex_map = {x: w2.vertex_map[w1.vertex_map[x]] for x in w1.vertex_map}
    switches = {}
    for x in g.labels:
        combined = w2.assignment.get(w1.vertex_map[x], e).compose(w1.assignment.get(x, e))
        if not combined.is_identity():
            switches[x] = combined
    return HomWitness(vertex_map, SwitchAssignment(switches))
