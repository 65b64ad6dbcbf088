"""Switching chromatic numbers and the forest machinery.

The chromatic number of a graph here is the least order of any target
receiving a switching homomorphism.  It is computed by quotients: a map
onto a k-vertex target is the same thing as a partition of some switched
variant into k classes with no internal adjacency and one consistent
type per ordered class pair; the quotient then *is* the target.

For forests the closed-form bound is k+1 (k odd) / k+2 (k even), where k
counts the orbits of the group action on the alphabet.  The target
achieving the bound is a complete graph on k'+1 vertices (k' = k, or
k+1 with a dummy orbit when k is even) built from a Walecki
decomposition into (k'-1)/2 Hamiltonian cycles plus a perfect matching:
cycle i carries the representative types of orbits 2i-1 and 2i
alternately, the matching carries the last representative.  Every
vertex then sees every orbit, which is what the greedy forest embedding
consumes; for consistent groups the star / height-two-tree witnesses
show the bound is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ContractError, ResourceLimitError
from .graph_core import NMGraph, build_graph, is_forest
from .hom_engine import (
    DEFAULT_TIMEOUT_SECS,
    HomWitness,
    _Deadline,
    gamma_hom,
    verify_hom_witness,
)
from .switching import (
    SwitchAssignment,
    assignment_from_sigmas,
    enumerate_switched,
    require_switch_commutative,
)
from .typeset import Alphabet, SwitchGroup, is_consistent, orbit_of, orbits


@dataclass(frozen=True)
class OrbitSystem:
    """Orbits of the group action with their least-element representatives."""

    orbits: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    consistent: bool

    @property
    def k(self) -> int:
        return len(self.orbits)

    def orbit_index(self, t: int) -> int:
        for i, orbit in enumerate(self.orbits):
            if t in orbit:
                return i
        raise ValueError(f"type {t} not covered by the orbit partition")


def orbit_system(group: SwitchGroup) -> OrbitSystem:
    parts = orbits(group)
    return OrbitSystem(
        orbits=parts,
        representatives=tuple(p[0] for p in parts),
        consistent=is_consistent(group),
    )


# ---------------------------------------------------------------------------
# Chromatic number by quotient search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChromaticResult:
    value: int
    witness_target: NMGraph
    witness_hom: HomWitness
    exhausted_below: tuple[int, ...]


def _quotient_partition(
    g: NMGraph, k: int, deadline: _Deadline
) -> tuple[list[int], dict[tuple[int, int], int]] | None:
    """Partition vertices into <= k classes, no class containing an
    adjacent pair and every ordered class pair carrying one type.

    Classes are explored in restricted-growth order so the first found
    partition is canonical.
    """
    n = g.n_vertices
    classes = [-1] * n
    pair_type: dict[tuple[int, int], int] = {}

    def assign(v: int, used: int) -> bool:
        if v == n:
            return True
        limit = min(used + 1, k)
        for c in range(limit):
            deadline.tick()
            ok = True
            added: list[tuple[int, int]] = []
            for u in range(v):
                t = g.adjacency_by_index(v, u)
                cu = classes[u]
                if cu == c:
                    if t is not None:
                        ok = False
                        break
                    continue
                if t is None:
                    continue
                key, key_rev = (c, cu), (cu, c)
                bar_t = g.alphabet.bar(t)
                if key in pair_type:
                    if pair_type[key] != t:
                        ok = False
                        break
                else:
                    pair_type[key] = t
                    pair_type[key_rev] = bar_t
                    added.append(key)
                    added.append(key_rev)
            if ok:
                classes[v] = c
                if assign(v + 1, max(used, c + 1)):
                    return True
                classes[v] = -1
            for key in added:
                del pair_type[key]
        return False

    if assign(0, 0):
        return classes, dict(pair_type)
    return None


def gamma_chromatic(
    g: NMGraph,
    group: SwitchGroup,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
    class_cap: int = 2_000_000,
) -> ChromaticResult:
    """Least target order over all switched variants, with a verified
    quotient witness and the record of exhausted smaller orders."""
    require_switch_commutative(group)
    deadline = _Deadline(timeout)
    if g.n_vertices == 0:
        raise ContractError("chromatic number of the empty graph is undefined")
    total = len(group) ** g.n_vertices
    if total > class_cap:
        raise ResourceLimitError(
            f"{len(group)}^{g.n_vertices} switched variants exceed the cap {class_cap}")

    exhausted = []
    for k in range(1, g.n_vertices + 1):
        for sigmas, variant in enumerate_switched(g, group):
            deadline.tick()
            found = _quotient_partition(variant, k, deadline)
            if found is None:
                continue
            classes, pair_type = found
            n_classes = max(classes) + 1
            target_labels = [f"c{c}" for c in range(n_classes)]
            entries = [
                (target_labels[a], target_labels[b], t)
                for (a, b), t in sorted(pair_type.items())
                if a < b
            ]
            target = build_graph(g.alphabet, target_labels, entries)
            vertex_map = {
                v: target_labels[classes[i]] for i, v in enumerate(g.labels)
            }
            witness = HomWitness(vertex_map, assignment_from_sigmas(g, list(sigmas), group))
            if not verify_hom_witness(g, target, group, witness):
                raise AssertionError("quotient construction produced a bad witness")
            return ChromaticResult(
                value=n_classes,
                witness_target=target,
                witness_hom=witness,
                exhausted_below=tuple(exhausted),
            )
        exhausted.append(k)
    raise AssertionError("a graph always maps onto itself")


# ---------------------------------------------------------------------------
# Walecki decomposition and the forest target
# ---------------------------------------------------------------------------


def walecki_decomposition(n_vertices: int) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Decompose K_n (n even) into (n-2)/2 Hamiltonian cycles and a
    perfect matching.

    Uses the classical zigzag construction: vertices Z_{n-1} plus a hub,
    base path 0, 1, n-2, 2, n-3, ... rotated (n-2)/2 times and closed
    through the hub; the leftover edges are checked to form a perfect
    matching.
    """
    if n_vertices % 2 != 0 or n_vertices < 2:
        raise AssertionError("Walecki decomposition needs an even vertex count >= 2")
    hub = n_vertices - 1
    ring = n_vertices - 1  # vertices 0..n-2 arranged cyclically
    base: list[int] = [0]
    for p in range(1, ring):
        base.append((p + 1) // 2 if p % 2 == 1 else ring - p // 2)
    # base is 0, 1, n-2, 2, n-3, ... covering Z_ring
    cycles: list[list[int]] = []
    covered: set[frozenset[int]] = set()
    for i in range((n_vertices - 2) // 2):
        path = [(v + i) % ring for v in base]
        cycle = [hub] + path
        cycles.append(cycle)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            covered.add(frozenset((a, b)))
    matching = []
    for a in range(n_vertices):
        for b in range(a + 1, n_vertices):
            if frozenset((a, b)) not in covered:
                matching.append((a, b))
    seen = [0] * n_vertices
    for a, b in matching:
        seen[a] += 1
        seen[b] += 1
    if any(c != 1 for c in seen):
        raise AssertionError("leftover edges do not form a perfect matching")
    if len(covered) + len(matching) != n_vertices * (n_vertices - 1) // 2:
        raise AssertionError("decomposition does not cover K_n exactly")
    return cycles, matching


def _coverage_ok(g: NMGraph, group: SwitchGroup, system: OrbitSystem) -> bool:
    """Every vertex sees, for each orbit, at least one incident type in it."""
    for x in range(g.n_vertices):
        seen = {g.adjacency_by_index(x, y) for y in g.neighbor_indices(x)}
        for orbit in system.orbits:
            if not seen & set(orbit):
                return False
    return True


def build_forest_target(alphabet: Alphabet, group: SwitchGroup) -> NMGraph:
    """Complete target on k'+1 vertices from a typed Walecki decomposition.

    k' is the orbit count, bumped by a dummy orbit when even so that the
    cycle/matching bookkeeping always runs with k' odd.  Around cycle i
    the edge as seen from the j-th vertex alternates: adj(c_j, c_{j+1})
    is rep(2i-1) for even j and bar(rep(2i)) for odd j, which gives
    every vertex one incident type in orbit 2i-1 and one in orbit 2i
    whenever the group is consistent (and literally for bar-paired or
    edge representatives).  Matching edges carry the last representative
    (the dummy slot reuses the last real one).  The per-orbit coverage
    property is verified before returning.
    """
    require_switch_commutative(group)
    system = orbit_system(group)
    k = system.k
    reps = list(system.representatives)
    if k % 2 == 0:
        reps.append(reps[-1])  # dummy orbit slot reuses the last real representative
    k_prime = len(reps)
    n_target = k_prime + 1
    cycles, matching = walecki_decomposition(n_target)

    labels = [f"c{i}" for i in range(n_target)]
    entries: list[tuple[str, str, int]] = []
    for i, cycle in enumerate(cycles, start=1):
        t_odd = reps[2 * i - 2]
        t_even = reps[2 * i - 1]
        closed = cycle + [cycle[0]]
        for j in range(len(cycle)):
            a, b = closed[j], closed[j + 1]
            t = t_odd if j % 2 == 0 else alphabet.bar(t_even)
            entries.append((labels[a], labels[b], t))
    for a, b in matching:
        entries.append((labels[a], labels[b], reps[-1]))
    target = build_graph(alphabet, labels, entries)
    if not _coverage_ok(target, group, system):
        raise AssertionError(
            "forest target misses an orbit at some vertex; "
            "construction assumptions violated for this group")
    return target


# ---------------------------------------------------------------------------
# Greedy forest embedding
# ---------------------------------------------------------------------------


def _tree_order(g: NMGraph) -> list[tuple[int, int | None]]:
    """(vertex, parent) pairs in a root-first traversal of every component."""
    n = g.n_vertices
    seen = [False] * n
    order: list[tuple[int, int | None]] = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, None)]
        while stack:
            v, parent = stack.pop()
            order.append((v, parent))
            for u in sorted(g.neighbor_indices(v), reverse=True):
                if not seen[u]:
                    seen[u] = True
                    stack.append((u, v))
    return order


def _greedy_forest_hom(
    f: NMGraph, group: SwitchGroup, target: NMGraph
) -> HomWitness | None:
    """One greedy top-down pass; None when a child finds no usable type."""
    from .typeset import TypePerm

    images: dict[int, int] = {}
    sigmas: dict[int, TypePerm] = {}
    current = dict(f.raw_adjacency())
    alphabet = f.alphabet
    for v, parent in _tree_order(f):
        if parent is None:
            images[v] = 0
            sigmas[v] = group.identity
            continue
        t = current[(v, parent)]
        reachable = set(orbit_of(group, t))
        pi = images[parent]
        choice = None
        for w in target.neighbor_indices(pi):
            tw = target.adjacency_by_index(w, pi)
            if tw in reachable:
                choice = (w, tw)
                break
        if choice is None:
            return None
        w, tw = choice
        sigma = next(s for s in group.elements if s(t) == tw)
        images[v] = w
        sigmas[v] = sigma
        # switching v rewrites how its still-unprocessed children see it
        for u in f.neighbor_indices(v):
            tv = current[(v, u)]
            current[(v, u)] = sigma(tv)
            current[(u, v)] = alphabet.bar(sigma(tv))
    vertex_map = {f.labels[v]: target.labels[images[v]] for v in images}
    switches = {f.labels[v]: s for v, s in sigmas.items() if not s.is_identity()}
    witness = HomWitness(vertex_map, SwitchAssignment(switches))
    if not verify_hom_witness(f, target, group, witness):
        return None
    return witness


def forest_hom(
    f: NMGraph,
    group: SwitchGroup,
    target: NMGraph | None = None,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
) -> HomWitness:
    """Greedy top-down embedding of a forest into the forest target.

    Roots map to vertex 0; a child whose current view of its parent is t
    gets switched so the view becomes whatever type from Orb(t) the
    parent's image offers.  The greedy step always succeeds when the
    target covers every orbit at every vertex (guaranteed for consistent
    groups); otherwise the engine falls back to a full search.
    """
    require_switch_commutative(group)
    if not is_forest(f):
        raise ContractError("input graph is not a forest")
    if target is None:
        target = build_forest_target(f.alphabet, group)
    witness = _greedy_forest_hom(f, group, target)
    if witness is not None:
        return witness
    witness = gamma_hom(f, target, group, timeout=timeout)
    if witness is None:
        raise ContractError(
            "forest does not embed into the forest target for this group")
    return witness


def lower_bound_witness(alphabet: Alphabet, group: SwitchGroup) -> NMGraph:
    """The tightness witness: the representative star for odd orbit
    count, the height-two representative tree for even.

    Only claimed (and only constructed) for consistent groups.
    """
    require_switch_commutative(group)
    system = orbit_system(group)
    if not system.consistent:
        raise ContractError("tightness witness requires a consistent group")
    reps = system.representatives
    k = system.k
    if k % 2 == 1:
        labels = ["r"] + [f"s{i}" for i in range(1, k + 1)]
        entries = [("r", f"s{i}", reps[i - 1]) for i in range(1, k + 1)]
        return build_graph(alphabet, labels, entries)
    labels = ["r"]
    entries = []
    for i in range(1, k + 1):
        child = f"c{i}"
        labels.append(child)
        entries.append(("r", child, reps[i - 1]))
        for j in range(1, k + 1):
            leaf = f"l{i}.{j}"
            labels.append(leaf)
            entries.append((child, leaf, reps[j - 1]))
    return build_graph(alphabet, labels, entries)


def forest_bound(group: SwitchGroup) -> int:
    k = orbit_system(group).k
    return k + 1 if k % 2 == 1 else k + 2


def random_forest(
    rng: random.Random, alphabet: Alphabet, n_vertices: int
) -> NMGraph:
    """Uniform random attachment forest with uniform random types."""
    labels = [f"v{i}" for i in range(n_vertices)]
    entries = []
    for i in range(1, n_vertices):
        if rng.random() < 0.85:
            parent = rng.randrange(i)
            t = rng.randint(1, alphabet.size)
            entries.append((labels[parent], labels[i], t))
    return build_graph(alphabet, labels, entries)


@dataclass(frozen=True)
class ForestCheckReport:
    bound: int
    orbit_count: int
    consistent: bool
    trials: int
    upper_ok: int
    greedy_fallbacks: int
    lower_value: int | None
    lower_ok: bool | None
    failures: tuple[int, ...]


def _forest_trial(task) -> tuple[bool, bool]:
    """(greedy succeeded, witness verified) for one forest; top-level for
    process pools."""
    forest, group, target, timeout = task
    witness = _greedy_forest_hom(forest, group, target)
    greedy = witness is not None
    if witness is None:
        witness = gamma_hom(forest, target, group, timeout=timeout)
    ok = witness is not None and verify_hom_witness(forest, target, group, witness)
    return greedy, ok


def forest_theorem_check(
    alphabet: Alphabet,
    group: SwitchGroup,
    trials: int = 25,
    seed: int = 0,
    max_forest_size: int = 9,
    timeout: float | None = DEFAULT_TIMEOUT_SECS,
    jobs: int = 1,
) -> ForestCheckReport:
    """Empirical check of the forest bound.

    Upper bound: random forests must all embed into the constructed
    target (its order is the bound).  Tightness, for consistent groups:
    the chromatic number of the lower-bound witness must reach k+1 for
    odd k and at least k+2 for even k.

    Forests are generated up front from the seed, so results are
    byte-identical for any worker count.
    """
    require_switch_commutative(group)
    system = orbit_system(group)
    bound = forest_bound(group)
    target = build_forest_target(alphabet, group)
    assert target.n_vertices == bound

    rng = random.Random(seed)
    forests = [random_forest(rng, alphabet, rng.randint(1, max_forest_size))
               for _ in range(trials)]
    tasks = [(forest, group, target, timeout) for forest in forests]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_forest_trial, tasks))
    else:
        results = [_forest_trial(task) for task in tasks]

    upper_ok = 0
    fallbacks = 0
    failures = []
    for i, (greedy, ok) in enumerate(results):
        if not greedy:
            fallbacks += 1
        if ok:
            upper_ok += 1
        else:
            failures.append(i)

    lower_value: int | None = None
    lower_ok: bool | None = None
    if system.consistent:
        witness_graph = lower_bound_witness(alphabet, group)
        lower_value = gamma_chromatic(witness_graph, group, timeout=timeout).value
        if system.k % 2 == 1:
            lower_ok = lower_value == system.k + 1
        else:
            lower_ok = lower_value >= system.k + 2
    return ForestCheckReport(
        bound=bound,
        orbit_count=system.k,
        consistent=system.consistent,
        trials=trials,
        upper_ok=upper_ok,
        greedy_fallbacks=fallbacks,
        lower_value=lower_value,
        lower_ok=lower_ok,
        failures=tuple(failures),
    )
