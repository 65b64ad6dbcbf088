"""The (n,m)-graph data model: typed adjacencies, validation, text I/O.

An NMGraph stores at most one typed adjacency per unordered vertex pair,
as an ordered-view map: adj(u, v) = t means "v is a t-neighbor of u",
and the mirror entry always satisfies adj(v, u) = bar(t).  Even arc
views point away from the viewer (adj(u, v) = 2c is an arc u -> v of
color c), odd views toward it, and types above 2n are undirected edges.

Graphs are immutable after construction; every operation returns a new
graph.  Vertex labels are preserved through operations so that witnesses
stay readable; derived constructions (rho, products) use structured
labels like "v^2" and "(u,v)^0".
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ContractError, ValidationError
from .typeset import Alphabet

AdjacencyKey = tuple[tuple[int, int, int], ...]


class NMGraph:
    """A finite simple (n,m)-graph with labeled vertices."""

    __slots__ = ("alphabet", "labels", "_index", "_adj", "_nbrs", "__dict__")

    def __init__(
        self,
        alphabet: Alphabet,
        labels: Sequence[str],
        adjacency: dict[tuple[int, int], int],
    ):
        """Internal constructor over dense indices; use build_graph()."""
        self.alphabet = alphabet
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("duplicate vertex labels")
        self._index = {v: i for i, v in enumerate(self.labels)}
        self._adj = dict(adjacency)
        nbrs: dict[int, list[int]] = {i: [] for i in range(len(self.labels))}
        for (u, v) in self._adj:
            nbrs[u].append(v)
        self._nbrs = {u: tuple(sorted(vs)) for u, vs in nbrs.items()}

    # ---- basic accessors --------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def vertices(self) -> tuple[str, ...]:
        return self.labels

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidationError(f"unknown vertex {label!r}") from None

    def has_vertex(self, label: str) -> bool:
        return label in self._index

    def adjacency(self, u: str, v: str) -> int | None:
        """Type of v as seen from u, or None when non-adjacent."""
        return self._adj.get((self.index_of(u), self.index_of(v)))

    def adjacency_by_index(self, u: int, v: int) -> int | None:
        return self._adj.get((u, v))

    def neighbor_indices(self, u: int) -> tuple[int, ...]:
        return self._nbrs[u]

    def degree(self, v: str) -> int:
        return len(self._nbrs[self.index_of(v)])

    def adj_entries(self) -> Iterator[tuple[str, str, int]]:
        """One entry per unordered pair, viewed from the lower index."""
        for (u, v), t in sorted(self._adj.items()):
            if u < v:
                yield self.labels[u], self.labels[v], t

    def n_adjacent_pairs(self) -> int:
        return len(self._adj) // 2

    def adjacency_key(self) -> AdjacencyKey:
        """Canonical serialization of the adjacency map, for dedup/equality."""
        return tuple(sorted((u, v, t) for (u, v), t in self._adj.items() if u < v))

    def raw_adjacency(self) -> dict[tuple[int, int], int]:
        return dict(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NMGraph):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.labels == other.labels
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.labels, self.adjacency_key()))

    def __repr__(self) -> str:
        a = self.alphabet
        return (f"NMGraph(n={a.n}, m={a.m}, vertices={self.n_vertices}, "
                f"pairs={self.n_adjacent_pairs()})")

    @cached_property
    def type_degree_table(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, count of neighbors seen with each type (1-indexed types)."""
        size = self.alphabet.size
        table = [[0] * (size + 1) for _ in range(self.n_vertices)]
        for (u, v), t in self._adj.items():
            table[u][t] += 1
        return tuple(tuple(row) for row in table)


def build_graph(
    alphabet: Alphabet,
    vertices: Sequence[str],
    typed_edges: Iterable[tuple[str, str, int]] = (),
) -> NMGraph:
    """Build a graph from (u, v, t) entries meaning "v is a t-neighbor of u"."""
    labels = [str(v) for v in vertices]
    index = {v: i for i, v in enumerate(labels)}
    if len(index) != len(labels):
        raise ValidationError("duplicate vertex labels")
    adjacency: dict[tuple[int, int], int] = {}
    for entry in typed_edges:
        u, v, t = entry
        if u not in index or v not in index:
            raise ValidationError(f"adjacency {entry!r} names an unknown vertex")
        if u == v:
            raise ValidationError(f"loop at {u!r} is not allowed")
        alphabet.check_type(t)
        ui, vi = index[u], index[v]
        if (ui, vi) in adjacency:
            raise ValidationError(f"duplicate adjacency for pair {u!r}, {v!r}")
        adjacency[(ui, vi)] = t
        adjacency[(vi, ui)] = alphabet.bar(t)
    return NMGraph(alphabet, labels, adjacency)


def t_neighbors(g: NMGraph, v: str, t: int) -> set[str]:
    """All u that are t-neighbors of v (i.e. adj(v, u) = t)."""
    g.alphabet.check_type(t)
    vi = g.index_of(v)
    return {g.labels[u] for u in g.neighbor_indices(vi)
            if g.adjacency_by_index(vi, u) == t}


def induced_subgraph(g: NMGraph, keep: Iterable[str]) -> NMGraph:
    """Restriction to a vertex subset, original label order preserved."""
    keep_set = set(keep)
    for v in keep_set:
        g.index_of(v)
    labels = [v for v in g.labels if v in keep_set]
    old_new = {g.index_of(v): i for i, v in enumerate(labels)}
    adjacency = {
        (old_new[u], old_new[v]): t
        for (u, v), t in g.raw_adjacency().items()
        if u in old_new and v in old_new
    }
    return NMGraph(g.alphabet, labels, adjacency)


def delete_vertex(g: NMGraph, v: str) -> NMGraph:
    g.index_of(v)
    return induced_subgraph(g, (u for u in g.labels if u != v))


def disjoint_union(g: NMGraph, h: NMGraph) -> NMGraph:
    """Disjoint union; labels kept when distinct, else prefixed L./R."""
    if g.alphabet != h.alphabet:
        raise ContractError("disjoint union needs a common alphabet")
    if set(g.labels) & set(h.labels):
        g_labels = [f"L.{v}" for v in g.labels]
        h_labels = [f"R.{v}" for v in h.labels]
    else:
        g_labels = list(g.labels)
        h_labels = list(h.labels)
    shift = g.n_vertices
    adjacency = dict(g.raw_adjacency())
    for (u, v), t in h.raw_adjacency().items():
        adjacency[(u + shift, v + shift)] = t
    return NMGraph(g.alphabet, g_labels + h_labels, adjacency)


def underlying_edges(g: NMGraph) -> list[tuple[int, int]]:
    """Unordered adjacent index pairs (u < v), types forgotten."""
    return [(u, v) for (u, v) in g.raw_adjacency() if u < v]


def is_forest(g: NMGraph) -> bool:
    """True iff the underlying simple graph is acyclic."""
    parent = list(range(g.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in underlying_edges(g):
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# ---------------------------------------------------------------------------
# Graph text format
# ---------------------------------------------------------------------------
#
#   nmgraph <n> <m>
#   vertices <v1> <v2> ...
#   adj <u> <v> <t>          (v is a t-neighbor of u)
#
# '#' starts a comment.  Labels are whitespace-free tokens.


def parse_graph(text: str) -> NMGraph:
    alphabet: Alphabet | None = None
    vertices: list[str] | None = None
    edges: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if alphabet is None:
            if fields[0] != "nmgraph" or len(fields) != 3:
                raise ValidationError(
                    f"line {lineno}: expected 'nmgraph <n> <m>', got {raw!r}")
            try:
                alphabet = Alphabet(int(fields[1]), int(fields[2]))
            except ValueError:
                raise ValidationError(f"line {lineno}: non-integer alphabet sizes") from None
            continue
        if vertices is None:
            if fields[0] != "vertices":
                raise ValidationError(f"line {lineno}: expected 'vertices ...', got {raw!r}")
            vertices = fields[1:]
            continue
        if fields[0] != "adj" or len(fields) != 4:
            raise ValidationError(f"line {lineno}: expected 'adj <u> <v> <t>', got {raw!r}")
        try:
            t = int(fields[3])
        except ValueError:
            raise ValidationError(f"line {lineno}: non-integer type") from None
        edges.append((fields[1], fields[2], t))
    if alphabet is None:
        raise ValidationError("graph text is missing the 'nmgraph <n> <m>' line")
    if vertices is None:
        raise ValidationError("graph text is missing the 'vertices' line")
    return build_graph(alphabet, vertices, edges)


def format_graph(g: NMGraph) -> str:
    lines = [f"nmgraph {g.alphabet.n} {g.alphabet.m}"]
    lines.append(("vertices " + " ".join(g.labels)).rstrip())
    for u, v, t in g.adj_entries():
        lines.append(f"adj {u} {v} {t}")
    return "\n".join(lines) + "\n"


def to_dot(g: NMGraph) -> str:
    """DOT text: arcs as directed edges labeled by arc color, edges
    undirected labeled by edge color."""
    a = g.alphabet
    lines = ["digraph nmgraph {"]
    for v in g.labels:
        lines.append(f'  "{v}";')
    for u, v, t in g.adj_entries():
        if a.is_arc_view(t):
            # pick the tail view: adj(u,v) even means arc u -> v
            if t % 2 == 0:
                lines.append(f'  "{u}" -> "{v}" [label="{t // 2}"];')
            else:
                lines.append(f'  "{v}" -> "{u}" [label="{(t + 1) // 2}"];')
        else:
            lines.append(f'  "{u}" -> "{v}" [dir=none, label="{t - 2 * a.n}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
