"""Type alphabet, the bar involution, and permutation groups acting on it.

An (n,m)-graph carries adjacency types from the alphabet {1..2n+m}: the
2n values at the bottom are the two *views* of the n arc colors (an arc
of color c seen from its tail is type 2c, from its head 2c-1), and the
top m values are edge colors.  The *bar* involution swaps the two views
of each arc color and fixes edge colors.

A switch group is a finite subgroup of the symmetric group on the
alphabet, stored extensionally with a canonical element order so groups
compare by value.  The predicates below classify groups the way the
switching theory needs: abelian, switch-commutative (switching two
adjacent vertices is order-independent), consistent (orbits closed under
bar), and arc/edge-separating ("LMW style").
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ResourceLimitError, ValidationError

DEFAULT_GROUP_CAP = 10_080


@dataclass(frozen=True)
class Alphabet:
    """The type alphabet of an (n,m)-graph: n arc colors, m edge colors."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValidationError(f"negative color counts: n={self.n}, m={self.m}")
        if self.size < 1:
            raise ValidationError("alphabet must contain at least one type")

    @property
    def size(self) -> int:
        return 2 * self.n + self.m

    @property
    def arc_view_types(self) -> range:
        return range(1, 2 * self.n + 1)

    @property
    def edge_types(self) -> range:
        return range(2 * self.n + 1, self.size + 1)

    def types(self) -> range:
        return range(1, self.size + 1)

    def is_arc_view(self, t: int) -> bool:
        return 1 <= t <= 2 * self.n

    def check_type(self, t: int) -> None:
        if not 1 <= t <= self.size:
            raise ValidationError(f"type {t} outside alphabet 1..{self.size}")

    def bar(self, t: int) -> int:
        """Swap the two views of an arc color; fix edge colors.

        >>> Alphabet(1, 1).bar(2), Alphabet(1, 1).bar(3)
        (1, 3)
        >>> Alphabet(2, 0).bar(3)
        4
        """
        self.check_type(t)
        if t > 2 * self.n:
            return t
        return t - 1 if t % 2 == 0 else t + 1


def bar(alphabet: Alphabet, t: int) -> int:
    """Functional form of the bar involution."""
    return alphabet.bar(t)


@dataclass(frozen=True)
class TypePerm:
    """A permutation of the alphabet, stored as the image tuple of 1..size."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise ValidationError(f"not a bijection of 1..{len(self.image)}: {self.image}")

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, t: int) -> int:
        return self.image[t - 1]

    def compose(self, other: TypePerm) -> TypePerm:
        """self after other: (self.compose(other))(t) == self(other(t))."""
        return TypePerm(tuple(self.image[j - 1] for j in other.image))

    def inverse(self) -> TypePerm:
        inv = [0] * len(self.image)
        for i, t in enumerate(self.image):
            inv[t - 1] = i + 1
        return TypePerm(tuple(inv))

    def is_identity(self) -> bool:
        return all(t == i + 1 for i, t in enumerate(self.image))


def identity_perm(alphabet: Alphabet) -> TypePerm:
    return TypePerm(tuple(alphabet.types()))


def bar_perm(alphabet: Alphabet) -> TypePerm:
    """The bar involution as a permutation of the alphabet."""
    return TypePerm(tuple(alphabet.bar(t) for t in alphabet.types()))


def perm_from_mapping(alphabet: Alphabet, mapping: dict[int, int]) -> TypePerm:
    """Build a TypePerm from a partial mapping; unmentioned types are fixed.

    >>> perm_from_mapping(Alphabet(1, 1), {1: 2, 2: 3, 3: 1}).image
    (2, 3, 1)
    """
    image = list(alphabet.types())
    for src, dst in mapping.items():
        alphabet.check_type(src)
        alphabet.check_type(dst)
        image[src - 1] = dst
    return TypePerm(tuple(image))


@dataclass(frozen=True)
class SwitchGroup:
    """A finite permutation group on an alphabet, stored extensionally.

    Elements are deduplicated and ordered lexicographically by image
    tuple, which puts the identity first; two groups over the same
    alphabet are equal iff they have the same element set.
    """

    alphabet: Alphabet
    elements: tuple[TypePerm, ...]

    def __post_init__(self) -> None:
        size = self.alphabet.size
        if not self.elements:
            raise ValidationError("a group needs at least the identity")
        for p in self.elements:
            if p.degree != size:
                raise ValidationError(f"element degree {p.degree} != alphabet size {size}")
        images = [p.image for p in self.elements]
        if sorted(set(images)) != images:
            raise ValidationError("elements must be deduplicated and sorted by image")
        elems = set(self.elements)
        if identity_perm(self.alphabet) not in elems:
            raise ValidationError("group does not contain the identity")
        for p in self.elements:
            if p.inverse() not in elems:
                raise ValidationError(f"group misses the inverse of {p.image}")
            for q in self.elements:
                if p.compose(q) not in elems:
                    raise ValidationError(
                        f"group not closed: {p.image} o {q.image} missing")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[TypePerm]:
        return iter(self.elements)

    def __contains__(self, perm: TypePerm) -> bool:
        return perm in self._index

    @cached_property
    def _index(self) -> dict[TypePerm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @property
    def identity(self) -> TypePerm:
        return self.elements[0]

    def index_of(self, perm: TypePerm) -> int:
        try:
            return self._index[perm]
        except KeyError:
            raise ValidationError(f"{perm.image} is not a group element") from None

    def element(self, index: int) -> TypePerm:
        return self.elements[index]


def _close_under_composition(
    alphabet: Alphabet, seed: Iterable[TypePerm], max_size: int
) -> set[TypePerm]:
    elements = {identity_perm(alphabet)}
    frontier = list(seed)
    for p in frontier:
        if p.degree != alphabet.size:
            raise ValidationError(
                f"generator degree {p.degree} does not match alphabet size {alphabet.size}")
    elements.update(frontier)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(elements):
                for c in (a.compose(b), b.compose(a), a.inverse()):
                    if c not in elements:
                        elements.add(c)
                        fresh.append(c)
        if len(elements) > max_size:
            raise ResourceLimitError(
                f"group closure exceeded cap of {max_size} elements")
        frontier = fresh
    return elements


def group_closure(
    alphabet: Alphabet,
    generators: Sequence[TypePerm],
    max_size: int = DEFAULT_GROUP_CAP,
) -> SwitchGroup:
    """Smallest composition-closed group containing the generators."""
    elements = _close_under_composition(alphabet, generators, max_size)
    ordered = tuple(sorted(elements, key=lambda p: p.image))
    return SwitchGroup(alphabet, ordered)


def trivial_group(alphabet: Alphabet) -> SwitchGroup:
    return group_closure(alphabet, [])


def symmetric_group(alphabet: Alphabet) -> SwitchGroup:
    """The full symmetric group on the alphabet (small alphabets only)."""
    size = alphabet.size
    gens = []
    if size >= 2:
        gens.append(perm_from_mapping(alphabet, {1: 2, 2: 1}))
        gens.append(TypePerm(tuple(range(2, size + 1)) + (1,)))
    cap = 1
    for k in range(2, size + 1):
        cap *= k
    return group_closure(alphabet, gens, max_size=max(cap, 1))


def is_abelian(group: SwitchGroup) -> bool:
    elems = group.elements
    for i, p in enumerate(elems):
        for q in elems[i + 1:]:
            if p.compose(q) != q.compose(p):
                return False
    return True


def is_switch_commutative(group: SwitchGroup) -> bool:
    """Order-independence of switching two adjacent vertices.

    Switching the tail of an adjacency by sigma and the head by tau sends
    type t to bar(tau(bar(sigma(t)))); the group is switch-commutative
    exactly when that transform agrees with the opposite switching order
    for every pair of elements, i.e. bar(tau(bar(sigma(t)))) ==
    sigma(bar(tau(bar(t)))) for all sigma, tau, t.
    """
    b = bar_perm(group.alphabet)
    starred = [b.compose(p).compose(b) for p in group.elements]
    for sigma in group.elements:
        for tau_star in starred:
            if tau_star.compose(sigma) != sigma.compose(tau_star):
                return False
    return True


def switched_type(alphabet: Alphabet, sigma_u: TypePerm, sigma_v: TypePerm, t: int) -> int:
    """Type of an adjacency (v seen from u as t) after switching u by
    sigma_u and v by sigma_v."""
    return alphabet.bar(sigma_v(alphabet.bar(sigma_u(t))))


def orbits(group: SwitchGroup) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of the alphabet, each orbit sorted, ordered by
    smallest element."""
    seen: set[int] = set()
    parts = []
    for t in group.alphabet.types():
        if t in seen:
            continue
        orbit = {p(t) for p in group.elements}
        seen.update(orbit)
        parts.append(tuple(sorted(orbit)))
    return tuple(parts)


def orbit_of(group: SwitchGroup, t: int) -> tuple[int, ...]:
    group.alphabet.check_type(t)
    return tuple(sorted({p(t) for p in group.elements}))


def is_consistent(group: SwitchGroup) -> bool:
    """True iff every orbit is closed under bar."""
    a = group.alphabet
    return all(
        all(a.bar(t) in orbit for t in orbit)
        for orbit in map(set, orbits(group))
    )


def is_lmw_style(group: SwitchGroup) -> bool:
    """Arc/edge-separating abelian groups: edge types stay edge types and
    each arc view pair {2c-1, 2c} lands on some arc view pair."""
    a = group.alphabet
    if not is_abelian(group):
        return False
    pairs = {frozenset((2 * c - 1, 2 * c)) for c in range(1, a.n + 1)}
    for p in group.elements:
        for t in a.edge_types:
            if a.is_arc_view(p(t)):
                return False
        for c in range(1, a.n + 1):
            if frozenset((p(2 * c - 1), p(2 * c))) not in pairs:
                return False
    return True


def subgroups(group: SwitchGroup) -> list[SwitchGroup]:
    """All subgroups, found by closing subgroup-plus-one-element seeds.

    Ordered by (order, element images) for determinism.  Intended for
    small groups only.
    """
    alphabet = group.alphabet
    trivial = trivial_group(alphabet)
    known = {trivial.elements: trivial}
    queue = [trivial]
    while queue:
        base = queue.pop()
        for extra in group.elements:
            if extra in base:
                continue
            closed = _close_under_composition(
                alphabet, set(base.elements) | {extra}, max_size=len(group))
            ordered = tuple(sorted(closed, key=lambda p: p.image))
            if ordered not in known:
                sub = SwitchGroup(alphabet, ordered)
                known[ordered] = sub
                queue.append(sub)
    return sorted(
        known.values(),
        key=lambda g: (len(g), tuple(p.image for p in g.elements)),
    )


def subgroup_from_elements(group: SwitchGroup, elements: Iterable[TypePerm]) -> SwitchGroup:
    """Validate that elements form a subgroup of ``group`` and wrap them."""
    elems = set(elements)
    for p in elems:
        if p not in group:
            raise ValidationError(f"{p.image} is not an element of the group")
    elems.add(group.identity)
    for p in elems:
        if p.inverse() not in elems:
            raise ValidationError("element set not closed under inverse")
        for q in elems:
            if p.compose(q) not in elems:
                raise ValidationError("element set not closed under composition")
    return SwitchGroup(group.alphabet, tuple(sorted(elems, key=lambda p: p.image)))


def is_squarefree(value: int) -> bool:
    d = 2
    while d * d <= value:
        if value % (d * d) == 0:
            return False
        d += 1
    return True


def subgroup_and_complement(
    group: SwitchGroup, sub_elements: Iterable[TypePerm]
) -> tuple[SwitchGroup, SwitchGroup | None]:
    """Wrap ``sub_elements`` as a subgroup and search for a complement.

    A complement L satisfies L * sub = group with trivial intersection;
    it exists whenever the group order is squarefree (quotients are then
    represented by complements, with no general coset machinery), and may
    or may not exist otherwise.  Returns (subgroup, complement-or-None).
    """
    sub = subgroup_from_elements(group, sub_elements)
    if len(group) % len(sub) != 0:
        raise ValidationError("subgroup order does not divide group order")
    want = len(group) // len(sub)
    sub_set = set(sub.elements)
    for cand in subgroups(group):
        if len(cand) != want:
            continue
        if set(cand.elements) & sub_set != {group.identity}:
            continue
        product = {a.compose(b) for a in cand.elements for b in sub.elements}
        if len(product) == len(group):
            return sub, cand
    return sub, None


# ---------------------------------------------------------------------------
# Group text format
# ---------------------------------------------------------------------------
#
#   alphabet <n> <m>
#   perm <i1> <i2> ... <i_{2n+m}>     (one line per generator)
#
# Lines starting with '#' are comments.


def parse_group(text: str, max_size: int = DEFAULT_GROUP_CAP) -> SwitchGroup:
    alphabet: Alphabet | None = None
    generators: list[TypePerm] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if alphabet is None:
            if fields[0] != "alphabet" or len(fields) != 3:
                raise ValidationError(
                    f"line {lineno}: expected 'alphabet <n> <m>', got {raw!r}")
            try:
                alphabet = Alphabet(int(fields[1]), int(fields[2]))
            except ValueError:
                raise ValidationError(f"line {lineno}: non-integer alphabet sizes") from None
            continue
        if fields[0] != "perm":
            raise ValidationError(f"line {lineno}: expected 'perm ...', got {raw!r}")
        try:
            image = tuple(int(x) for x in fields[1:])
        except ValueError:
            raise ValidationError(f"line {lineno}: non-integer permutation entry") from None
        if len(image) != alphabet.size:
            raise ValidationError(
                f"line {lineno}: permutation has {len(image)} entries, "
                f"alphabet needs {alphabet.size}")
        if sorted(image) != list(alphabet.types()):
            raise ValidationError(f"line {lineno}: not a bijection of 1..{alphabet.size}")
        generators.append(TypePerm(image))
    if alphabet is None:
        raise ValidationError("group text is missing the 'alphabet <n> <m>' line")
    return group_closure(alphabet, generators, max_size=max_size)


def format_group(group: SwitchGroup) -> str:
    """Serialize a group by listing every element as a generator line."""
    lines = [f"alphabet {group.alphabet.n} {group.alphabet.m}"]
    for p in group.elements:
        lines.append("perm " + " ".join(str(t) for t in p.image))
    return "\n".join(lines) + "\n"


