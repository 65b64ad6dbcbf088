"""Shared generators: exhaustive small-graph enumeration, random graphs,
and pools of switch-commutative groups per alphabet.

Also prints the one-line PASS/FAIL summary per acceptance criterion at
the end of a session that ran the acceptance module."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import pytest

from switchhom.graph_core import NMGraph, build_graph
from switchhom.typeset import (
    Alphabet,
    SwitchGroup,
    TypePerm,
    group_closure,
    is_switch_commutative,
    subgroups,
    symmetric_group,
    trivial_group,
)


def all_graphs(alphabet: Alphabet, max_vertices: int) -> list[NMGraph]:
    """Every labeled graph with 1..max_vertices vertices over the alphabet."""
    out = []
    for n in range(1, max_vertices + 1):
        labels = [f"v{i}" for i in range(n)]
        pairs = list(itertools.combinations(range(n), 2))
        choices = [None] + list(alphabet.types())
        for combo in itertools.product(choices, repeat=len(pairs)):
            edges = [(labels[a], labels[b], t)
                     for (a, b), t in zip(pairs, combo) if t is not None]
            out.append(build_graph(alphabet, labels, edges))
    return out


def random_graph(
    rng: random.Random,
    alphabet: Alphabet,
    n_vertices: int,
    edge_prob: float = 0.5,
    prefix: str = "v",
) -> NMGraph:
    labels = [f"{prefix}{i}" for i in range(n_vertices)]
    edges = []
    for i in range(n_vertices):
        for j in range(i + 1, n_vertices):
            if rng.random() < edge_prob:
                edges.append((labels[i], labels[j], rng.randint(1, alphabet.size)))
    return build_graph(alphabet, labels, edges)


@lru_cache(maxsize=None)
def sc_groups(n: int, m: int) -> tuple[SwitchGroup, ...]:
    """All switch-commutative subgroups of the symmetric group on A_{n,m}."""
    alphabet = Alphabet(n, m)
    return tuple(g for g in subgroups(symmetric_group(alphabet))
                 if is_switch_commutative(g))


def random_sc_group(rng: random.Random, alphabet: Alphabet,
                    max_order: int | None = None) -> SwitchGroup:
    pool = [g for g in sc_groups(alphabet.n, alphabet.m)
            if max_order is None or len(g) <= max_order]
    return pool[rng.randrange(len(pool))]


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance-criterion test")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for status in ("passed", "failed"):
        for report in terminalreporter.stats.get(status, []):
            name = getattr(report, "nodeid", "")
            if "test_acceptance.py::test_criterion" in name:
                short = name.split("::", 1)[1]
                lines.append((short, status.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for short, status in sorted(lines):
            terminalreporter.write_line(f"{status:4s}  {short}")


# frequently used fixtures


@pytest.fixture
def push_group() -> SwitchGroup:
    return group_closure(Alphabet(1, 0), [TypePerm((2, 1))])


@pytest.fixture
def c3_group() -> SwitchGroup:
    return group_closure(Alphabet(1, 1), [TypePerm((2, 3, 1))])


@pytest.fixture
def swap_group() -> SwitchGroup:
    return group_closure(Alphabet(0, 2), [TypePerm((2, 1))])


@pytest.fixture
def trivial_10() -> SwitchGroup:
    return trivial_group(Alphabet(1, 0))
