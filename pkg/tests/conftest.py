"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's search algorithms: they
enumerate subsets, colorings and profiles directly, so the tests compare
two unrelated routes to the same number.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import pytest

from pargreedy import AgentSpace, InformationGraph, SetFunction


# -- graph oracles (subset scans, no branch and bound) -----------------


def is_independent(graph: InformationGraph, vertices) -> bool:
    return all(not graph.has_edge(i, j) for i, j in combinations(vertices, 2))


def is_clique(graph: InformationGraph, vertices) -> bool:
    return all(graph.has_edge(i, j) for i, j in combinations(vertices, 2))


def brute_alpha(graph: InformationGraph) -> int:
    best = 0
    verts = range(1, graph.n + 1)
    for size in range(graph.n, 0, -1):
        if any(is_independent(graph, c) for c in combinations(verts, size)):
            return size
    return best


def brute_omega(graph: InformationGraph) -> int:
    verts = range(1, graph.n + 1)
    for size in range(graph.n, 0, -1):
        if any(is_clique(graph, c) for c in combinations(verts, size)):
            return size
    return 0


def brute_theta(graph: InformationGraph) -> int:
    """Minimum clique partition size by trying every assignment of vertices
    to k groups, k ascending.  Exponential; for oracle-sized graphs only."""
    n = graph.n
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for labels in product(range(k), repeat=n):
            if set(labels) != set(range(k)):
                continue
            groups = [[v + 1 for v in range(n) if labels[v] == g] for g in range(k)]
            if all(is_clique(graph, grp) for grp in groups):
                return k
    return n


def all_graphs(n: int):
    """Every labeled graph on vertices 1..n."""
    pairs = list(combinations(range(1, n + 1), 2))
    for bits in range(1 << len(pairs)):
        yield InformationGraph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


def brute_submodular(f: SetFunction) -> bool:
    """The full quantifier form: f(e|A) >= f(e|B) for every A subset of B
    and e outside B."""
    n = len(f.ground)
    table = [f.mask_value(m) for m in range(1 << n)]
    for b in range(1 << n):
        a = b
        while True:  # enumerate subsets a of b
            for i in range(n):
                e = 1 << i
                if b & e:
                    continue
                if table[a | e] - table[a] < table[b | e] - table[b]:
                    return False
            if a == 0:
                break
            a = (a - 1) & b
    return True


def brute_optimum_value(f: SetFunction, agents: AgentSpace) -> Fraction:
    best = Fraction(0)
    pools = [sorted(d) if d else [None] for d in agents.decisions]
    for profile in product(*pools):
        chosen = [d for d in profile if d is not None]
        v = f.value(chosen)
        if v > best:
            best = v
    return best


# -- shared fixtures ---------------------------------------------------


@pytest.fixture
def cover_fixture() -> SetFunction:
    """Two targets of weight 1 and 2; element b covers both."""
    return SetFunction.cover(
        ground=("a", "b"),
        targets=("y1", "y2"),
        weights={"y1": 1, "y2": 2},
        coverage={"a": ("y1",), "b": ("y1", "y2")},
    )


@pytest.fixture
def tie_fixture() -> tuple[SetFunction, AgentSpace, InformationGraph]:
    """Agent 1 ties between a fresh target and agent 2's only target."""
    f = SetFunction.cover(
        ground=("a", "b1", "b2"),
        targets=("y1", "y2"),
        weights={"y1": 1, "y2": 1},
        coverage={"a": ("y1",), "b1": ("y2",), "b2": ("y2",)},
    )
    return f, AgentSpace([{"a", "b1"}, {"b2"}]), InformationGraph(2, [(1, 2)])
