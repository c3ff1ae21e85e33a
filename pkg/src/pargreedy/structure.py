"""Iteration assignments, information graphs and schedule extraction.

Agents are named 1..n; the index order is semantically meaningful: an edge
{j, i} with j < i means agent i observes agent j's decision before choosing.
Graph equality is structural (same n, same edge set); the constructions are
label-sensitive, so no isomorphism checking anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def remainder_one(n: int, q: int) -> bool:
    """The branch test n = 1 (mod q), evaluated as n % q == 1 % q.

    Modulo-1 congruences are vacuously true, so q = 1 always selects the
    first branch and the formulas degenerate gracefully.
    """
    return n % q == 1 % q


def _check_n_q(n: int, q: int, q_name: str = "q") -> None:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n: must be a positive integer, got {n!r}")
    if not isinstance(q, int) or q < 1 or q > n:
        raise InputError(f"{q_name}: must satisfy 1 <= {q_name} <= n, got {q!r}")


@dataclass(frozen=True)
class IterationAssignment:
    """Map of agents 1..n to iterations 1..q, stored as a tuple P.

    Construction does not enforce the invariants; violations are data,
    reported by :func:`validate_assignment`.
    """
    n: int
    q: int
    P: tuple[int, ...]

    def __post_init__(self):
        if len(self.P) != self.n:
            raise InputError(f"P: expected {self.n} entries, got {len(self.P)}")

    def iteration(self, agent: int) -> int:
        return self.P[agent - 1]


@dataclass(frozen=True)
class AssignmentViolation:
    kind: str           # "order" or "range"
    agents: tuple[int, ...]
    detail: str


def validate_assignment(assignment: IterationAssignment) -> Optional[AssignmentViolation]:
    """None when order preservation and iteration range both hold."""
    P, q = assignment.P, assignment.q
    for i, p in enumerate(P, start=1):
        if not isinstance(p, int) or not 1 <= p <= q:
            return AssignmentViolation("range", (i,), f"P({i})={p} outside 1..{q}")
    for i in range(1, assignment.n):
        if P[i - 1] > P[i]:
            return AssignmentViolation(
                "order", (i, i + 1),
                f"order preservation violated: P({i})={P[i - 1]} > P({i + 1})={P[i]}")
    return None


class InformationGraph:
    """Undirected graph over agents 1..n with canonical (min, max) edges."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"n: must be a nonnegative integer, got {n!r}")
        canon = set()
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise InputError(f"edges: expected a pair, got {pair!r}")
            i, j = pair
            if not (isinstance(i, int) and isinstance(j, int)):
                raise InputError(f"edges: vertex ids must be integers, got {pair!r}")
            if i == j:
                raise InputError(f"edges: self-loop at vertex {i}")
            lo, hi = (i, j) if i < j else (j, i)
            if lo < 1 or hi > n:
                raise InputError(f"edges: pair {pair!r} outside vertices 1..{n}")
            canon.add((lo, hi))
        self.n = n
        self.edges = frozenset(canon)
        self._adj: Optional[list[int]] = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor bitmask, 0-indexed (bit k is vertex k+1)."""
        if self._adj is None:
            adj = [0] * self.n
            for i, j in self.edges:
                adj[i - 1] |= 1 << (j - 1)
                adj[j - 1] |= 1 << (i - 1)
            self._adj = adj
        return self._adj

    def in_neighbor_masks(self) -> list[int]:
        """Lower-index neighbors only: the agents whose decision vertex i sees."""
        adj = self.adjacency_masks()
        return [adj[i] & ((1 << i) - 1) for i in range(self.n)]

    def in_neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(1, i) if (j, i) in self.edges)

    def complement(self) -> "InformationGraph":
        edges = [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)
                 if (i, j) not in self.edges]
        return InformationGraph(self.n, edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other) -> bool:
        return (isinstance(other, InformationGraph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"InformationGraph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class Schedule:
    """Earliest feasible iteration per agent plus the overall depth."""
    levels: tuple[int, ...]
    depth: int

    def assignment(self) -> IterationAssignment:
        return IterationAssignment(len(self.levels), max(self.depth, 1), self.levels)


def optimal_assignment(n: int, q: int) -> IterationAssignment:
    """An iteration assignment achieving the best competitive ratio.

    Splits the agents as evenly as possible across the q iterations; in the
    remainder-one case the last agent is deferred to the final iteration so
    the other n-1 agents split over blocks of r-1.
    """
    _check_n_q(n, q)
    if n == 1:
        return IterationAssignment(1, q, (1,))
    r = _ceil_div(n, q)
    if remainder_one(n, q):
        P = tuple(_ceil_div(i, r - 1) for i in range(1, n)) + (q,)
    else:
        P = tuple(_ceil_div(i, r) for i in range(1, n + 1))
    return IterationAssignment(n, q, P)


def induced_graph(assignment: IterationAssignment) -> InformationGraph:
    """Graph with an edge {i, j} whenever the two agents sit in different
    iterations (the later one observes the earlier one)."""
    violation = validate_assignment(assignment)
    if violation is not None:
        raise InputError(f"assignment: {violation.detail}")
    P = assignment.P
    edges = [(i, j)
             for i in range(1, assignment.n + 1)
             for j in range(i + 1, assignment.n + 1)
             if P[i - 1] < P[j - 1]]
    return InformationGraph(assignment.n, edges)


def earliest_schedule(graph: InformationGraph) -> Schedule:
    """Earliest iteration per agent: 1 plus the longest observation chain
    ending at the agent.  Pointwise minimal among valid schedules."""
    in_masks = graph.in_neighbor_masks()
    levels = [0] * graph.n
    for i in range(graph.n):
        m = in_masks[i]
        best = 0
        while m:
            b = m & -m
            lvl = levels[b.bit_length() - 1]
            if lvl > best:
                best = lvl
            m ^= b
        levels[i] = best + 1
    return Schedule(tuple(levels), max(levels, default=1))


def is_feasible(graph: InformationGraph, q: int) -> bool:
    """Whether the graph admits a parallelization in at most q iterations."""
    if not isinstance(q, int) or q < 1:
        raise InputError(f"q: must be a positive integer, got {q!r}")
    return earliest_schedule(graph).depth <= q


def optimal_graph(n: int, q: int) -> InformationGraph:
    """An edge-minimal information graph achieving the optimal ratio.

    In the remainder-one case, agents below n are chained by residue mod
    r-1 and agent n observes the first (q-1)(r-1) agents; otherwise agents
    are chained by residue mod r, which is the complement Turan graph.
    """
    _check_n_q(n, q)
    if n == 1:
        return InformationGraph(1)
    r = _ceil_div(n, q)
    if remainder_one(n, q):
        step = r - 1
        edges = [(i, j) for i in range(1, n) for j in range(i + 1, n)
                 if (j - i) % step == 0]
        edges += [(i, n) for i in range(1, (q - 1) * step + 1)]
    else:
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
                 if (j - i) % r == 0]
    return InformationGraph(n, edges)


def turan_graph(n: int, r: int) -> InformationGraph:
    """Complete multipartite graph on r near-equal residue classes.

    Vertices i and j are adjacent iff i != j (mod r).  The (n mod r)
    classes of size ceil(n/r) are the residues 1..(n mod r).
    """
    _check_n_q(n, r, "r")
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
             if (j - i) % r != 0]
    return InformationGraph(n, edges)


def complement_turan_graph(n: int, r: int) -> InformationGraph:
    """Disjoint union of r cliques: vertices adjacent iff i = j (mod r)."""
    _check_n_q(n, r, "r")
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
             if (j - i) % r == 0]
    return InformationGraph(n, edges)


def normalize_assignment(assignment: IterationAssignment) -> IterationAssignment:
    """Compress the used iteration values onto 1..depth, preserving order."""
    used = sorted(set(assignment.P))
    rank = {v: k + 1 for k, v in enumerate(used)}
    levels = tuple(rank[p] for p in assignment.P)
    return IterationAssignment(assignment.n, max(levels, default=1), levels)
