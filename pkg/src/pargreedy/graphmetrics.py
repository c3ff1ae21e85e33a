"""Exact combinatorial invariants of information graphs.

Everything here is exact: independence and clique numbers come from a
bitset branch-and-bound, the clique cover number from an exact coloring of
the complement, and the sibling / pseudo-independence predicates from full
enumeration of the maximum sets they quantify over.  Computations refuse
graphs above the cap with a CapacityError instead of approximating.

The in-neighborhood convention is fixed module-wide: N_i contains only the
lower-index neighbors of i, matching the direction of information flow.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from .errors import CapacityError, InputError
from .structure import InformationGraph

DEFAULT_GRAPH_CAP = 20


def _require_cap(graph: InformationGraph, cap: int, what: str) -> None:
    if graph.n > cap:
        raise CapacityError(f"{what} on {graph.n} vertices exceeds exact-search cap {cap}")


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def _vertices(mask: int) -> tuple[int, ...]:
    """Bitmask to sorted 1-indexed vertex tuple."""
    return tuple(i + 1 for i in _bits(mask))


@dataclass(frozen=True)
class InvariantWitness:
    value: int
    witness: tuple

    def __int__(self) -> int:
        return self.value


def _max_independent_mask(adj: list[int], n: int) -> int:
    """Maximum independent set as a bitmask, branch-and-bound on bitsets.

    Branches on the highest-degree remaining vertex; prunes when even taking
    every remaining candidate cannot beat the incumbent.
    """
    best_mask = 0
    best_size = 0
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))

    def search(cand: int, cur: int, size: int) -> None:
        nonlocal best_mask, best_size
        if size > best_size:
            best_size, best_mask = size, cur
        if cand == 0 or size + cand.bit_count() <= best_size:
            return
        pivot, pivot_deg = -1, -1
        for v in _bits(cand):
            d = (adj[v] & cand).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        vb = 1 << pivot
        search((cand & ~adj[pivot]) & ~vb, cur | vb, size + 1)
        search(cand & ~vb, cur, size)

    search((1 << n) - 1, 0, 0)
    return best_mask


def _all_independent_of_size(adj: list[int], n: int, size: int) -> list[int]:
    """Every independent set of exactly the given size, as bitmasks."""
    out: list[int] = []

    def go(v: int, cand: int, cur: int, have: int) -> None:
        if have == size:
            out.append(cur)
            return
        if v == n or have + cand.bit_count() < size:
            return
        vb = 1 << v
        if cand & vb:
            go(v + 1, cand & ~adj[v] & ~vb, cur | vb, have + 1)
        go(v + 1, cand & ~vb, cur, have)

    go(0, (1 << n) - 1, 0, 0)
    return out


def independence_number(graph: InformationGraph, *, cap: int = DEFAULT_GRAPH_CAP) -> InvariantWitness:
    """alpha(G) with a maximum independent set as witness."""
    _require_cap(graph, cap, "independence number")
    mask = _max_independent_mask(graph.adjacency_masks(), graph.n)
    return InvariantWitness(mask.bit_count(), _vertices(mask))


def clique_number(graph: InformationGraph, *, cap: int = DEFAULT_GRAPH_CAP) -> InvariantWitness:
    """omega(G): the independence number of the complement."""
    _require_cap(graph, cap, "clique number")
    mask = _max_independent_mask(graph.complement().adjacency_masks(), graph.n)
    return InvariantWitness(mask.bit_count(), _vertices(mask))


def _chromatic_number(adj: list[int], n: int) -> tuple[int, list[int]]:
    """Exact chromatic number with one optimal coloring, by backtracking.

    Vertices are tried in degree-descending order; each vertex may only open
    one fresh color (symmetry breaking).  The lower bound is the clique
    number of the graph being colored, the upper bound a greedy coloring.
    """
    if n == 0:
        return 0, []
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))

    greedy = [-1] * n
    for v in order:
        used = {greedy[u] for u in _bits(adj[v]) if greedy[u] >= 0}
        c = 0
        while c in used:
            c += 1
        greedy[v] = c
    ub = max(greedy) + 1

    clique_mask = _max_independent_mask(
        [(~adj[v]) & ((1 << n) - 1) & ~(1 << v) for v in range(n)], n)
    lb = clique_mask.bit_count()

    colors = [-1] * n
    best = list(greedy)

    def assign(pos: int, used: int, k: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        forbidden = {colors[u] for u in _bits(adj[v]) if colors[u] >= 0}
        limit = min(used + 1, k)
        for c in range(limit):
            if c in forbidden:
                continue
            colors[v] = c
            if assign(pos + 1, max(used, c + 1), k):
                return True
            colors[v] = -1
        return False

    for k in range(lb, ub):
        colors = [-1] * n
        if assign(0, 0, k):
            best = list(colors)
            return k, best
    return ub, best


def clique_cover_number(graph: InformationGraph, *, cap: int = DEFAULT_GRAPH_CAP) -> InvariantWitness:
    """theta(G): chromatic number of the complement, witnessed by a minimum
    partition of the vertices into cliques."""
    _require_cap(graph, cap, "clique cover number")
    comp = graph.complement()
    k, coloring = _chromatic_number(comp.adjacency_masks(), graph.n)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(coloring):
        classes.setdefault(c, []).append(v + 1)
    partition = tuple(tuple(sorted(vs)) for _, vs in sorted(classes.items()))
    return InvariantWitness(k, partition)


def maximum_independent_sets(graph: InformationGraph, *, cap: int = DEFAULT_GRAPH_CAP) -> list[tuple[int, ...]]:
    """All maximum independent sets, as sorted vertex tuples."""
    _require_cap(graph, cap, "maximum independent set enumeration")
    adj = graph.adjacency_masks()
    alpha = _max_independent_mask(adj, graph.n).bit_count()
    return [_vertices(m) for m in _all_independent_of_size(adj, graph.n, alpha)]


@dataclass(frozen=True)
class SiblingWitness:
    """Vertex w observing a member of a maximum independent set."""
    vertex: int
    independent_set: tuple[int, ...]
    member: int


def has_sibling_condition(graph: InformationGraph, *, cap: int = DEFAULT_GRAPH_CAP) -> Optional[SiblingWitness]:
    """Search every maximum independent set I for a vertex w with a member
    of I in its in-neighborhood.  Returns a witness or None."""
    _require_cap(graph, cap, "sibling condition")
    adj = graph.adjacency_masks()
    alpha = _max_independent_mask(adj, graph.n).bit_count()
    in_masks = graph.in_neighbor_masks()
    for m in _all_independent_of_size(adj, graph.n, alpha):
        for w in range(graph.n):
            hits = in_masks[w] & m
            if hits:
                member = hits & -hits
                return SiblingWitness(w + 1, _vertices(m), member.bit_length())
    return None


def _max_pseudo_independent_mask(in_masks: list[int], n: int, p: int) -> int:
    """Maximum set J with |N_j n J| < p for every j in J.

    Members are added in increasing index order; because in-neighborhoods
    only look backwards, feasibility of J u {v} depends on v alone.
    """
    best_mask = 0
    best_size = 0

    def go(v: int, cur: int, have: int) -> None:
        nonlocal best_mask, best_size
        if have > best_size:
            best_size, best_mask = have, cur
        if v == n or have + (n - v) <= best_size:
            return
        if (in_masks[v] & cur).bit_count() < p:
            go(v + 1, cur | (1 << v), have + 1)
        go(v + 1, cur, have)

    go(0, 0, 0)
    return best_mask


def _all_pseudo_independent_of_size(in_masks: list[int], n: int, p: int, size: int) -> list[int]:
    out: list[int] = []

    def go(v: int, cur: int, have: int) -> None:
        if have == size:
            out.append(cur)
            return
        if v == n or have + (n - v) < size:
            return
        if (in_masks[v] & cur).bit_count() < p:
            go(v + 1, cur | (1 << v), have + 1)
        go(v + 1, cur, have)

    go(0, 0, 0)
    return out


def _check_p(p) -> None:
    if not isinstance(p, int) or p < 1:
        raise InputError(f"p: must be a positive integer, got {p!r}")


def pseudo_independence_number(graph: InformationGraph, p: int, *, cap: int = DEFAULT_GRAPH_CAP) -> InvariantWitness:
    """alpha_p(G): largest J whose every member has fewer than p
    in-neighbors inside J.  alpha_1 coincides with alpha."""
    _check_p(p)
    _require_cap(graph, cap, "pseudo-independence number")
    mask = _max_pseudo_independent_mask(graph.in_neighbor_masks(), graph.n, p)
    return InvariantWitness(mask.bit_count(), _vertices(mask))


def maximum_pseudo_independent_sets(graph: InformationGraph, p: int, *, cap: int = DEFAULT_GRAPH_CAP) -> list[tuple[int, ...]]:
    _check_p(p)
    _require_cap(graph, cap, "pseudo-independent set enumeration")
    in_masks = graph.in_neighbor_masks()
    best = _max_pseudo_independent_mask(in_masks, graph.n, p).bit_count()
    return [_vertices(m) for m in _all_pseudo_independent_of_size(in_masks, graph.n, p, best)]


@dataclass(frozen=True)
class PSiblingWitness:
    """Vertex w outside a maximum p-pseudo-independent set J observing at
    least p distinct members of J."""
    vertex: int
    pseudo_independent_set: tuple[int, ...]
    members: tuple[int, ...]


def has_p_sibling(graph: InformationGraph, p: int, *, cap: int = DEFAULT_GRAPH_CAP) -> Optional[PSiblingWitness]:
    """Search every maximum p-pseudo-independent set for a vertex with at
    least p of its members in the in-neighborhood."""
    _check_p(p)
    _require_cap(graph, cap, "p-sibling property")
    in_masks = graph.in_neighbor_masks()
    best = _max_pseudo_independent_mask(in_masks, graph.n, p).bit_count()
    for m in _all_pseudo_independent_of_size(in_masks, graph.n, p, best):
        for w in range(graph.n):
            if m >> w & 1:
                continue
            hits = in_masks[w] & m
            if hits.bit_count() >= p:
                return PSiblingWitness(w + 1, _vertices(m), _vertices(hits))
    return None


@dataclass(frozen=True)
class DisjointSetsCheck:
    """Outcome of the no-disjoint-maximum-sets check.

    Not applicable when the graph has the p-sibling property (the claim's
    hypothesis is unmet); otherwise ``holds`` reports whether every pair of
    maximum p-pseudo-independent sets intersects.
    """
    applicable: bool
    holds: bool
    counterexample: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None


def verify_no_disjoint_max_sets(graph: InformationGraph, p: int, *, cap: int = DEFAULT_GRAPH_CAP) -> DisjointSetsCheck:
    """For graphs without the p-sibling property, assert that maximum
    p-pseudo-independent sets pairwise intersect."""
    _check_p(p)
    _require_cap(graph, cap, "disjoint maximum set check")
    if has_p_sibling(graph, p, cap=cap) is not None:
        return DisjointSetsCheck(applicable=False, holds=True)
    in_masks = graph.in_neighbor_masks()
    best = _max_pseudo_independent_mask(in_masks, graph.n, p).bit_count()
    masks = _all_pseudo_independent_of_size(in_masks, graph.n, p, best)
    for a in range(len(masks)):
        for b in range(a + 1, len(masks)):
            if masks[a] & masks[b] == 0:
                return DisjointSetsCheck(
                    applicable=True, holds=False,
                    counterexample=(_vertices(masks[a]), _vertices(masks[b])))
    return DisjointSetsCheck(applicable=True, holds=True)
