"""Closed-form competitive-ratio bounds and the certification harness.

The bound formulas are exact rationals; the harness compares them with
empirically enumerated worst-greedy ratios and flags any instance whose
ratio falls below its guaranteed lower bound, or any witness missing its
predicted ratio.  Upper bounds are informational: a finite suite's
empirical ratio always sits at or above the true infimum, so exceeding an
upper bound on a particular instance is expected, not a failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import CapacityError, InputError
from .graphmetrics import (
    DEFAULT_GRAPH_CAP,
    clique_cover_number,
    has_sibling_condition,
    independence_number,
)
from .greedy import brute_force_optimum, empirical_ratio, run_greedy
from .objective import ONE, ZERO, AgentSpace, SetFunction, as_fraction, total_curvature
from .structure import InformationGraph, optimal_graph, remainder_one

# certify() computes the curvature-form lower bound only for ground sets up
# to this size; the scan behind total_curvature is a full 2^|S| enumeration.
DEFAULT_CURVATURE_CAP = 10


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_n_q(n: int, q: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n: must be a positive integer, got {n!r}")
    if not isinstance(q, int) or q < 1 or q > n:
        raise InputError(f"q: must satisfy 1 <= q <= n, got {q!r}")


@dataclass(frozen=True)
class RatioBounds:
    """Guaranteed lower and attainable upper bounds on a competitive ratio.

    ``refined_upper`` is present when the sibling condition tightens the
    upper bound from 1/alpha to 1/(alpha + 1).
    """
    lower: Fraction
    upper: Fraction
    refined_upper: Optional[Fraction] = None
    source: str = ""

    @property
    def effective_upper(self) -> Fraction:
        return self.refined_upper if self.refined_upper is not None else self.upper


def rho(n: int, q: int) -> Fraction:
    """Best competitive ratio over all n-agent structures with at most q
    iterations: 1/r in the remainder-one case, else 1/(r+1), r = ceil(n/q)."""
    _check_n_q(n, q)
    r = _ceil_div(n, q)
    return Fraction(1, r) if remainder_one(n, q) else Fraction(1, r + 1)


def graph_ratio_bounds(graph: InformationGraph, *, cap: int = DEFAULT_GRAPH_CAP) -> RatioBounds:
    """1/(theta+1) <= gamma(G) <= 1/alpha, refined to 1/(alpha+1) when some
    maximum independent set has an observed member."""
    alpha = independence_number(graph, cap=cap).value
    theta = clique_cover_number(graph, cap=cap).value
    sibling = has_sibling_condition(graph, cap=cap)
    refined = Fraction(1, alpha + 1) if sibling is not None else None
    return RatioBounds(
        lower=Fraction(1, theta + 1),
        upper=Fraction(1, alpha),
        refined_upper=refined,
        source="independence/clique-cover" + ("+sibling" if sibling else ""))


def curvature_graph_bounds(graph: InformationGraph, lam, *, cap: int = DEFAULT_GRAPH_CAP) -> RatioBounds:
    """Bounds under total curvature lam:
    (theta-(theta-1)lam)/(theta+lam) <= gamma <= (alpha-(alpha-1)lam)/alpha.

    At lam=1 this reduces to the plain bounds' lower/upper pair; at lam=0
    both sides equal 1.
    """
    lam = as_fraction(lam, "lambda")
    if not ZERO <= lam <= ONE:
        raise InputError(f"lambda: must lie in [0, 1], got {lam}")
    alpha = independence_number(graph, cap=cap).value
    theta = clique_cover_number(graph, cap=cap).value
    return RatioBounds(
        lower=(theta - (theta - 1) * lam) / (theta + lam),
        upper=(alpha - (alpha - 1) * lam) / Fraction(alpha),
        source="curvature-graph")


def curvature_eta_bounds(n: int, q: int, lam) -> RatioBounds:
    """Structure-level curvature bounds with r = ceil(n/q):
    (r-(r-1)lam)/(r+lam) <= eta_lam(n, q) <= (r-(r-1)lam)/r."""
    _check_n_q(n, q)
    lam = as_fraction(lam, "lambda")
    if not ZERO <= lam <= ONE:
        raise InputError(f"lambda: must lie in [0, 1], got {lam}")
    r = _ceil_div(n, q)
    return RatioBounds(
        lower=(r - (r - 1) * lam) / (r + lam),
        upper=(r - (r - 1) * lam) / Fraction(r),
        source="curvature-parallel")


def min_edges_bound(n: int, k: int) -> int:
    """Fewest edges of any n-vertex graph guaranteeing ratio >= 1/(k+1):
    the edge count of a disjoint union of k near-equal cliques.

    With m = n mod k there are m cliques of size ceil(n/k) and k - m of
    size floor(n/k).  Stated for k >= 2; k = 1 degenerates to the complete
    graph and is accepted.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n: must be a positive integer, got {n!r}")
    if not isinstance(k, int) or k < 1:
        raise InputError(f"k: must be a positive integer, got {k!r}")
    m = n % k
    hi = _ceil_div(n, k)
    lo = n // k
    return m * hi * (hi - 1) // 2 + (k - m) * lo * (lo - 1) // 2


@dataclass(frozen=True)
class ChainCheck:
    """The telescoping decomposition certifying optimum <= r * greedy on the
    remainder-one optimal graph, with every intermediate stage evaluated.

    ``stages`` holds, in order: the optimum value; the optimum joined with
    the greedy decisions of the observed prefix T; the same via the
    telescoping sum; the sum after relaxing each term to in-neighborhood
    context; the regrouped sum over residue chains; the sum with greedy
    decisions substituted; the merged chain values; and r times the greedy
    value.  Consecutive stages must be related by = <= = <= = <= as listed.
    """
    stages: tuple[Fraction, ...]
    holds: bool
    r: int
    optimum: Fraction
    greedy_value: Fraction


STAGE_NAMES = (
    "optimum",
    "optimum_join_prefix",
    "telescoped",
    "context_relaxed",
    "regrouped",
    "greedy_substituted",
    "chains_merged",
    "r_times_greedy",
)


def chain_bound_check(f: SetFunction, agents: AgentSpace, n: int, q: int, *,
                      node_cap: int = 1_000_000,
                      profile_cap: int = 10_000_000) -> ChainCheck:
    """Evaluate the full inequality chain on the remainder-one optimal graph.

    Requires n = 1 (mod q).  Runs worst-policy greedy and the brute-force
    optimum on optimal_graph(n, q), then computes each stage of the
    telescoping argument and verifies every equality exactly and every
    inequality in order.  The endpoint is optimum <= r * greedy_value.
    """
    _check_n_q(n, q)
    if not remainder_one(n, q):
        raise InputError(f"n={n}, q={q}: chain check requires n = 1 (mod q)")
    if agents.n != n:
        raise InputError(f"agents: expected {n} agents, got {agents.n}")
    graph = optimal_graph(n, q)
    r = _ceil_div(n, q)
    sol = run_greedy(f, agents, graph, "worst", node_cap=node_cap)
    opt_profile, opt_value = brute_force_optimum(f, agents, profile_cap=profile_cap)

    def mask_of(profile, agent_ids) -> int:
        m = 0
        for a in agent_ids:
            d = profile[a - 1]
            if d is not None:
                m |= f.subset_mask((d,))
        return m

    prefix = range(1, (q - 1) * (r - 1) + 1)
    sol_prefix = mask_of(sol.profile, prefix)
    all_agents = range(1, n + 1)
    opt_all = mask_of(opt_profile, all_agents)
    sol_all = mask_of(sol.profile, all_agents)

    s0 = opt_value
    s1 = f.mask_value(opt_all | sol_prefix)

    # telescoping: f(sol_prefix) + sum_i f(opt_i | opt_{1:i-1} u sol_prefix)
    s2 = f.mask_value(sol_prefix)
    acc = sol_prefix
    for i in all_agents:
        d = opt_profile[i - 1]
        if d is None:
            continue
        m = f.subset_mask((d,))
        s2 += f.mask_value(acc | m) - f.mask_value(acc)
        acc |= m

    def relaxed_term(i: int, profile) -> Fraction:
        d = profile[i - 1]
        if d is None:
            return ZERO
        ctx = mask_of(sol.profile, graph.in_neighbors(i))
        m = f.subset_mask((d,))
        return f.mask_value(ctx | m) - f.mask_value(ctx)

    s3 = f.mask_value(sol_prefix) + sum((relaxed_term(i, opt_profile) for i in all_agents), ZERO)

    # regrouping by residue chains C_j = {j, j+(r-1), ..., j+(r-1)(q-1)}
    chains = [tuple(j + k * (r - 1) for k in range(q)) for j in range(1, r)]
    chain_agents = [a for c in chains for a in c]
    s4 = (f.mask_value(sol_prefix)
          + sum((relaxed_term(i, opt_profile) for i in chain_agents), ZERO)
          + relaxed_term(n, opt_profile))
    s5 = (f.mask_value(sol_prefix)
          + sum((relaxed_term(i, sol.profile) for i in chain_agents), ZERO)
          + relaxed_term(n, sol.profile))

    # merged: each chain telescopes to f(sol on the chain); the prefix term
    # absorbs agent n's marginal into f(sol on T u {n})
    s6 = sum((f.mask_value(mask_of(sol.profile, c)) for c in chains), ZERO)
    s6 += f.mask_value(mask_of(sol.profile, tuple(prefix) + (n,)))

    s7 = r * sol.value

    stages = (s0, s1, s2, s3, s4, s5, s6, s7)
    holds = (s0 <= s1 and s1 == s2 and s2 <= s3 and s3 == s4
             and s4 <= s5 and s5 == s6 and s6 <= s7)
    return ChainCheck(stages, holds, r, opt_value, sol.value)


@dataclass(frozen=True)
class SuiteEntry:
    """One certification row: an instance, the graph it runs on, and an
    optional predicted ratio when the instance is a constructed witness."""
    instance_id: str
    graph_id: str
    objective: SetFunction
    agents: AgentSpace
    graph: InformationGraph
    predicted_ratio: Optional[Fraction] = None
    source: str = ""


@dataclass(frozen=True)
class CertifyRow:
    instance_id: str
    graph_id: str
    empirical: Optional[Fraction]
    lower: Optional[Fraction]
    upper: Optional[Fraction]
    refined_upper: Optional[Fraction]
    curvature: Optional[Fraction]
    predicted: Optional[Fraction]
    verdict: str            # "pass", "FAIL" or "capacity-error"
    note: str = ""


@dataclass(frozen=True)
class BoundsReport:
    rows: tuple[CertifyRow, ...]

    @property
    def failures(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "FAIL")

    @property
    def capacity_errors(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "capacity-error")

    @property
    def equalities(self) -> int:
        return sum(1 for r in self.rows
                   if r.predicted is not None and r.empirical == r.predicted)

    def to_lines(self) -> list[str]:
        def fmt(x) -> str:
            return "-" if x is None else str(x)

        lines = []
        for r in self.rows:
            parts = [
                f"row instance={r.instance_id}", f"graph={r.graph_id}",
                f"empirical={fmt(r.empirical)}", f"lower={fmt(r.lower)}",
                f"upper={fmt(r.upper)}",
            ]
            if r.refined_upper is not None:
                parts.append(f"refined_upper={r.refined_upper}")
            if r.curvature is not None:
                parts.append(f"curvature={r.curvature}")
            if r.predicted is not None:
                parts.append(f"predicted={r.predicted}")
            parts.append(f"verdict={r.verdict}")
            if r.note:
                parts.append(f"note={r.note}")
            lines.append(" ".join(parts))
        lines.append(f"rows={len(self.rows)} failures={self.failures} "
                     f"capacity_errors={self.capacity_errors} equalities={self.equalities}")
        return lines

    def to_json_obj(self) -> dict:
        def fmt(x):
            return None if x is None else str(x)

        return {
            "rows": [{
                "instance": r.instance_id, "graph": r.graph_id,
                "empirical": fmt(r.empirical), "lower": fmt(r.lower),
                "upper": fmt(r.upper), "refined_upper": fmt(r.refined_upper),
                "curvature": fmt(r.curvature), "predicted": fmt(r.predicted),
                "verdict": r.verdict, "note": r.note,
            } for r in self.rows],
            "failures": self.failures,
            "capacity_errors": self.capacity_errors,
            "equalities": self.equalities,
        }


def certify(entries: Iterable[SuiteEntry], *,
            curvature_cap: int = DEFAULT_CURVATURE_CAP,
            graph_cap: int = DEFAULT_GRAPH_CAP) -> BoundsReport:
    """Check every entry's empirical ratio against its guaranteed lower
    bound, and witnesses against their predicted ratios.

    The lower bound uses the curvature form when the ground set is within
    ``curvature_cap`` (the measured total curvature can only tighten the
    plain 1/(theta+1) bound), and the plain form otherwise.  Capacity errors
    are recorded per row without aborting the suite.
    """
    rows = []
    for entry in entries:
        try:
            gb = graph_ratio_bounds(entry.graph, cap=graph_cap)
            lam: Optional[Fraction] = None
            lower = gb.lower
            if len(entry.objective.ground) <= curvature_cap:
                lam = total_curvature(entry.objective, cap=curvature_cap)
                lower = curvature_graph_bounds(entry.graph, lam, cap=graph_cap).lower
            emp = empirical_ratio(entry.objective, entry.agents, entry.graph)
            ok = lower <= emp <= 1
            note = ""
            if not ok:
                note = "empirical ratio below guaranteed lower bound"
            if entry.predicted_ratio is not None and emp != entry.predicted_ratio:
                ok = False
                note = "witness missed its predicted ratio"
            rows.append(CertifyRow(
                entry.instance_id, entry.graph_id, emp, lower, gb.upper,
                gb.refined_upper, lam, entry.predicted_ratio,
                "pass" if ok else "FAIL", note))
        except CapacityError as exc:
            rows.append(CertifyRow(
                entry.instance_id, entry.graph_id, None, None, None, None,
                None, entry.predicted_ratio, "capacity-error", str(exc)))
    return BoundsReport(tuple(rows))
