"""Exact desk-scale oracles: edge colorability, chromatic index, maximum
Δ-edge-colorable subgraphs and the two deletion numbers r_e and r'_e.

All of them run on one branch-and-bound engine over vertex *pairs*: parallel
edges are interchangeable, so a pair of multiplicity ``k`` receives an
increasing sequence of colors followed by uncolored leftovers.  Global color
symmetry is broken by only ever opening the smallest unused color.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Optional

from .coloring import Improvement, PartialColoring, cycles_of_edge, flip_chain, kempe_chain
from .multigraph import Multigraph

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 2_000_000
RPRIME_MAX_CHI = 8
RPRIME_MAX_EDGES = 24


class BudgetExceeded(RuntimeError):
    def __init__(self, node_limit: int, what: str = "search", unit: str = "nodes"):
        super().__init__(f"{what} exceeded its budget of {node_limit} {unit}")
        self.node_limit = node_limit


class OracleOutOfRange(ValueError):
    pass


# -- search engine --------------------------------------------------------


class _Search:
    """Minimize the number of *costly* edge decisions.

    An edge is costly when it is left uncolored (only if ``allow_skip``) or
    receives a color above ``cheap``.  Finds a coloring with cost ``< upper``
    of minimum cost, stopping early once cost ``<= stop_at`` is reached.
    """

    def __init__(self, g: Multigraph, t: int, cheap: int, allow_skip: bool, node_limit: int):
        self.g = g
        self.t = t
        self.cheap = cheap
        self.allow_skip = allow_skip
        self.node_limit = node_limit
        self.nodes = 0
        pairs = sorted(g.pairs().items(), key=lambda kv: kv[1][0])
        self.pair_ends = [p for p, _ in pairs]
        self.pair_edges = [ids for _, ids in pairs]
        self.mult = [len(ids) for ids in self.pair_edges]
        self.full = ((1 << (t + 1)) - 1) & ~1
        self.cheap_mask = ((1 << (cheap + 1)) - 1) & ~1
        self.costly_mask = self.full & ~self.cheap_mask

    def root_lower_bound(self) -> int:
        """Odd-set bound: inside an odd set S each cheap color covers at most
        ``(|S|-1)/2`` edges."""
        g = self.g
        best = 0
        for v in range(g.n):
            best = max(best, g.degree(v) - self.cheap)
        if g.n <= 12:
            for size in range(3, g.n + 1, 2):
                for s in itertools.combinations(range(g.n), size):
                    inside = len(g.edges_inside(s))
                    best = max(best, inside - self.cheap * (size - 1) // 2)
        return max(best, 0)

    def run(self, upper: int, stop_at: int = 0) -> Optional[tuple[int, list[list[int]]]]:
        npairs = len(self.pair_ends)
        self.used = [0] * self.g.n
        self.und = self.g.degrees()
        self.last = [0] * npairs
        self.dec = [0] * npairs
        self.assigned: list[list[int]] = [[] for _ in range(npairs)]
        self.count = [0] * (self.t + 1)
        self.best: Optional[tuple[int, list[list[int]]]] = None
        self.upper = upper
        self.stop_at = stop_at
        self._done = False
        self._dfs(0)
        return self.best

    def _lower_bound(self) -> int:
        cheap_mask = self.cheap_mask
        total = 0
        for v in range(self.g.n):
            excess = self.und[v] - (cheap_mask & ~self.used[v]).bit_count()
            if excess > 0:
                total += excess
        return (total + 1) // 2

    def _dfs(self, cost: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise BudgetExceeded(self.node_limit)
        if cost + self._lower_bound() >= self.upper:
            return
        used, last, dec, mult = self.used, self.last, self.dec, self.mult
        full, cheap_mask = self.full, self.cheap_mask
        best_p = -1
        best_n = 1 << 30
        best_avail = 0
        forced = 0
        for p, (u, v) in enumerate(self.pair_ends):
            rem = mult[p] - dec[p]
            if not rem:
                continue
            avail = full & ~(used[u] | used[v]) & ~((2 << last[p]) - 1)
            navail = avail.bit_count()
            short = rem - (avail & cheap_mask).bit_count()
            if short > 0:
                forced += short
            if navail < best_n:
                best_n, best_p, best_avail = navail, p, avail
        if best_p < 0:
            self.best = (cost, [list(a) for a in self.assigned])
            self.upper = cost
            if cost <= self.stop_at:
                self._done = True
            return
        if cost + forced >= self.upper:
            return
        p = best_p
        u, v = self.pair_ends[p]
        seen_fresh_cheap = seen_fresh_costly = False
        avail = best_avail
        while avail:
            low = avail & -avail
            avail ^= low
            c = low.bit_length() - 1
            costly = c > self.cheap
            if self.count[c] == 0:
                if costly:
                    if seen_fresh_costly:
                        continue
                    seen_fresh_costly = True
                else:
                    if seen_fresh_cheap:
                        continue
                    seen_fresh_cheap = True
            new_cost = cost + costly
            if new_cost >= self.upper:
                continue
            prev_last = last[p]
            used[u] |= low
            used[v] |= low
            self.und[u] -= 1
            self.und[v] -= 1
            last[p] = c
            dec[p] += 1
            self.count[c] += 1
            self.assigned[p].append(c)
            self._dfs(new_cost)
            self.assigned[p].pop()
            self.count[c] -= 1
            dec[p] -= 1
            last[p] = prev_last
            self.und[u] += 1
            self.und[v] += 1
            used[u] ^= low
            used[v] ^= low
            if self._done:
                return
        if self.allow_skip:
            rem = mult[p] - dec[p]
            if cost + rem < self.upper:
                dec[p] += rem
                self.und[u] -= rem
                self.und[v] -= rem
                self._dfs(cost + rem)
                self.und[u] += rem
                self.und[v] += rem
                dec[p] -= rem

    def to_colors(self, assigned: list[list[int]]) -> list[Optional[int]]:
        colors: list[Optional[int]] = [None] * self.g.m
        for ids, cols in zip(self.pair_edges, assigned):
            for e, c in zip(ids, cols):
                colors[e] = c
        return colors


# -- colorability and chromatic index -------------------------------------


@dataclass(frozen=True)
class ColorabilityResult:
    colorable: bool
    coloring: Optional[PartialColoring]
    nodes: int

    def __bool__(self) -> bool:
        return self.colorable


def is_t_edge_colorable(
    g: Multigraph, t: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> ColorabilityResult:
    if t < 1:
        raise ValueError("t must be at least 1")
    if g.m == 0:
        return ColorabilityResult(True, PartialColoring.empty(g, t), 0)
    if g.max_degree > t:
        return ColorabilityResult(False, None, 0)
    search = _Search(g, t, cheap=t, allow_skip=False, node_limit=node_budget)
    if search.root_lower_bound() > 0:
        return ColorabilityResult(False, None, 0)
    found = search.run(upper=1)
    if found is None:
        return ColorabilityResult(False, None, search.nodes)
    return ColorabilityResult(True, PartialColoring(g, t, search.to_colors(found[1])), search.nodes)


def overfull_witness(g: Multigraph, t: int) -> Optional[tuple[int, ...]]:
    """An odd vertex set with more than ``t(|S|-1)/2`` inner edges, if one exists."""
    if g.n > 12:
        return None
    for size in range(3, g.n + 1, 2):
        for s in itertools.combinations(range(g.n), size):
            if len(g.edges_inside(s)) > t * (size - 1) // 2:
                return s
    return None


@dataclass(frozen=True)
class ChromaticCertificate:
    chi: int
    delta: int
    witness: PartialColoring
    lower_bound_proof: dict[str, Any]

    @property
    def graph_class(self) -> int:
        return 1 if self.chi == self.delta else 2

    @property
    def k(self) -> int:
        return self.chi - self.delta


def shannon_bound(g: Multigraph) -> int:
    return 3 * g.max_degree // 2


def vizing_bound(g: Multigraph) -> int:
    return g.max_degree + g.max_multiplicity


def chromatic_index(g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET) -> ChromaticCertificate:
    if g.m == 0:
        raise ValueError("chromatic index needs at least one edge")
    delta = g.max_degree
    t = delta
    proof: dict[str, Any] = {"kind": "degree", "vertex": g.degrees().index(delta)}
    # skip palettes an overfull odd set already refutes
    while True:
        s = overfull_witness(g, t)
        if s is None:
            break
        proof = {"kind": "overfull", "set": list(s), "colors": t}
        t += 1
    while True:
        res = is_t_edge_colorable(g, t, node_budget)
        if res:
            assert res.coloring is not None
            return ChromaticCertificate(t, delta, res.coloring, proof)
        proof = {"kind": "search", "colors": t, "nodes": res.nodes}
        t += 1
        if t > min(shannon_bound(g), vizing_bound(g)) + 1:
            raise AssertionError("chromatic index search passed both classical upper bounds")


# -- maximum Δ-edge-colorable subgraph -------------------------------------


@dataclass(frozen=True)
class MaxSubgraphCertificate:
    coloring: PartialColoring
    optimal: bool
    nodes: int = 0

    @property
    def size(self) -> int:
        return self.coloring.size

    @property
    def graph(self) -> Multigraph:
        return self.coloring.graph

    @property
    def r_e(self) -> int:
        return self.graph.m - self.size

    @property
    def uncolored(self) -> list[int]:
        return self.coloring.uncolored_edges()

    def subgraph(self) -> Multigraph:
        return self.coloring.colored_subgraph()


def _try_color(c: PartialColoring, e: int) -> Optional[PartialColoring]:
    """Color ``e`` directly or after one Kempe flip."""
    u, v = c.graph.edges[e]
    miss_u, miss_v = c.missing_colors(u), c.missing_colors(v)
    common = miss_u & miss_v
    if common:
        return c.recolor({e: min(common)})
    for alpha in sorted(miss_u):
        for beta in sorted(miss_v):
            chain = kempe_chain(c, v, alpha, beta)
            if u not in chain.vertices:
                return flip_chain(c, chain).recolor({e: alpha})
            chain = kempe_chain(c, u, beta, alpha)
            if v not in chain.vertices:
                return flip_chain(c, chain).recolor({e: beta})
    return None


def greedy_kempe(g: Multigraph, t: Optional[int] = None) -> PartialColoring:
    """Greedy coloring in edge-id order with Kempe-chain repairs, then repeated
    repair passes until no uncolored edge can be fitted in."""
    t = g.max_degree if t is None else t
    c = PartialColoring.empty(g, t)
    for e in range(g.m):
        c = _try_color(c, e) or c
    improved = True
    while improved:
        improved = False
        for e in c.uncolored_edges():
            for res in cycles_of_edge(c, e):
                if isinstance(res, Improvement):
                    c = res.apply(c)
                    improved = True
                    break
    return c


def max_delta_subgraph(
    g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET, t: Optional[int] = None
) -> MaxSubgraphCertificate:
    """Largest ``t``-edge-colorable subgraph (``t`` defaults to Δ(G)), with an
    optimality proof from exhaustive branch and bound."""
    if g.m == 0:
        raise ValueError("max_delta_subgraph needs at least one edge")
    t = g.max_degree if t is None else t
    heuristic = greedy_kempe(g, t)
    search = _Search(g, t, cheap=t, allow_skip=True, node_limit=node_budget)
    floor = search.root_lower_bound()
    incumbent = g.m - heuristic.size
    if incumbent <= floor:
        return MaxSubgraphCertificate(heuristic, optimal=True)
    found = search.run(upper=incumbent, stop_at=floor)
    if found is None:
        return MaxSubgraphCertificate(heuristic, optimal=True, nodes=search.nodes)
    coloring = PartialColoring(g, t, search.to_colors(found[1]))
    return MaxSubgraphCertificate(coloring, optimal=True, nodes=search.nodes)


def r_e(g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    return max_delta_subgraph(g, node_budget).r_e


def r_prime(
    g: Multigraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    chi: Optional[ChromaticCertificate] = None,
    lower: int = 0,
) -> int:
    """Least total size of the ``k = χ'-Δ`` smallest classes over all χ'-colorings."""
    chi = chi or chromatic_index(g, node_budget)
    if chi.k == 0:
        return 0
    if chi.chi > RPRIME_MAX_CHI or g.m > RPRIME_MAX_EDGES:
        raise OracleOutOfRange(f"r' oracle limited to chi <= {RPRIME_MAX_CHI}, m <= {RPRIME_MAX_EDGES}")
    search = _Search(g, chi.chi, cheap=chi.delta, allow_skip=False, node_limit=node_budget)
    found = search.run(upper=g.m + 1, stop_at=max(lower, search.root_lower_bound()))
    assert found is not None, "a chi-coloring exists by construction"
    return found[0]


@dataclass(frozen=True)
class Report:
    chi: int
    delta: int
    graph_class: int
    max_subgraph_size: int
    r_e: int
    r_prime: Optional[int]
    optimal: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "chi": self.chi,
            "delta": self.delta,
            "class": self.graph_class,
            "max_subgraph_size": self.max_subgraph_size,
            "r_e": self.r_e,
            "r_prime": self.r_prime,
            "optimal": self.optimal,
        }


def oracle_report(g: Multigraph, node_budget: int = DEFAULT_NODE_BUDGET) -> Report:
    chi = chromatic_index(g, node_budget)
    cert = max_delta_subgraph(g, node_budget)
    try:
        rp: Optional[int] = r_prime(g, node_budget, chi, lower=cert.r_e)
    except OracleOutOfRange:
        rp = None
    return Report(chi.chi, chi.delta, chi.graph_class, cert.size, cert.r_e, rp, cert.optimal)
