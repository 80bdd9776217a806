"""Constructive recoloring procedures on maximum Δ-edge-colorable subgraphs and
checkers for the structural bounds they satisfy.

Every procedure takes an optimal :class:`MaxSubgraphCertificate` and returns a
new one of the same size; properness and size are re-checked after each
atomic recoloring step.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Optional, Sequence

from .coloring import (
    Improvement,
    PartialColoring,
    UncoloredCycle,
    flip_chain,
    kempe_chain,
    shift_cycle,
    uncolored_cycle,
)
from .exact import (
    DEFAULT_NODE_BUDGET,
    MaxSubgraphCertificate,
    OracleOutOfRange,
    _Search,
    chromatic_index,
    r_prime,
)
from .multigraph import INFINITE, GraphError, Multigraph

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


class StructureError(Exception):
    pass


class NotMaximum(StructureError):
    """The supplied colored subgraph can be enlarged; ``improved`` is a proper
    partial coloring with one more colored edge."""

    def __init__(self, message: str, improved: Optional[PartialColoring] = None):
        super().__init__(message)
        self.improved = improved


class NotSimple(StructureError):
    pass


class DeltaTooSmall(StructureError):
    pass


class NotVertexDisjoint(StructureError):
    pass


class NotTwoFactor(StructureError):
    pass


class IterationLimit(StructureError):
    pass


class TooLargeForExhaustive(StructureError):
    pass


class ProofStepFailed(StructureError):
    """A recoloring step did not produce what the argument guarantees."""


@dataclass
class VerificationReport:
    theorem: str
    instance: str
    outcome: str
    witness: Optional[dict[str, Any]] = None
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome != FAIL

    def to_json(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "outcome": self.outcome,
            "witness": self.witness,
        }


def _require_cycle(c: PartialColoring, e: int, alpha: int, beta: int) -> UncoloredCycle:
    res = uncolored_cycle(c, None, e, alpha, beta)
    if isinstance(res, Improvement):
        raise NotMaximum(f"edge {e} can be colored after one Kempe flip", res.apply(c))
    return res


def _checked(old: PartialColoring, new: PartialColoring, step: str) -> PartialColoring:
    if not new.is_proper():
        raise ProofStepFailed(f"{step}: coloring became improper")
    if new.size != old.size:
        raise ProofStepFailed(f"{step}: colored-edge count changed from {old.size} to {new.size}")
    return new


# -- disjoint cycle assignment --------------------------------------------


@dataclass(frozen=True)
class CycleAssignment:
    entries: tuple[tuple[int, int, int, UncoloredCycle], ...]

    def cycles(self) -> list[UncoloredCycle]:
        return [entry[3] for entry in self.entries]

    def first_overlap(self) -> Optional[tuple[int, int, frozenset[int]]]:
        seen: dict[int, int] = {}
        for e, _, _, uc in self.entries:
            for f in uc.cycle:
                if f in seen:
                    return seen[f], e, frozenset({f})
                seen[f] = e
        return None

    def is_edge_disjoint(self) -> bool:
        return self.first_overlap() is None

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {"edge": e, "alpha": a, "beta": b, "cycle": list(uc.cycle)}
            for e, a, b, uc in self.entries
        ]


def _assign_colors(
    c: PartialColoring, edges: list[int], degree: dict[int, int]
) -> dict[int, dict[int, int]]:
    """Per uncolored edge, the color chosen at each of its ends."""
    g = c.graph
    if len(edges) <= 1:
        out = {}
        for e in edges:
            u, v = g.edges[e]
            out[e] = {u: min(c.missing_colors(u)), v: min(c.missing_colors(v))}
        return out
    top = max(degree.values())
    for k in edges:
        u, v = g.edges[k]
        # removing e_k keeps the maximum degree iff some top vertex avoids it
        if any(d == top and x not in (u, v) for x, d in degree.items()):
            rest = [e for e in edges if e != k]
            degree[u] -= 1
            degree[v] -= 1
            chosen = _assign_colors(c, rest, degree)
            degree[u] += 1
            degree[v] += 1
            pick = {}
            for x in (u, v):
                taken = {chosen[e][x] for e in rest if x in chosen[e]}
                free = sorted(c.missing_colors(x) - taken)
                if not free:
                    raise ProofStepFailed(f"no free missing color at vertex {x} for edge {k}")
                pick[x] = free[0]
            chosen[k] = pick
            return chosen
    # every uncolored edge meets every vertex of maximum degree
    hubs = [x for x, d in sorted(degree.items()) if d == top and all(x in g.edges[e] for e in edges)]
    if not hubs:
        raise ProofStepFailed("no maximum-degree vertex meets all uncolored edges")
    hub = hubs[0]
    hub_colors = sorted(c.missing_colors(hub))
    groups: dict[int, list[int]] = {}
    for e in sorted(edges):
        groups.setdefault(g.other_end(e, hub), []).append(e)
    out = {}
    i = 0
    for nb, group in groups.items():
        nb_colors = sorted(c.missing_colors(nb))
        for j, e in enumerate(group):
            out[e] = {hub: hub_colors[i], nb: nb_colors[j]}
            i += 1
    return out


def assign_disjoint_cycles(g: Multigraph, cert: MaxSubgraphCertificate) -> CycleAssignment:
    """One odd cycle per uncolored edge, pairwise edge-disjoint.

    Follows the induction on the number of uncolored edges: drop an uncolored
    edge whose removal keeps the maximum degree and pick its colors away from
    those of its uncolored neighbours, or, when no such edge exists, all
    uncolored edges share a vertex and receive distinct missing colors there.
    """
    c = cert.coloring
    if c.graph != g:
        raise GraphError("certificate belongs to a different graph")
    edges = c.uncolored_edges()
    degree = {v: g.degree(v) for v in range(g.n)}
    chosen = _assign_colors(c, edges, degree)
    entries = []
    for e in edges:
        u, v = g.edges[e]
        uc = _require_cycle(c, e, chosen[e][u], chosen[e][v])
        entries.append((e, uc.alpha, uc.beta, uc))
    result = CycleAssignment(tuple(entries))
    overlap = result.first_overlap()
    if overlap is not None:
        raise ProofStepFailed(f"cycles of edges {overlap[0]} and {overlap[1]} share an edge")
    return result


def check_cycle_intersection_lemma(
    g: Multigraph, cert: MaxSubgraphCertificate, instance: str = ""
) -> VerificationReport:
    """Intersecting cycles of two uncolored edges force a common end missing a shared color."""
    c = cert.coloring
    edges = c.uncolored_edges()
    name = "cycle_intersection"
    if len(edges) < 2:
        return VerificationReport(name, instance, VACUOUS)
    cycles: dict[int, list[UncoloredCycle]] = {}
    for e in edges:
        u, v = g.edges[e]
        cycles[e] = [
            _require_cycle(c, e, a, b)
            for a in sorted(c.missing_colors(u))
            for b in sorted(c.missing_colors(v))
        ]
    intersecting = 0
    for e, f in combinations(edges, 2):
        shared_ends = set(g.edges[e]) & set(g.edges[f])
        for ce in cycles[e]:
            ce_edges = set(ce.cycle)
            for cf in cycles[f]:
                if ce_edges.isdisjoint(cf.cycle):
                    continue
                intersecting += 1
                common = ce.colors & cf.colors
                ok = any(col in c.missing_colors(x) for x in shared_ends for col in common)
                if not ok:
                    return VerificationReport(
                        name,
                        instance,
                        FAIL,
                        {
                            "edges": [e, f],
                            "colors": [sorted(ce.colors), sorted(cf.colors)],
                            "shared": sorted(ce_edges & set(cf.cycle)),
                            "coloring": list(c.colors),
                        },
                        {"intersecting_pairs": intersecting},
                    )
    return VerificationReport(name, instance, PASS, None, {"intersecting_pairs": intersecting})


# -- cycle systems ----------------------------------------------------------


def _cycle_vertices(g: Multigraph, cyc: Sequence[int]) -> list[int]:
    """Vertices of a cycle given by its edges, validating that it is one."""
    if len(cyc) < 2 or len(set(cyc)) != len(cyc):
        raise GraphError(f"not a cycle: {list(cyc)}")
    count: dict[int, int] = {}
    for e in cyc:
        for x in g.edges[e]:
            count[x] = count.get(x, 0) + 1
    if any(k != 2 for k in count.values()):
        raise GraphError(f"not a cycle: {list(cyc)}")
    # connectivity
    adj: dict[int, list[int]] = {}
    for e in cyc:
        a, b = g.edges[e]
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(count):
        raise GraphError(f"not a single cycle: {list(cyc)}")
    return sorted(count)


def _case_one(c: PartialColoring, e: int, on_f: set[int]) -> Optional[PartialColoring]:
    """Shift some cycle of ``e`` so that its least edge outside the cycle system
    becomes uncolored; ``None`` if every cycle of ``e`` lies inside the system."""
    u, v = c.graph.edges[e]
    cu, cv = c.present_colors(u), c.present_colors(v)
    best: Optional[tuple[int, UncoloredCycle]] = None
    for alpha in sorted(cu - cv):
        for beta in sorted(cv - cu):
            uc = _require_cycle(c, e, alpha, beta)
            off = [f for f in uc.cycle if f not in on_f]
            if off and (best is None or min(off) < best[0]):
                best = (min(off), uc)
    if best is None:
        return None
    return _checked(c, shift_cycle(c, best[1], best[0]), "case 1 shift")


def _rotate_along(c: PartialColoring, g: Multigraph, start: int, first: int, path_edges: list[int], a: int, b: int):
    """Colors for ``path_edges`` walked from ``start`` beginning with ``first``,
    alternating ``a``, ``b``."""
    changes = {}
    x = start
    col = a
    remaining = list(path_edges)
    e = first
    while True:
        changes[e] = col
        remaining.remove(e)
        x = g.other_end(e, x)
        col = b if col == a else a
        nxt = [f for f in remaining if x in g.edges[f]]
        if not nxt:
            break
        e = nxt[0]
    if remaining:
        raise ProofStepFailed("cycle path is not connected")
    return changes


def _case_two(
    c: PartialColoring, e: int, on_f: set[int], delta: int, trace: Optional[list[str]] = None
) -> PartialColoring:
    g = c.graph
    u, v = g.edges[e]
    found = [
        _require_cycle(c, e, a, b)
        for a in sorted(c.present_colors(u) - c.present_colors(v))
        for b in sorted(c.present_colors(v) - c.present_colors(u))
    ]
    if not found:
        raise ProofStepFailed(f"edge {e} has no cycle")
    uc = found[0]
    if any(set(other.cycle) != set(uc.cycle) for other in found[1:]):
        raise ProofStepFailed("case 2 expects a unique cycle")
    # rotate the uncolored edge around the cycle and retry case 1 at each stop
    for f in uc.cycle[1:]:
        rotated = _checked(c, shift_cycle(c, uc, f), "rotation inside the cycle")
        step = _case_one(rotated, f, on_f)
        if step is not None:
            if trace is not None:
                trace.append("case2-rotate")
            return step
    # normal form: the cycle uses colors delta-1, delta and "1" is a third color
    others = sorted(set(range(1, delta + 1)) - {uc.alpha, uc.beta})
    perm = {col: i + 1 for i, col in enumerate(others)}
    perm[uc.alpha] = delta - 1
    perm[uc.beta] = delta
    inverse = {new: old for old, new in perm.items()}
    renamed = c.permute_colors(perm)
    top, second = delta, delta - 1
    cycle_edges = list(uc.cycle)
    theta = renamed.recolor({f: None for f in cycle_edges})
    ring = set(uc.vertices)
    for x in ring:
        missing = theta.missing_colors(x)
        if second not in missing or top not in missing or 1 in missing:
            raise ProofStepFailed(f"vertex {x} does not have the case 2 color profile")
    ring_order = list(uc.vertices)
    w = chain = None
    for x in ring_order:
        candidate = kempe_chain(theta, x, 1, top)
        if candidate.vertices[-1] not in ring:
            w, chain = x, candidate
            break
    if chain is None:
        raise ProofStepFailed("every 1-delta path from the cycle returns to it")
    at_w = sorted(f for f in cycle_edges if w in g.edges[f])
    g_edge, h_edge = at_w[0], at_w[1]
    z = g.other_end(g_edge, w)
    step = flip_chain(theta, chain)
    y = theta.edge_with_color(z, 1)
    if y is None or y in chain.edges:
        raise ProofStepFailed(f"vertex {z} lost its color-1 edge")
    changes: dict[int, Optional[int]] = {y: None, g_edge: 1}
    path = [f for f in cycle_edges if f != g_edge]
    changes.update(_rotate_along(step, g, w, h_edge, path, second, top))
    result = step.recolor(changes).permute_colors(inverse)
    if trace is not None:
        trace.append("case2-escape")
    return _checked(c, result, "case 2 escape path")


def extend_cycles(
    g: Multigraph,
    cycles: Iterable[Sequence[int]],
    cert: MaxSubgraphCertificate,
    max_steps: Optional[int] = None,
    trace: Optional[list[str]] = None,
) -> MaxSubgraphCertificate:
    """Recolor ``cert`` until every edge of the vertex-disjoint ``cycles`` is colored.

    ``trace``, if given, collects the kind of each accepted step.
    """
    c = cert.coloring
    if c.graph != g:
        raise GraphError("certificate belongs to a different graph")
    delta = g.max_degree
    if delta < 3:
        raise DeltaTooSmall(f"maximum degree {delta} < 3")
    cycles = [list(cyc) for cyc in cycles]
    seen_vertices: set[int] = set()
    for cyc in cycles:
        verts = _cycle_vertices(g, cyc)
        if seen_vertices.intersection(verts):
            raise NotVertexDisjoint("cycles share a vertex")
        seen_vertices.update(verts)
    on_f = {e for cyc in cycles for e in cyc}
    limit = g.m * g.m if max_steps is None else max_steps
    potential = sum(c[e] is not None for e in on_f)
    for _ in range(limit + 1):
        pending = sorted(e for e in on_f if c[e] is None)
        if not pending:
            return MaxSubgraphCertificate(c, optimal=cert.optimal)
        e = pending[0]
        step = _case_one(c, e, on_f)
        if step is None:
            step = _case_two(c, e, on_f, delta, trace)
        elif trace is not None:
            trace.append("case1")
        gained = sum(step[f] is not None for f in on_f)
        if gained <= potential:
            raise ProofStepFailed("recoloring did not color more cycle edges")
        c, potential = step, gained
    raise IterationLimit(f"cycle extension did not finish within {limit} steps")


def two_factor_cycles(g: Multigraph, factor: Iterable[int]) -> list[list[int]]:
    """Split a 2-factor (given by edge ids) into its cycles."""
    factor = sorted(set(factor))
    deg = [0] * g.n
    for e in factor:
        for x in g.edges[e]:
            deg[x] += 1
    if any(d != 2 for d in deg):
        raise NotTwoFactor("every vertex must have degree exactly 2 in the factor")
    remaining = set(factor)
    out = []
    while remaining:
        first = min(remaining)
        cyc = [first]
        remaining.discard(first)
        start, x = g.edges[first]
        while x != start:
            nxt = min(f for f in remaining if x in g.edges[f])
            remaining.discard(nxt)
            cyc.append(nxt)
            x = g.other_end(nxt, x)
        out.append(cyc)
    return out


def extend_two_factor(
    g: Multigraph, two_factor: Iterable[int], cert: MaxSubgraphCertificate, trace: Optional[list[str]] = None
) -> MaxSubgraphCertificate:
    return extend_cycles(g, two_factor_cycles(g, two_factor), cert, trace=trace)


def random_cycle_system(g: Multigraph, rng: random.Random, max_cycles: int = 3) -> list[list[int]]:
    """Up to ``max_cycles`` random vertex-disjoint cycles (digons included)."""
    import networkx as nx

    simple = nx.Graph(list(g.pairs()))
    candidates = [c for c in nx.simple_cycles(simple) if len(c) >= 3]
    candidates += [[u, v] for (u, v), ids in g.pairs().items() if len(ids) >= 2]
    candidates.sort()
    rng.shuffle(candidates)
    chosen: list[list[int]] = []
    used: set[int] = set()
    for verts in candidates:
        if len(chosen) == max_cycles:
            break
        if used.intersection(verts):
            continue
        if len(verts) == 2:
            edges = rng.sample(list(g.parallel_edges(*verts)), 2)
        else:
            edges = [
                rng.choice(g.parallel_edges(verts[i], verts[(i + 1) % len(verts)]))
                for i in range(len(verts))
            ]
        used.update(verts)
        chosen.append(edges)
    return chosen


def two_factors(g: Multigraph) -> list[list[int]]:
    """All 2-factors of ``g`` as sorted edge-id lists (exhaustive, small graphs)."""
    out: list[list[int]] = []
    deg = [0] * g.n

    def rec(i: int, chosen: list[int]) -> None:
        if i == g.m:
            if all(d == 2 for d in deg):
                out.append(list(chosen))
            return
        u, v = g.edges[i]
        # prune: vertices whose edges are all decided must already be complete
        if deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            chosen.append(i)
            rec(i + 1, chosen)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
        for x in (u, v):
            if g.incidence[x][-1] == i and deg[x] != 2:
                return
        rec(i + 1, chosen)

    rec(0, [])
    return out


# -- matching normalization -------------------------------------------------


@dataclass(frozen=True)
class FanSequence:
    center: int
    sequence: tuple[tuple[int, int, int], ...]  # (v_i, alpha_i, edge (u, v_i))

    @property
    def vertices(self) -> list[int]:
        return [x for x, _, _ in self.sequence]

    @property
    def colors(self) -> list[int]:
        return [a for _, a, _ in self.sequence]


def adjacent_uncolored_pairs(c: PartialColoring) -> int:
    return sum(math.comb(c.uncolored_degree(v), 2) for v in range(c.graph.n))


def _rotate_fan(c: PartialColoring, start_edge: int, fan: FanSequence, upto: int) -> PartialColoring:
    """Color ``start_edge`` with alpha_0 and fan edge i with alpha_{i+1} for
    ``i < upto``; fan edge ``upto`` is left uncolored (``upto = -1``: no change)."""
    if upto < 0:
        return c
    changes: dict[int, Optional[int]] = {start_edge: fan.sequence[0][1]}
    for i in range(upto):
        changes[fan.sequence[i][2]] = fan.sequence[i + 1][1]
    changes[fan.sequence[upto][2]] = None
    return c.recolor(changes)


def _fan_edge(fan: FanSequence, start_edge: int, j: int) -> int:
    return start_edge if j < 0 else fan.sequence[j][2]


def _improve(c: PartialColoring, start_edge: int, fan: FanSequence, upto: int, color: int, why: str) -> NotMaximum:
    better = _rotate_fan(c, start_edge, fan, upto).recolor({_fan_edge(fan, start_edge, upto): color})
    if not better.is_proper() or better.size != c.size + 1:
        raise ProofStepFailed(f"{why}: improvement witness is not valid")
    return NotMaximum(why, better)


def build_fan(c: PartialColoring, u: int, v0_edge: int) -> FanSequence:
    """Maximal fan at ``u`` starting with the colored edge ``v0_edge``; ties
    between eligible next edges go to the least edge id."""
    g = c.graph
    seq = [(g.other_end(v0_edge, u), c[v0_edge], v0_edge)]
    used = {c[v0_edge]}
    while True:
        x = seq[-1][0]
        options = []
        for col in c.missing_colors(x) - used:
            f = c.edge_with_color(u, col)
            if f is not None:
                options.append((f, col))
        if not options:
            return FanSequence(u, tuple(seq))
        f, col = min(options)
        seq.append((g.other_end(f, u), col, f))
        used.add(col)


def normalize_to_matching(g: Multigraph, cert: MaxSubgraphCertificate) -> MaxSubgraphCertificate:
    """Recolor a maximum subgraph of a simple graph until its uncolored edges form a matching."""
    if not g.is_simple():
        raise NotSimple("matching normalization needs a simple graph")
    c = cert.coloring
    if c.graph != g:
        raise GraphError("certificate belongs to a different graph")
    pairs = adjacent_uncolored_pairs(c)
    while pairs:
        v = min(x for x in range(g.n) if c.uncolored_degree(x) >= 2)
        start_edge = min(e for e in g.incidence[v] if c[e] is None)
        u = g.other_end(start_edge, v)
        alpha0 = min(c.missing_colors(v))
        beta = min(c.missing_colors(u))
        e0 = c.edge_with_color(u, alpha0)
        if e0 is None:
            raise NotMaximum("uncolored edge has a common missing color", c.recolor({start_edge: alpha0}))
        fan = build_fan(c, u, e0)
        k = len(fan.sequence) - 1
        vk = fan.sequence[k][0]
        for i, (x, _, _) in enumerate(fan.sequence):
            shared = c.missing_colors(x) & c.missing_colors(u)
            if shared:
                raise _improve(c, start_edge, fan, i, min(shared), "fan vertex shares a missing color with the center")
        missing_k = c.missing_colors(vk)
        if not missing_k:
            new = _checked(c, _rotate_fan(c, start_edge, fan, k), "fan rotation")
            new_pairs = adjacent_uncolored_pairs(new)
            if new_pairs >= pairs:
                raise ProofStepFailed("fan rotation did not reduce adjacent uncolored pairs")
            c, pairs = new, new_pairs
            continue
        # the fan closes on an earlier color: H cannot have been maximum
        alpha_next = min(missing_k)
        colors = fan.colors
        if alpha_next not in colors[:-1]:
            raise ProofStepFailed("fan is not maximal")
        i = colors.index(alpha_next)
        if beta in missing_k:
            raise _improve(c, start_edge, fan, k, beta, "beta missing at the last fan vertex")
        path = kempe_chain(c, vk, beta, alpha_next)
        vi = fan.sequence[i][0]
        vprev = v if i == 0 else fan.sequence[i - 1][0]
        if vi in path.vertices:
            j = i
        elif path.vertices[-1] == vprev:
            j = i - 1
        else:
            j = k
        rotated = _rotate_fan(c, start_edge, fan, j)
        chain = kempe_chain(rotated, vk, beta, alpha_next)
        better = flip_chain(rotated, chain).recolor({_fan_edge(fan, start_edge, j): beta})
        if not better.is_proper() or better.size != c.size + 1:
            raise ProofStepFailed(f"fan case with j={j} did not yield a larger coloring")
        raise NotMaximum("fan argument found a larger colored subgraph", better)
    return MaxSubgraphCertificate(c, optimal=cert.optimal)


# -- bound checkers ---------------------------------------------------------


def _ceil_half(x: int) -> int:
    return (x + 1) // 2


def check_cut_condition(
    g: Multigraph,
    cert: MaxSubgraphCertificate,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    instance: str = "",
) -> VerificationReport:
    """``|cut_H(X)| >= ceil(|cut_G(X)|/2)`` for the checked sets ``X``, plus the
    per-vertex and minimum-degree consequences."""
    name = "cut"
    c = cert.coloring
    if mode == "exhaustive" and g.n > 16:
        raise TooLargeForExhaustive(f"{g.n} vertices; exhaustive mode stops at 16")
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    colored = [c[e] is not None for e in range(g.m)]
    dh = [0] * g.n
    for e, (u, v) in enumerate(g.edges):
        if colored[e]:
            dh[u] += 1
            dh[v] += 1
    for x in range(g.n):
        if dh[x] < _ceil_half(g.degree(x)):
            return VerificationReport(name, instance, FAIL, {"vertex": x, "d_H": dh[x], "d_G": g.degree(x)})
    if g.n and min(dh) < _ceil_half(g.min_degree):
        return VerificationReport(name, instance, FAIL, {"delta_H": min(dh), "delta_G": g.min_degree})
    if mode == "exhaustive":
        # X and its complement give the same cut
        sets: Iterable[int] = range(1 << max(g.n - 1, 0))
    elif mode == "sampled":
        rng = random.Random(seed)
        sets = [rng.getrandbits(g.n) for _ in range(samples)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    checked = 0
    for x in sets:
        cut_g = cut_h = 0
        for e, mask in enumerate(masks):
            inside = x & mask
            if inside and inside != mask:
                cut_g += 1
                cut_h += colored[e]
        checked += 1
        if cut_h < _ceil_half(cut_g):
            side = [v for v in range(g.n) if x >> v & 1]
            return VerificationReport(name, instance, FAIL, {"X": side, "cut_H": cut_h, "cut_G": cut_g})
    return VerificationReport(name, instance, PASS, None, {"sets": checked, "min_degree_H": min(dh, default=0)})


def girth_parameter(g: Multigraph) -> Optional[int]:
    gi = g.girth()
    return None if gi == INFINITE else int(gi) // 2


def check_ratio_bound(g: Multigraph, cert: MaxSubgraphCertificate, instance: str = "") -> VerificationReport:
    name = "ratio"
    k = girth_parameter(g)
    if k is None:
        return VerificationReport(name, instance, VACUOUS, None, {"girth": None})
    bound = math.ceil(Fraction(2 * k, 2 * k + 1) * g.m)
    data = {"k": k, "size": cert.size, "m": g.m, "bound": bound, "tight": cert.size == bound}
    if cert.size < bound:
        return VerificationReport(name, instance, FAIL, dict(data), data)
    return VerificationReport(name, instance, PASS, None, data)


def check_class_one(
    g: Multigraph, cert: MaxSubgraphCertificate, instance: str = "", node_budget: int = DEFAULT_NODE_BUDGET
) -> VerificationReport:
    name = "class1"
    if not g.is_simple():
        raise NotSimple("class I property is only claimed for simple graphs")
    h = cert.subgraph()
    delta_h = h.max_degree
    chi_h = chromatic_index(h, node_budget).chi if h.m else 0
    data = {"delta_G": g.max_degree, "delta_H": delta_h, "chi_H": chi_h}
    if delta_h != g.max_degree or chi_h != delta_h:
        return VerificationReport(name, instance, FAIL, dict(data), data)
    return VerificationReport(name, instance, PASS, None, data)


def subgraph_class(cert: MaxSubgraphCertificate, node_budget: int = DEFAULT_NODE_BUDGET) -> dict[str, int]:
    """Δ(H) and χ'(H) for any graph; used to exhibit class II maximum subgraphs of multigraphs."""
    h = cert.subgraph()
    return {"delta_H": h.max_degree, "chi_H": chromatic_index(h, node_budget).chi if h.m else 0}


def check_corollary_bounds(
    g: Multigraph,
    cert: MaxSubgraphCertificate,
    instance: str = "",
    chi_g: Optional[int] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> VerificationReport:
    """Lower bounds on Δ(H) and χ'(H) in terms of girth, multiplicity and Δ(G), χ'(G)."""
    name = "corollary"
    k = girth_parameter(g)
    if k is None:
        return VerificationReport(name, instance, VACUOUS)
    mu = g.max_multiplicity
    h = cert.subgraph()
    delta_h = h.max_degree
    chi_h = chromatic_index(h, node_budget).chi if h.m else 0
    chi_g = chromatic_index(g, node_budget).chi if chi_g is None else chi_g
    ratio = Fraction(2 * k, 2 * k + 1)
    offset = Fraction(2 * k - 2, 2 * k + 1)
    mu_term = -(-mu // k)

    def bound(x: int) -> Fraction:
        return max(Fraction(x - mu_term), ratio * x - offset)

    data = {
        "k": k,
        "mu": mu,
        "delta_H": delta_h,
        "chi_H": chi_h,
        "delta_bound": str(bound(g.max_degree)),
        "chi_bound": str(bound(chi_g)),
    }
    if delta_h < bound(g.max_degree) or chi_h < bound(chi_g):
        return VerificationReport(name, instance, FAIL, dict(data), data)
    return VerificationReport(name, instance, PASS, None, data)


def check_matching_complement(g: Multigraph, cert: MaxSubgraphCertificate, instance: str = "") -> VerificationReport:
    name = "matching"
    if not g.is_simple():
        raise NotSimple("matching normalization needs a simple graph")
    out = normalize_to_matching(g, cert)
    c = out.coloring
    data = {"size": out.size, "uncolored": c.uncolored_edges()}
    if out.size != cert.size or adjacent_uncolored_pairs(c) or not c.is_proper():
        return VerificationReport(name, instance, FAIL, {"coloring": list(c.colors)}, data)
    return VerificationReport(name, instance, PASS, None, data)


def check_assignment(g: Multigraph, cert: MaxSubgraphCertificate, instance: str = "") -> VerificationReport:
    name = "assignment"
    if not cert.uncolored:
        return VerificationReport(name, instance, VACUOUS)
    assignment = assign_disjoint_cycles(g, cert)
    witness = validate_assignment(cert.coloring, assignment)
    if witness is not None:
        return VerificationReport(name, instance, FAIL, witness)
    return VerificationReport(name, instance, PASS, None, {"cycles": len(assignment.entries)})


def check_extension(
    g: Multigraph, cert: MaxSubgraphCertificate, cycles: list[list[int]], instance: str = ""
) -> VerificationReport:
    name = "extension"
    if g.max_degree < 3 or not cycles:
        return VerificationReport(name, instance, VACUOUS)
    trace: list[str] = []
    out = extend_cycles(g, cycles, cert, trace=trace)
    missing = [e for cyc in cycles for e in cyc if out.coloring[e] is None]
    data = {"cycles": cycles, "steps": trace}
    if missing or out.size != cert.size or not out.coloring.is_proper():
        return VerificationReport(name, instance, FAIL, {"cycles": cycles, "uncolored_cycle_edges": missing}, data)
    return VerificationReport(name, instance, PASS, None, data)


def check_re_equals_rprime(
    g: Multigraph, cert: MaxSubgraphCertificate, instance: str = "", node_budget: int = DEFAULT_NODE_BUDGET
) -> VerificationReport:
    """``r_e == r'_e``.  Proven for simple graphs; on multigraphs a failure is
    a finding to report, and callers decide whether it counts."""
    name = "re_rprime"
    try:
        rp = r_prime(g, node_budget, lower=cert.r_e)
    except OracleOutOfRange as exc:
        return VerificationReport(name, instance, VACUOUS, None, {"reason": str(exc)})
    data = {"r_e": cert.r_e, "r_prime": rp, "simple": g.is_simple()}
    if rp != cert.r_e:
        return VerificationReport(name, instance, FAIL, dict(data), data)
    return VerificationReport(name, instance, PASS, None, data)


def validate_assignment(c: PartialColoring, assignment: CycleAssignment) -> Optional[dict[str, Any]]:
    """Independent re-check of a cycle assignment; returns a witness on failure."""
    g = c.graph
    if sorted(e for e, *_ in assignment.entries) != c.uncolored_edges():
        return {"reason": "not one entry per uncolored edge"}
    for e, alpha, beta, uc in assignment.entries:
        u, v = uc.u, uc.v
        if set(g.edges[e]) != {u, v} or uc.cycle[0] != e or len(uc.cycle) % 2 == 0:
            return {"reason": "malformed cycle", "edge": e}
        if alpha not in c.missing_colors(u) or beta not in c.missing_colors(v):
            return {"reason": "colors are not missing at the ends", "edge": e}
        x = v
        want = alpha
        for f in uc.cycle[1:]:
            if c[f] != want or x not in g.edges[f]:
                return {"reason": "cycle does not alternate", "edge": e}
            x = g.other_end(f, x)
            want = beta if want == alpha else alpha
        if x != u:
            return {"reason": "cycle does not close", "edge": e}
    overlap = assignment.first_overlap()
    if overlap is not None:
        return {"reason": "cycles share an edge", "edges": [overlap[0], overlap[1]], "shared": sorted(overlap[2])}
    return None


# -- conjecture exploration -------------------------------------------------


@dataclass(frozen=True)
class ConjectureRecord:
    instance: str
    k: int
    achieved: int
    removed: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.achieved == self.k

    def to_json(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "k": self.k,
            "achieved": self.achieved,
            "equal": self.equal,
            "removed": list(self.removed),
        }


def explore_conjecture(
    g: Multigraph,
    cert: MaxSubgraphCertificate,
    instance: str = "",
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ConjectureRecord:
    """Least ``χ'(G - E(H))`` over maximum Δ-edge-colorable subgraphs ``H``, next
    to ``k = χ'(G) - Δ(G)``.

    For ``j = k, k+1, ...`` a (Δ+j)-coloring whose last ``j`` classes hold at
    most ``r_e`` edges is searched for; its first Δ classes then form a maximum
    subgraph whose complement is ``j``-colorable.  Nothing is asserted.
    """
    chi = chromatic_index(g, node_budget)
    delta = g.max_degree
    k = chi.chi - delta
    r = cert.r_e
    if r == 0:
        return ConjectureRecord(instance, k, 0, ())
    for j in range(max(k, 1), r + 1):
        search = _Search(g, delta + j, cheap=delta, allow_skip=False, node_limit=node_budget)
        found = search.run(upper=r + 1, stop_at=r)
        if found is not None:
            colors = search.to_colors(found[1])
            removed = tuple(e for e, col in enumerate(colors) if col > delta)
            return ConjectureRecord(instance, k, j, removed)
    raise ProofStepFailed("the uncolored edges of the certificate are always r_e-colorable")
