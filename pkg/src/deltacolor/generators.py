"""Deterministic constructors for the extremal families and named examples."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .coloring import PartialColoring
from .exact import DEFAULT_NODE_BUDGET, BudgetExceeded, chromatic_index
from .multigraph import Multigraph

log = logging.getLogger(__name__)

FAMILIES = ("fat-cycle", "hr-chain", "flower", "figure1", "petersen", "random-class2")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        for key, value in self.params.items():
            if key != "seed" and value < 1:
                raise ValueError(f"parameter {key} must be positive")

    def describe(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"family {self.family} {args}".rstrip()

    def build(self) -> Multigraph:
        p = self.params
        if self.family == "fat-cycle":
            return gen_fat_cycle(p["k"])
        if self.family == "hr-chain":
            return gen_hr_chain(p["r"])
        if self.family == "flower":
            return gen_flower(p["k"])
        if self.family == "figure1":
            return gen_figure1()[0]
        if self.family == "petersen":
            return petersen()
        return gen_random_class2(p["seed"], p["n"], p["mu_max"])


def gen_fat_cycle(k: int) -> Multigraph:
    """Cycle of length ``2k+1`` with every edge repeated ``2k`` times."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = 2 * k + 1
    edges = [(i, (i + 1) % n) for i in range(n) for _ in range(2 * k)]
    return Multigraph(n, edges)


def fat_cycle_extremal_subgraph(k: int) -> list[int]:
    """Edge ids of the ``4k^2``-edge subgraph of the fat cycle that keeps all
    ``2k`` copies of the first pair and ``2k-1`` copies of every other pair."""
    if k < 1:
        raise ValueError("k must be at least 1")
    keep = list(range(2 * k))
    for i in range(1, 2 * k + 1):
        keep += [i * 2 * k + j for j in range(2 * k - 1)]
    return keep


def _subdivided_complete_bipartite(r: int) -> tuple[int, list[tuple[int, int]], int]:
    """K_{2r+1,2r+1} with its first edge subdivided; returns (n, edges, subdivision vertex)."""
    side = 2 * r + 1
    edges = [(a, side + b) for a in range(side) for b in range(side)]
    u, v = edges.pop(0)
    mid = 2 * side
    edges += [(u, mid), (mid, v)]
    return 2 * side + 1, edges, mid


def gen_hr_chain(r: int) -> Multigraph:
    """Two copies of ``r`` subdivided ``K_{2r+1,2r+1}`` glued at their subdivision
    vertices, with the two glue vertices joined by an edge."""
    if r < 1:
        raise ValueError("r must be at least 1")
    block_n, block_edges, mid = _subdivided_complete_bipartite(r)
    edges: list[tuple[int, int]] = []
    n = 0
    hubs = []
    for _ in range(2):
        hub = n
        n += 1
        for _ in range(r):
            relabel = {}
            for x in range(block_n):
                if x == mid:
                    relabel[x] = hub
                else:
                    relabel[x] = n
                    n += 1
            edges += [(relabel[a], relabel[b]) for a, b in block_edges]
        hubs.append(hub)
    edges.append((hubs[0], hubs[1]))
    return Multigraph(n, edges)


def gen_flower(k: int) -> Multigraph:
    """``k`` petals sharing a center; each petal is a ``(2k-1)``-fold pair whose
    ends are also joined to the center."""
    if k < 2:
        raise ValueError("k must be at least 2")
    edges: list[tuple[int, int]] = []
    for i in range(k):
        x, y = 1 + 2 * i, 2 + 2 * i
        edges += [(0, x), (0, y)]
        edges += [(x, y)] * (2 * k - 1)
    return Multigraph(2 * k + 1, edges)


def gen_figure1() -> tuple[Multigraph, PartialColoring]:
    """The fat triangle a=0, b=1, c=2 with every pair doubled, colored so that
    ``a`` misses {4}, ``b`` misses {3}, ``c`` misses {1, 2}."""
    g = Multigraph(3, [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)])
    c = PartialColoring(g, 4, [1, 2, 3, None, 4, None])
    return g, c


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, outer + spokes + inner)


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def cycle(n: int) -> Multigraph:
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, [(x, a + y) for x in range(a) for y in range(b)])


def gen_random_class2(
    seed: int,
    n: int,
    mu_max: int,
    max_rejections: int = 1000,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Multigraph:
    """Connected random multigraph certified class II by the exact oracle."""
    if not 2 <= n <= 10 or not 1 <= mu_max <= 3:
        raise ValueError("need 2 <= n <= 10 and 1 <= mu_max <= 3")
    rng = random.Random(seed)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for attempt in range(max_rejections + 1):
        edges = []
        for a, b in pairs:
            if rng.random() < 0.5:
                edges += [(a, b)] * rng.randint(1, mu_max)
        g = Multigraph(n, edges)
        if g.m and g.is_connected() and chromatic_index(g, node_budget).graph_class == 2:
            log.info("random class II instance after %d rejections", attempt)
            return g
    raise BudgetExceeded(max_rejections, "class II rejection sampling", "attempts")
