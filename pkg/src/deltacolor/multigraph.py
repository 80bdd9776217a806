"""Loopless multigraphs with stable integer vertex and edge ids."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INFINITE = math.inf


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    def __init__(self, u: int):
        super().__init__(f"loop at vertex {u}")
        self.vertex = u


class BadVertex(GraphError):
    def __init__(self, v: int, n: int):
        super().__init__(f"vertex {v} out of range [0, {n})")
        self.vertex = v


class ParseError(GraphError):
    pass


@dataclass(frozen=True)
class EdgeCut:
    side: frozenset[int]
    edges: frozenset[int]

    def __len__(self) -> int:
        return len(self.edges)


class Multigraph:
    """Immutable undirected multigraph without loops.

    Vertices are ``0..n-1`` and edges ``0..m-1`` in construction order;
    parallel edges keep distinct ids.
    """

    __slots__ = ("n", "edges", "incidence", "_pairs")

    def __init__(self, n: int, edge_list: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("negative vertex count")
        edges = []
        incidence: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_list:
            u, v = int(u), int(v)
            for x in (u, v):
                if not 0 <= x < n:
                    raise BadVertex(x, n)
            if u == v:
                raise LoopEdge(u)
            eid = len(edges)
            edges.append((u, v))
            incidence[u].append(eid)
            incidence[v].append(eid)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        self.incidence: tuple[tuple[int, ...], ...] = tuple(map(tuple, incidence))
        pairs: dict[tuple[int, int], list[int]] = {}
        for eid, (u, v) in enumerate(edges):
            pairs.setdefault((min(u, v), max(u, v)), []).append(eid)
        self._pairs = {p: tuple(ids) for p, ids in pairs.items()}

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    # -- local queries --------------------------------------------------

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {e}")

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(inc) for inc in self.incidence]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def pairs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Map each adjacent vertex pair ``(u, v)``, ``u < v``, to its parallel edge ids."""
        return dict(self._pairs)

    def parallel_edges(self, u: int, v: int) -> tuple[int, ...]:
        return self._pairs.get((min(u, v), max(u, v)), ())

    def multiplicity(self, u: int, v: int) -> int:
        return len(self.parallel_edges(u, v))

    @property
    def max_multiplicity(self) -> int:
        return max(map(len, self._pairs.values()), default=0)

    def has_parallel_pair(self) -> bool:
        return self.max_multiplicity > 1

    def is_simple(self) -> bool:
        return not self.has_parallel_pair()

    def neighbors(self, v: int) -> list[int]:
        return sorted({self.other_end(e, v) for e in self.incidence[v]})

    # -- derived graphs -------------------------------------------------

    def underlying_simple(self) -> "Multigraph":
        return Multigraph(self.n, sorted(self._pairs))

    def edge_subgraph(self, keep: Iterable[int]) -> "Multigraph":
        """Spanning subgraph on the given edges, renumbered in increasing id order."""
        return Multigraph(self.n, [self.edges[e] for e in sorted(set(keep))])

    def without_edges(self, drop: Iterable[int]) -> "Multigraph":
        dropped = set(drop)
        return self.edge_subgraph(e for e in range(self.m) if e not in dropped)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for e in self.incidence[x]:
                y = self.other_end(e, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.n

    # -- cuts and cycles ------------------------------------------------

    def boundary(self, x: Iterable[int]) -> EdgeCut:
        side = frozenset(x)
        for v in side:
            if not 0 <= v < self.n:
                raise BadVertex(v, self.n)
        cut = frozenset(e for e, (u, v) in enumerate(self.edges) if (u in side) != (v in side))
        return EdgeCut(side, cut)

    def edges_inside(self, x: Iterable[int]) -> list[int]:
        side = set(x)
        return [e for e, (u, v) in enumerate(self.edges) if u in side and v in side]

    def _simple_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self._pairs:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def girth(self) -> float:
        """Shortest cycle length of the underlying simple graph, or ``INFINITE``."""
        adj = self._simple_adjacency()
        best = INFINITE
        for root in range(self.n):
            dist = {root: 0}
            parent = {root: -1}
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        queue.append(y)
                    elif parent[x] != y:
                        # closed walk through root of this length contains a cycle
                        # no longer than it; the minimum over roots is exact
                        best = min(best, dist[x] + dist[y] + 1)
        return best

    def odd_girth(self) -> float:
        """Shortest odd cycle length of the underlying simple graph, or ``INFINITE``."""
        adj = self._simple_adjacency()
        # BFS layering on the bipartite double cover: the shortest odd closed
        # walk through some vertex is always a shortest odd cycle
        best = INFINITE
        for root in range(self.n):
            dist = {(root, 0): 0}
            queue = deque([(root, 0)])
            while queue:
                x, parity = queue.popleft()
                d = dist[(x, parity)]
                if d >= best:
                    break
                for y in adj[x]:
                    state = (y, 1 - parity)
                    if state not in dist:
                        dist[state] = d + 1
                        queue.append(state)
            if (root, 1) in dist:
                best = min(best, dist[(root, 1)])
        return best

    # -- serialization --------------------------------------------------

    def to_text(self, comments: Sequence[str] = ()) -> str:
        lines = [f"c {c}" for c in comments]
        lines.append(f"p {self.n} {self.m}")
        lines.extend(f"e {u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        n = expected_m = None
        edges: list[tuple[int, int]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            try:
                if parts[0] == "p" and len(parts) == 3:
                    if n is not None:
                        raise ParseError(f"line {lineno}: duplicate header")
                    n, expected_m = int(parts[1]), int(parts[2])
                elif parts[0] == "e" and len(parts) == 3:
                    if n is None:
                        raise ParseError(f"line {lineno}: edge before header")
                    edges.append((int(parts[1]), int(parts[2])))
                else:
                    raise ParseError(f"line {lineno}: cannot parse {raw!r}")
            except ValueError as exc:
                if isinstance(exc, ParseError):
                    raise
                raise ParseError(f"line {lineno}: {exc}") from None
        if n is None:
            raise ParseError("missing 'p <n> <m>' header")
        if len(edges) != expected_m:
            raise ParseError(f"header announces {expected_m} edges, found {len(edges)}")
        return cls(n, edges)


def build(n: int, edge_list: Iterable[Sequence[int]]) -> Multigraph:
    return Multigraph(n, edge_list)


def boundary(g: Multigraph, x: Iterable[int]) -> EdgeCut:
    return g.boundary(x)


def girth(g: Multigraph) -> float:
    return g.girth()


def odd_girth(g: Multigraph) -> float:
    return g.odd_girth()


def vertex_subsets(n: int) -> Iterator[frozenset[int]]:
    for mask in range(1 << n):
        yield frozenset(v for v in range(n) if mask >> v & 1)
