"""Partial proper edge colorings, Kempe chains and the odd cycles of uncolored edges.

Colors are the integers ``1..t``; ``None`` marks an uncolored edge.  Colorings
are immutable values and every recoloring returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .multigraph import GraphError, Multigraph


class ColoringError(ValueError):
    pass


class StaleChain(ColoringError):
    pass


class BadColors(ColoringError):
    pass


class EdgeNotOnCycle(ColoringError):
    pass


class ChainKind(Enum):
    PATH = "path"
    EVEN_CYCLE = "even_cycle"


@dataclass(frozen=True)
class KempeChain:
    colors: tuple[int, int]
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    kind: ChainKind

    @property
    def endpoints(self) -> Optional[tuple[int, int]]:
        if self.kind is ChainKind.PATH:
            return self.vertices[0], self.vertices[-1]
        return None

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class UncoloredCycle:
    """The odd cycle formed by an uncolored edge ``e = (u, v)`` and the
    ``alpha``/``beta`` path from ``v`` back to ``u``.

    ``cycle[0]`` is ``e``; ``cycle[1]`` is the ``alpha`` edge at ``v``;
    ``vertices`` lists ``v, ..., u`` along the path.
    """

    e: int
    u: int
    v: int
    alpha: int
    beta: int
    cycle: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def colors(self) -> frozenset[int]:
        return frozenset((self.alpha, self.beta))

    def __len__(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class Improvement:
    """Flipping ``chain`` (if any) and then coloring ``e`` with ``color`` enlarges
    the colored subgraph by one edge."""

    e: int
    color: int
    chain: Optional[KempeChain]

    def apply(self, c: "PartialColoring") -> "PartialColoring":
        if self.chain is not None:
            c = flip_chain(c, self.chain)
        return c.recolor({self.e: self.color})


class PartialColoring:
    __slots__ = ("graph", "t", "colors", "_present")

    def __init__(self, graph: Multigraph, t: int, colors: Sequence[Optional[int]]):
        if len(colors) != graph.m:
            raise ColoringError(f"expected {graph.m} entries, got {len(colors)}")
        for e, col in enumerate(colors):
            if col is not None and not 1 <= col <= t:
                raise ColoringError(f"edge {e}: color {col} outside 1..{t}")
        self.graph = graph
        self.t = t
        self.colors: tuple[Optional[int], ...] = tuple(colors)
        self._present: Optional[list[dict[int, int]]] = None

    @classmethod
    def empty(cls, graph: Multigraph, t: int) -> "PartialColoring":
        return cls(graph, t, [None] * graph.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialColoring):
            return NotImplemented
        return self.graph == other.graph and self.t == other.t and self.colors == other.colors

    def __hash__(self) -> int:
        return hash((self.t, self.colors))

    def __repr__(self) -> str:
        return f"PartialColoring(t={self.t}, colored={self.size}/{self.graph.m})"

    def __getitem__(self, e: int) -> Optional[int]:
        return self.colors[e]

    # vertex -> {color: edge}; built lazily, assumes properness
    def _index(self) -> list[dict[int, int]]:
        if self._present is None:
            present: list[dict[int, int]] = [{} for _ in range(self.graph.n)]
            for e, col in enumerate(self.colors):
                if col is not None:
                    u, v = self.graph.edges[e]
                    present[u][col] = e
                    present[v][col] = e
            self._present = present
        return self._present

    @property
    def size(self) -> int:
        return sum(col is not None for col in self.colors)

    def colored_edges(self) -> list[int]:
        return [e for e, col in enumerate(self.colors) if col is not None]

    def uncolored_edges(self) -> list[int]:
        return [e for e, col in enumerate(self.colors) if col is None]

    def present_colors(self, v: int) -> set[int]:
        return {self.colors[e] for e in self.graph.incidence[v] if self.colors[e] is not None}

    def missing_colors(self, v: int) -> set[int]:
        return set(range(1, self.t + 1)) - self.present_colors(v)

    def edge_with_color(self, v: int, color: int) -> Optional[int]:
        return self._index()[v].get(color)

    def is_proper(self) -> bool:
        for inc in self.graph.incidence:
            seen = set()
            for e in inc:
                col = self.colors[e]
                if col is None:
                    continue
                if col in seen:
                    return False
                seen.add(col)
        return True

    def colored_subgraph(self) -> Multigraph:
        return self.graph.edge_subgraph(self.colored_edges())

    def color_classes(self) -> dict[int, list[int]]:
        classes: dict[int, list[int]] = {c: [] for c in range(1, self.t + 1)}
        for e, col in enumerate(self.colors):
            if col is not None:
                classes[col].append(e)
        return classes

    def uncolored_degree(self, v: int) -> int:
        return sum(self.colors[e] is None for e in self.graph.incidence[v])

    def recolor(self, changes: dict[int, Optional[int]]) -> "PartialColoring":
        colors = list(self.colors)
        for e, col in changes.items():
            colors[e] = col
        return PartialColoring(self.graph, self.t, colors)

    def permute_colors(self, mapping: dict[int, int]) -> "PartialColoring":
        """Rename colors; colors absent from ``mapping`` are kept."""
        return PartialColoring(
            self.graph,
            self.t,
            [None if col is None else mapping.get(col, col) for col in self.colors],
        )

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"t {self.t}"]
        lines.extend(f"x {e} {'-' if col is None else col}" for e, col in enumerate(self.colors))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, graph: Multigraph, text: str) -> "PartialColoring":
        t = None
        colors: list[Optional[int]] = [None] * graph.m
        seen = set()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "t" and len(parts) == 2:
                t = int(parts[1])
            elif parts[0] == "x" and len(parts) == 3:
                e = int(parts[1])
                if not 0 <= e < graph.m or e in seen:
                    raise ColoringError(f"line {lineno}: bad edge id {e}")
                seen.add(e)
                colors[e] = None if parts[2] == "-" else int(parts[2])
            else:
                raise ColoringError(f"line {lineno}: cannot parse {raw!r}")
        if t is None:
            raise ColoringError("missing 't <num_colors>' header")
        return cls(graph, t, colors)


def missing_colors(c: PartialColoring, v: int) -> set[int]:
    return c.missing_colors(v)


def is_proper(c: PartialColoring, g: Optional[Multigraph] = None) -> bool:
    if g is not None and g != c.graph:
        raise GraphError("coloring belongs to a different graph")
    return c.is_proper()


def _walk(c: PartialColoring, start: int, first: int, other: int) -> tuple[list[int], list[int]]:
    """Follow the alternating walk from ``start`` beginning with color ``first``."""
    edges: list[int] = []
    vertices = [start]
    x, col = start, first
    used: set[int] = set()
    while True:
        e = c.edge_with_color(x, col)
        if e is None or e in used:
            break
        used.add(e)
        edges.append(e)
        x = c.graph.other_end(e, x)
        vertices.append(x)
        col = other if col == first else first
    return edges, vertices


def kempe_chain(c: PartialColoring, start: int, alpha: int, beta: int) -> KempeChain:
    """The maximal ``alpha``/``beta`` component through ``start``."""
    if alpha == beta:
        raise BadColors("chain colors must differ")
    for col in (alpha, beta):
        if not 1 <= col <= c.t:
            raise BadColors(f"color {col} outside 1..{c.t}")
    pair = (alpha, beta)
    has_a = c.edge_with_color(start, alpha) is not None
    has_b = c.edge_with_color(start, beta) is not None
    if not has_a and not has_b:
        return KempeChain(pair, (), (start,), ChainKind.PATH)
    if has_a != has_b:
        first, other = (alpha, beta) if has_a else (beta, alpha)
        edges, vertices = _walk(c, start, first, other)
        return KempeChain(pair, tuple(edges), tuple(vertices), ChainKind.PATH)
    edges, vertices = _walk(c, start, alpha, beta)
    if vertices[-1] == start and len(edges) > 1:
        return KempeChain(pair, tuple(edges), tuple(vertices[:-1]), ChainKind.EVEN_CYCLE)
    back_edges, back_vertices = _walk(c, start, beta, alpha)
    edges = list(reversed(back_edges)) + edges
    vertices = list(reversed(back_vertices)) + vertices[1:]
    return KempeChain(pair, tuple(edges), tuple(vertices), ChainKind.PATH)


def flip_chain(c: PartialColoring, chain: KempeChain) -> PartialColoring:
    alpha, beta = chain.colors
    changes: dict[int, Optional[int]] = {}
    for e in chain.edges:
        col = c.colors[e]
        if col == alpha:
            changes[e] = beta
        elif col == beta:
            changes[e] = alpha
        else:
            raise StaleChain(f"edge {e} carries color {col}, not one of {chain.colors}")
    # the chain must still be a whole component, otherwise the swap clashes
    for x in chain.vertices:
        for col in (alpha, beta):
            e = c.edge_with_color(x, col)
            if e is not None and e not in changes:
                raise StaleChain(f"chain is not maximal at vertex {x}")
    return c.recolor(changes)


def uncolored_cycle(
    c: PartialColoring, g: Optional[Multigraph], e: int, alpha: int, beta: int
) -> UncoloredCycle | Improvement:
    """The cycle of ``e = (u, v)`` with ``alpha`` missing at ``u`` and ``beta`` missing at ``v``.

    Endpoint order is taken from the colors: if ``alpha`` is missing at the
    second endpoint instead, the roles of the endpoints are swapped.  When the
    path from ``v`` does not close at ``u`` the colored subgraph was not
    maximum and an :class:`Improvement` is returned instead.
    """
    if g is not None and g != c.graph:
        raise GraphError("coloring belongs to a different graph")
    g = c.graph
    if c.colors[e] is not None:
        raise BadColors(f"edge {e} is colored")
    a, b = g.edges[e]
    miss_a, miss_b = c.missing_colors(a), c.missing_colors(b)
    if alpha in miss_a and beta in miss_b:
        u, v = a, b
    elif alpha in miss_b and beta in miss_a:
        u, v = b, a
    else:
        raise BadColors(f"colors ({alpha}, {beta}) are not missing at the ends of edge {e}")
    if alpha == beta:
        return Improvement(e, alpha, None)
    if alpha in c.missing_colors(v):
        return Improvement(e, alpha, None)
    if beta in c.missing_colors(u):
        return Improvement(e, beta, None)
    chain = kempe_chain(c, v, alpha, beta)
    if chain.vertices[-1] != u:
        # flipping makes alpha missing at v while u keeps missing it
        return Improvement(e, alpha, chain)
    return UncoloredCycle(
        e=e,
        u=u,
        v=v,
        alpha=alpha,
        beta=beta,
        cycle=(e,) + chain.edges,
        vertices=chain.vertices,
    )


def shift_cycle(c: PartialColoring, uc: UncoloredCycle, new_uncolored: int) -> PartialColoring:
    """Rotate the colors along ``uc`` so that ``new_uncolored`` is the uncolored edge.

    Edges strictly between ``uc.e`` and ``new_uncolored`` each take the color of
    their successor along the cycle; the rest keep their colors.
    """
    try:
        j = uc.cycle.index(new_uncolored)
    except ValueError:
        raise EdgeNotOnCycle(f"edge {new_uncolored} is not on the cycle of edge {uc.e}") from None
    for f in uc.cycle[1:]:
        if c.colors[f] not in (uc.alpha, uc.beta):
            raise StaleChain(f"cycle edge {f} no longer carries a cycle color")
    if c.colors[uc.e] is not None:
        raise StaleChain(f"edge {uc.e} is already colored")
    if j == 0:
        return c
    changes: dict[int, Optional[int]] = {uc.cycle[i]: c.colors[uc.cycle[i + 1]] for i in range(j)}
    changes[new_uncolored] = None
    return c.recolor(changes)


def cycles_of_edge(c: PartialColoring, e: int) -> Iterable[UncoloredCycle | Improvement]:
    """Every ``C^e`` over all admissible color pairs, in lexicographic color order."""
    u, v = c.graph.edges[e]
    for alpha in sorted(c.missing_colors(u)):
        for beta in sorted(c.missing_colors(v)):
            yield uncolored_cycle(c, None, e, alpha, beta)
