"""Exhaustive small-graph corpora (one representative per isomorphism class)."""

from __future__ import annotations

import itertools
from typing import Iterator

import networkx as nx

from .multigraph import Multigraph


def _from_nx(h: nx.Graph) -> Multigraph:
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Multigraph(len(nodes), sorted((min(index[a], index[b]), max(index[a], index[b])) for a, b in h.edges()))


def connected_simple_graphs(max_n: int = 7, min_n: int = 2) -> Iterator[tuple[str, Multigraph]]:
    """All connected simple graphs with ``min_n <= n <= max_n`` (``max_n <= 7``),
    named after their index in the networkx graph atlas."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at seven vertices")
    for idx, h in enumerate(nx.graph_atlas_g()):
        n = h.number_of_nodes()
        if n < min_n or n > max_n or h.number_of_edges() == 0 or not nx.is_connected(h):
            continue
        yield f"simple-n{n}-atlas{idx:04d}", _from_nx(h)


def _automorphisms(n: int, edges: list[tuple[int, int]]) -> list[tuple[int, ...]]:
    edge_set = set(edges)
    autos = []
    for perm in itertools.permutations(range(n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edge_set for u, v in edges):
            autos.append(perm)
    return autos


def connected_multigraphs(max_n: int = 5, max_mu: int = 3, min_n: int = 2) -> Iterator[tuple[str, Multigraph]]:
    """All connected loopless multigraphs with ``n <= max_n`` and multiplicity
    ``<= max_mu``, one per isomorphism class.

    Each class is reached from its underlying simple graph by a multiplicity
    vector that is lexicographically least over the graph's automorphisms.
    """
    for name, base in connected_simple_graphs(max_n, min_n):
        edges = list(base.edges)
        autos = _automorphisms(base.n, edges)
        index = {e: i for i, e in enumerate(edges)}
        images = [
            [index[(min(p[u], p[v]), max(p[u], p[v]))] for u, v in edges] for p in autos
        ]
        for mults in itertools.product(range(1, max_mu + 1), repeat=len(edges)):
            canonical = True
            for img in images:
                moved = [0] * len(edges)
                for i, j in enumerate(img):
                    moved[j] = mults[i]
                if tuple(moved) < mults:
                    canonical = False
                    break
            if not canonical:
                continue
            edge_list = [uv for uv, k in zip(edges, mults) for _ in range(k)]
            tag = "".join(map(str, mults))
            yield f"multi-{name.split('-', 1)[1]}-mu{tag}", Multigraph(base.n, edge_list)
