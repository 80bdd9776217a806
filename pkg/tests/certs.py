"""Alternative maximum certificates built by exhaustive removal-set search."""

from itertools import combinations

from deltacolor.coloring import PartialColoring
from deltacolor.exact import MaxSubgraphCertificate, is_t_edge_colorable, max_delta_subgraph


def adjacent_certificates(g, limit):
    """Maximum certificates whose uncolored edges include two adjacent ones,
    found by trying every removal set of size r_e."""
    r = max_delta_subgraph(g).r_e
    out = []
    for drop in combinations(range(g.m), r):
        ends = [x for e in drop for x in g.edges[e]]
        if len(ends) == len(set(ends)):
            continue
        keep = [e for e in range(g.m) if e not in drop]
        res = is_t_edge_colorable(g.edge_subgraph(keep), g.max_degree)
        if res:
            colors = [None] * g.m
            for i, e in enumerate(keep):
                colors[e] = res.coloring[i]
            out.append(MaxSubgraphCertificate(PartialColoring(g, g.max_degree, colors), optimal=True))
            if len(out) == limit:
                break
    return out
