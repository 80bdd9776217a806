"""Maximum Δ-edge-colorable subgraphs of multigraphs: exact oracles, recoloring
procedures and corpus checkers for their structural bounds."""

from .coloring import KempeChain, PartialColoring, UncoloredCycle, flip_chain, kempe_chain, uncolored_cycle
from .exact import (
    BudgetExceeded,
    MaxSubgraphCertificate,
    chromatic_index,
    is_t_edge_colorable,
    max_delta_subgraph,
    r_e,
    r_prime,
)
from .multigraph import Multigraph

__all__ = [
    "BudgetExceeded",
    "KempeChain",
    "MaxSubgraphCertificate",
    "Multigraph",
    "PartialColoring",
    "UncoloredCycle",
    "chromatic_index",
    "flip_chain",
    "is_t_edge_colorable",
    "kempe_chain",
    "max_delta_subgraph",
    "r_e",
    "r_prime",
    "uncolored_cycle",
]
