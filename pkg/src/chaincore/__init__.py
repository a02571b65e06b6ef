"""Separate-chain decomposition of networks and long paths by local decisions."""

__version__ = "0.1.0"

from .chain import (  # noqa: E402
    CoreSpectrum,
    FeasibilityError,
    ParamVectors,
    Schedule,
    decompose,
    fixed_point,
    local_update,
    spectrum,
    verify_chain,
)
from .graph import Graph, GraphStats, load_edge_list, read_graph, stats  # noqa: E402

__all__ = [
    "CoreSpectrum",
    "FeasibilityError",
    "Graph",
    "GraphStats",
    "ParamVectors",
    "Schedule",
    "decompose",
    "fixed_point",
    "load_edge_list",
    "local_update",
    "read_graph",
    "spectrum",
    "stats",
    "verify_chain",
]
