"""Graph coloring with qudit product states."""

import json

from ._core import (
    ConfigError,
    Graph,
    Hyperparameters,
    Method,
    ParseError,
    amplitudes_to_angles,
    check_gradient,
    load_graph,
    lx_ground_state,
    parse_dimacs,
    parse_edge_list,
    potts_energy,
    run_single,
    spherical_to_amplitudes,
)
from ._core import run_batch_json as _run_batch_json

__all__ = [
    "ConfigError",
    "Graph",
    "Hyperparameters",
    "Method",
    "ParseError",
    "amplitudes_to_angles",
    "check_gradient",
    "load_graph",
    "lx_ground_state",
    "parse_dimacs",
    "parse_edge_list",
    "potts_energy",
    "run_batch",
    "run_single",
    "spherical_to_amplitudes",
]


def run_batch(graph, hp, workers=1, timing=True):
    """Run hp.num_runs independent runs and return the summary as a dict."""
    return json.loads(_run_batch_json(graph, hp, workers, timing))
