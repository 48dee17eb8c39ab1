"""Multiplicative topological indices on random graph ensembles."""

from ._core import (
    Graph,
    GraphError,
    EvaluationError,
    path_graph,
    cycle_graph,
    complete_graph,
    read_edge_list,
    write_edge_list,
    generate,
    mean_degree,
    g_of_r,
    index_names,
    additive_names,
    ln_index,
    additive_index,
    oracle_ln_index,
    predict,
    predict_per_vertex,
    sweep,
    collapse,
    verify,
)

__all__ = [
    "Graph",
    "GraphError",
    "EvaluationError",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "read_edge_list",
    "write_edge_list",
    "generate",
    "mean_degree",
    "g_of_r",
    "index_names",
    "additive_names",
    "ln_index",
    "additive_index",
    "oracle_ln_index",
    "predict",
    "predict_per_vertex",
    "sweep",
    "collapse",
    "verify",
]
