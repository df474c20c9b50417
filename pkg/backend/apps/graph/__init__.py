from .io import load_graph, write_graph
from .models import Graph, LinkSplit, NodeSplit
from .normalize import gcn_normalize, gcn_normalize_edges, mean_adjacency
from .splits import link_split, node_split, sample_non_edges
from .synthetic import generate_synthetic

__all__ = [
    "Graph", "LinkSplit", "NodeSplit",
    "load_graph", "write_graph",
    "gcn_normalize", "gcn_normalize_edges", "mean_adjacency",
    "node_split", "link_split", "sample_non_edges",
    "generate_synthetic",
]
