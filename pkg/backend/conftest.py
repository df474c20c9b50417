"""
Shared pytest fixtures: small hand-built graphs and SBM benchmarks.
"""

import numpy as np
import pytest

from apps.graph import Graph, generate_synthetic


@pytest.fixture
def path_graph():
    """0 - 1 - 2 with 2-d features and two classes."""
    return Graph.from_edges(3, [(0, 1), (1, 2)], [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
                            labels=[0, 1, 0])


@pytest.fixture
def star_graph():
    """Center 0 joined to leaves 1..4."""
    return Graph.from_edges(5, [(0, i) for i in range(1, 5)], np.eye(5), labels=[0, 1, 1, 1, 1])


@pytest.fixture
def sbm_small():
    """Two 25-node blocks, 50 nodes total."""
    return generate_synthetic(2, [25, 25], 0.5, 0.05, feature_dim=8, noise=0.1, seed=0)


@pytest.fixture
def sbm_benchmark():
    """Two 100-node blocks, p_in=0.9, p_out=0.05."""
    return generate_synthetic(2, [100, 100], 0.9, 0.05, feature_dim=16, noise=0.5, seed=0)


@pytest.fixture
def dataset_dir(tmp_path):
    def make(edges="0\t1\n", features="1.0,2.0\n3.0,4.0\n", labels=None, splits=None):
        (tmp_path / "edges.tsv").write_text(edges)
        (tmp_path / "features.csv").write_text(features)
        if labels is not None:
            (tmp_path / "labels.csv").write_text(labels)
        if splits is not None:
            (tmp_path / "splits.json").write_text(splits)
        return tmp_path

    return make
