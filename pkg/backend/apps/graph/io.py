"""
Dataset directory reader and writer.

Layout:
    edges.tsv     one "u<TAB>v" pair per line, 0-indexed
    features.csv  n lines of d comma-separated floats
    labels.csv    n lines, one integer each (optional)
    splits.json   {"train": [...], "val": [...], "test": [...]} (optional)
"""

import json
import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd

from ..core.exceptions import DatasetParseError, DatasetValidationError
from .models import Graph

logger = logging.getLogger(__name__)

EDGES_FILE = "edges.tsv"
FEATURES_FILE = "features.csv"
LABELS_FILE = "labels.csv"
SPLITS_FILE = "splits.json"

_INTEGER = r"\d+"
_PANDAS_LINE = re.compile(r"line (\d+)")


def _read_table(path: Path, sep: str) -> pd.DataFrame:
    """Raw string cells; blank lines are kept so row i is line i + 1."""
    try:
        return pd.read_csv(path, sep=sep, header=None, dtype=str, keep_default_na=False,
                           skip_blank_lines=False, engine="python")
    except pd.errors.EmptyDataError:
        return pd.DataFrame()
    except pd.errors.ParserError as exc:
        match = _PANDAS_LINE.search(str(exc))
        line = int(match.group(1)) if match else 0
        raise DatasetParseError(path.name, line, "ragged row") from exc


def _first_bad_row(bad: np.ndarray) -> Optional[int]:
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def _parse_integers(frame: pd.DataFrame, path: Path, width: int) -> np.ndarray:
    if frame.empty:
        return np.zeros((0, width), dtype=np.int64)
    if frame.shape[1] != width:
        raise DatasetParseError(path.name, 1, f"expected {width} column(s), found {frame.shape[1]}")
    ragged = _first_bad_row(frame.isna().any(axis=1).to_numpy())
    if ragged is not None:
        raise DatasetParseError(path.name, ragged + 1, "ragged row")
    valid = np.column_stack([frame[c].str.fullmatch(_INTEGER).to_numpy(dtype=bool)
                             for c in frame.columns])
    bad = _first_bad_row(~valid.all(axis=1))
    if bad is not None:
        raise DatasetParseError(path.name, bad + 1, f"non-integer token in {list(frame.iloc[bad])}")
    return frame.to_numpy(dtype=str).astype(np.int64)


def _parse_floats(frame: pd.DataFrame, path: Path) -> np.ndarray:
    if frame.empty:
        return np.zeros((0, 0))
    ragged = _first_bad_row(frame.isna().any(axis=1).to_numpy())
    if ragged is not None:
        raise DatasetParseError(path.name, ragged + 1, "ragged row")
    values = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
    bad = _first_bad_row(~np.isfinite(values).all(axis=1))
    if bad is not None:
        raise DatasetParseError(path.name, bad + 1, "non-numeric token")
    return values


def _read_splits(path: Path, n: int) -> Dict[str, List[int]]:
    with open(path) as f:
        raw = json.load(f)
    splits = {}
    for key in ("train", "val", "test"):
        if key not in raw or not isinstance(raw[key], list):
            raise DatasetValidationError(f"{path.name}: missing integer array '{key}'")
        ids = [int(i) for i in raw[key]]
        if any(i < 0 or i >= n for i in ids):
            raise DatasetValidationError(f"{path.name}: '{key}' has node ids outside [0, {n})")
        splits[key] = ids
    return splits


def load_graph(path: Union[str, Path]) -> Graph:
    """Read a dataset directory into a canonical Graph."""
    root = Path(path)
    for required in (EDGES_FILE, FEATURES_FILE):
        if not (root / required).is_file():
            raise FileNotFoundError(f"{root / required} not found")

    features = _parse_floats(_read_table(root / FEATURES_FILE, ","), root / FEATURES_FILE)
    n = features.shape[0]
    edges = _parse_integers(_read_table(root / EDGES_FILE, "\t"), root / EDGES_FILE, 2)
    if edges.size and edges.max() >= n:
        line = int(np.flatnonzero((edges >= n).any(axis=1))[0]) + 1
        raise DatasetValidationError(f"{EDGES_FILE}:{line}: endpoint >= n={n}")

    labels = None
    if (root / LABELS_FILE).is_file():
        labels = _parse_integers(_read_table(root / LABELS_FILE, ","), root / LABELS_FILE, 1)[:, 0]
        if len(labels) != n:
            raise DatasetValidationError(f"{LABELS_FILE}: {len(labels)} labels for {n} nodes")

    public_split = None
    if (root / SPLITS_FILE).is_file():
        public_split = _read_splits(root / SPLITS_FILE, n)

    graph = Graph.from_edges(n, edges, features, labels=labels, public_split=public_split)
    logger.info(f"📂 Loaded {root.name}: n={graph.n}, edges={graph.num_edges}, d={graph.feature_dim}")
    return graph


def write_graph(graph: Graph, path: Union[str, Path]) -> Path:
    """Write `graph` in the layout `load_graph` reads."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    pd.DataFrame(graph.edges).to_csv(root / EDGES_FILE, sep="\t", header=False, index=False,
                                     lineterminator="\n")
    # %.17g round-trips float64 exactly
    pd.DataFrame(graph.features.data).to_csv(root / FEATURES_FILE, header=False, index=False,
                                             float_format="%.17g", lineterminator="\n")
    if graph.labels is not None:
        pd.DataFrame(graph.labels).to_csv(root / LABELS_FILE, header=False, index=False,
                                          lineterminator="\n")
    if graph.public_split is not None:
        with open(root / SPLITS_FILE, "w") as f:
            json.dump(graph.public_split, f)

    logger.info(f"💾 Wrote graph to {root}")
    return root
