"""
Result files: one JSON report per experiment, and the summary table across reports.
"""

import json
import logging
import platform
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import numpy as np
import pandas as pd
import scipy
import sklearn

from ..core.exceptions import ConfigError, ContractError
from ..core.utils import utc_timestamp
from .schemas import ExperimentConfig

logger = logging.getLogger(__name__)

STD_KIND = "population"
# Excluded when comparing two reports of the same config
VOLATILE_KEYS = ("created_at", "wall_clock_s")


def package_versions() -> Dict[str, str]:
    try:
        lrgae = metadata.version("lrgae")
    except metadata.PackageNotFoundError:
        lrgae = "dev"
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "scikit-learn": sklearn.__version__,
        "lrgae": lrgae,
    }


def aggregate(per_seed: List[Dict[str, Any]]) -> Dict[str, Dict[str, float]]:
    """Mean and population std of every metric over the seeds."""
    frame = pd.DataFrame([entry["metrics"] for entry in per_seed])
    return {metric: {"mean": float(frame[metric].mean()), "std": float(frame[metric].std(ddof=0))}
            for metric in frame.columns}


@dataclass
class ResultReport:
    config: Dict[str, Any]
    per_seed: List[Dict[str, Any]]
    aggregate: Dict[str, Dict[str, float]]
    label: str
    dataset: str
    task: str
    versions: Dict[str, str] = field(default_factory=package_versions)
    created_at: str = field(default_factory=utc_timestamp)
    wall_clock_s: float = 0.0
    std: str = STD_KIND

    @classmethod
    def build(cls, config: ExperimentConfig, per_seed: List[Dict[str, Any]],
              wall_clock_s: float) -> "ResultReport":
        per_seed = sorted(per_seed, key=lambda entry: entry["seed"])
        return cls(config=json.loads(config.model_dump_json()), per_seed=per_seed,
                   aggregate=aggregate(per_seed), label=config.label,
                   dataset=config.dataset.display_name, task=config.task,
                   wall_clock_s=wall_clock_s)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "dataset": self.dataset,
            "task": self.task,
            "config": self.config,
            "per_seed": self.per_seed,
            "aggregate": self.aggregate,
            "std": self.std,
            "versions": self.versions,
            "created_at": self.created_at,
            "wall_clock_s": self.wall_clock_s,
        }

    def body(self) -> Dict[str, Any]:
        """The reproducible part of the report."""
        out = {k: v for k, v in self.to_dict().items() if k not in VOLATILE_KEYS}
        out["per_seed"] = [{k: v for k, v in entry.items() if k not in VOLATILE_KEYS}
                           for entry in self.per_seed]
        return out

    def summary(self) -> str:
        rows = [f"{metric}: {100 * s['mean']:.1f}±{100 * s['std']:.1f}"
                for metric, s in self.aggregate.items()]
        return f"{self.dataset} / {self.label} ({len(self.per_seed)} seeds): " + ", ".join(rows)

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
        logger.info(f"💾 Report written to {path}")
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ResultReport":
        with open(path) as f:
            try:
                raw = json.load(f)
            except ValueError as e:
                raise ConfigError(str(path), f"not a JSON result file: {e}") from None
        if not isinstance(raw, dict):
            raise ConfigError(str(path), "result file must hold a JSON object")
        try:
            return cls(**raw)
        except TypeError as e:
            raise ConfigError(str(path), f"not a result report: {e}") from None


def format_cell(values: Iterable[float]) -> str:
    """Percent mean±std with one decimal; population std."""
    values = 100.0 * np.asarray(list(values), dtype=np.float64)
    return f"{values.mean():.1f}±{values.std():.1f}"


def summarize(reports: List[ResultReport], csv_path: Optional[Union[str, Path]] = None) -> pd.DataFrame:
    """
    One row per (dataset, label); per-seed values of reports sharing a row are pooled.
    """
    if not reports:
        raise ContractError("no result reports to summarize")
    records = [{"dataset": r.dataset, "label": r.label, "metric": metric, "value": value}
               for r in reports for entry in r.per_seed for metric, value in entry["metrics"].items()]
    frame = pd.DataFrame(records)
    table = (frame.groupby(["dataset", "label", "metric"], sort=True)["value"]
             .apply(format_cell)
             .unstack("metric")
             .fillna("-"))
    table.columns.name = None
    if csv_path is not None:
        table.to_csv(csv_path)
        logger.info(f"💾 Summary table written to {csv_path}")
    return table
