from .ablation import ablation_matrix
from .report import ResultReport, aggregate, summarize
from .runner import ExperimentRunner
from .schemas import DatasetConfig, ExperimentConfig, ModelBlock

__all__ = [
    "DatasetConfig", "ExperimentConfig", "ExperimentRunner", "ModelBlock", "ResultReport",
    "ablation_matrix", "aggregate", "summarize",
]
