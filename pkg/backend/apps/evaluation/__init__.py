from .clustering import KMeansResult, fit_kmeans, kmeans, nmi
from .link import auc_score, average_precision, link_metrics
from .probe import ProbeResult, fit_probe, linear_probe
from .schemas import EvalConfig, ProbeConfig

__all__ = [
    "EvalConfig", "KMeansResult", "ProbeConfig", "ProbeResult",
    "auc_score", "average_precision", "fit_kmeans", "fit_probe", "kmeans", "linear_probe",
    "link_metrics", "nmi",
]
