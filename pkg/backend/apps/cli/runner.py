"""
Multi-seed experiment execution.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

from config import get_settings

from ..core.exceptions import ConfigError, ExperimentError, LrgaeError
from ..core.utils import ErrorHandler, RngStreams
from ..evaluation import kmeans, link_metrics, linear_probe, nmi
from ..graph import Graph, link_split, node_split
from ..train import Trainer, embed, score_links
from .report import ResultReport
from .schemas import ExperimentConfig

logger = logging.getLogger(__name__)

LABELLED_TASKS = ("node_classification", "clustering")


class ExperimentRunner:
    """
    Runs every seed of one ExperimentConfig against a single loaded graph.
    Seeds may run concurrently; results are ordered by seed.
    """

    def __init__(self, config: ExperimentConfig, graph: Optional[Graph] = None,
                 max_workers: Optional[int] = None):
        self.config = config
        self.block = config.model_block()
        self.graph = graph if graph is not None else config.dataset.load()
        if config.task in LABELLED_TASKS and self.graph.labels is None:
            raise ConfigError("task", f"{config.task} needs node labels, "
                                      f"dataset '{config.dataset.display_name}' has none")
        self.max_workers = max_workers or get_settings().LRGAE_THREADS

    def _trainer(self, g: Graph, seed: int) -> Trainer:
        block, cfg = self.block, self.config
        return Trainer(g, block.aug_a, block.aug_b, block.view, cfg.encoder, block.decoder,
                       block.loss, cfg.neg_sampler, cfg.train.model_copy(update={"seed": seed}))

    def _evaluate(self, seed: int) -> Dict[str, Any]:
        cfg, g = self.config, self.graph
        if cfg.task == "link_prediction":
            split = link_split(g, cfg.eval.link_split, seed)
            g = g.with_edges(split.train_edges)

        trainer = self._trainer(g, seed)
        params, record = trainer.fit()
        enc = trainer.enc_cfg

        if cfg.task == "link_prediction":
            pos = score_links(g, enc, self.block.decoder, params, split.test_pos, self.block.view)
            neg = score_links(g, enc, self.block.decoder, params, split.test_neg, self.block.view)
            metrics = link_metrics(pos, neg)
        else:
            z = embed(g, enc, params, cfg.eval.embed_mode)
            labels = g.require_labels()
            if cfg.task == "node_classification":
                metrics = {"accuracy": linear_probe(z, labels, node_split(g, cfg.eval.node_split, seed),
                                                    cfg.eval.probe)}
            else:
                assignments = kmeans(z, g.num_classes, cfg.eval.kmeans_restarts,
                                     RngStreams(seed).get("kmeans"))
                metrics = {"nmi": nmi(assignments, labels)}

        return {"seed": seed, "metrics": metrics, "epochs": record.epochs,
                "final_loss": record.losses[-1], "wall_clock_s": record.wall_clock_s}

    def run_seed(self, seed: int) -> Dict[str, Any]:
        logger.info(f"📡 Seed {seed}: {self.config.label} on {self.config.dataset.display_name}")
        try:
            result = self._evaluate(seed)
        except ConfigError:
            raise
        except LrgaeError as e:
            ErrorHandler.log_exception(e, {"seed": seed, "epoch": getattr(e, "epoch", None)})
            raise ExperimentError(seed, e) from e
        logger.info(f"✅ Seed {seed}: {result['metrics']}")
        return result

    def run(self) -> ResultReport:
        started = time.perf_counter()
        seeds = sorted(self.config.seeds)
        workers = max(1, min(self.max_workers, len(seeds)))
        if workers == 1:
            per_seed: List[Dict[str, Any]] = [self.run_seed(s) for s in seeds]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                per_seed = list(pool.map(self.run_seed, seeds))
        return ResultReport.build(self.config, per_seed, time.perf_counter() - started)
