"""
Pretraining loop: augment, encode, pair, contrast, step. Plus frozen
embedding extraction and link scoring for downstream evaluation.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from config import get_settings

from ..augment import AugmentSpec, GraphView, build_augmentation
from ..core.exceptions import ConfigError, IndexRangeError, TrainingError
from ..core.utils import RngStreams
from ..graph import Graph
from ..losses import LossConfig, NegSamplerConfig, build_sampler, evaluate_objective
from ..nn import (Decoder, DecoderConfig, EmbeddingStack, Encoder, EncoderConfig, ParamStore,
                  decode_edge)
from ..tensor import Tensor, backward, ops
from ..views import (PairBatch, ViewSpec, case_abbreviation, case_of, check_dimensions, left_right,
                     resolve_decode_right, supervision_pairs)
from ..views.cases import DEGENERATE_CASE
from .optim import Adam
from .schemas import TrainConfig

logger = logging.getLogger(__name__)

MASK_TOKEN = "mask_token"


@dataclass
class EpochState:
    """What a callback sees after each epoch. `params` holds the values the loss was computed with."""

    epoch: int
    loss: float
    batch: PairBatch
    params: Dict[str, np.ndarray]


@dataclass
class RunRecord:
    seed: int
    losses: List[float] = field(default_factory=list)
    evals: List[Dict[str, Any]] = field(default_factory=list)
    wall_clock_s: float = 0.0
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def epochs(self) -> int:
        return len(self.losses)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "epochs": self.epochs,
            "losses": list(self.losses),
            "evals": list(self.evals),
            "wall_clock_s": self.wall_clock_s,
            "config": self.config,
        }


Callback = Callable[[EpochState], None]
Evaluator = Callable[[ParamStore, int], Dict[str, float]]


def resolve_encoder(enc: EncoderConfig, g: Graph) -> EncoderConfig:
    """Fill input_dim from the graph's features."""
    if enc.input_dim is None:
        return enc.model_copy(update={"input_dim": g.feature_dim})
    if enc.input_dim != g.feature_dim:
        raise ConfigError("encoder.input_dim", f"{enc.input_dim} != feature dimension {g.feature_dim}")
    return enc


class Trainer:
    """
    One pretraining run of a (views, encoder, decoder, loss) configuration.

    Every consistency check runs in the constructor, before any compute.
    """

    def __init__(self, g: Graph, aug_a: AugmentSpec, aug_b: AugmentSpec, spec: ViewSpec,
                 enc: EncoderConfig, dec: DecoderConfig, loss: LossConfig,
                 neg: Optional[NegSamplerConfig] = None, cfg: Optional[TrainConfig] = None):
        self.g = g
        self.aug_specs = {"A": aug_a, "B": aug_b}
        self.enc_cfg = resolve_encoder(enc, g)
        self.dec_cfg = dec
        self.loss_cfg = loss
        self.neg_cfg = neg or NegSamplerConfig()
        self.cfg = cfg or TrainConfig()

        k = self.enc_cfg.num_layers
        try:
            self.spec = spec.resolve(k)
        except IndexRangeError as e:
            raise ConfigError("view", str(e)) from None
        if case_of(self.spec) == DEGENERATE_CASE:
            raise ConfigError("view", "case 1 (AAllvv) is not applicable: identical views, "
                                      "receptive fields and nodes make the loss trivially zero")
        if not loss.supports(self.spec.pair_mode):
            raise ConfigError("loss.kind", f"'{loss.kind}' cannot consume {self.spec.pair_mode} pairs")

        left_dim = self.enc_cfg.layer_dim(self.spec.l)
        right_dim = self.enc_cfg.layer_dim(self.spec.r)
        self.encoder = Encoder(self.enc_cfg)
        self.decoder = Decoder(dec, in_dim=left_dim, target_dim=right_dim)
        self.decode_right = resolve_decode_right(self.spec, loss.kind, self.decoder, right_dim)
        check_dimensions(self.spec, self.decoder, left_dim, right_dim, self.decode_right)

        self.augmentations = {name: build_augmentation(s) for name, s in self.aug_specs.items()}
        self.sampler = build_sampler(self.neg_cfg) if loss.needs_negatives else None

    @property
    def case(self) -> int:
        return case_of(self.spec)

    def snapshot(self) -> Dict[str, Any]:
        return {
            "aug_a": self.aug_specs["A"].model_dump(),
            "aug_b": self.aug_specs["B"].model_dump(),
            "view": self.spec.model_dump(),
            "decode_right": self.decode_right,
            "encoder": self.enc_cfg.model_dump(),
            "decoder": self.dec_cfg.model_dump(),
            "loss": self.loss_cfg.model_dump(),
            "neg_sampler": self.neg_cfg.model_dump(),
            "negatives": "resampled every epoch",
            "train": self.cfg.model_dump(),
        }

    def init_params(self, streams: RngStreams) -> ParamStore:
        store = ParamStore()
        self.encoder.init_params(store, streams.get("init"))
        self.decoder.init_params(store, streams.get("init"))
        if any(a.needs_mask_token for a in self.augmentations.values()):
            store.add_zeros(MASK_TOKEN, 1, self.g.feature_dim)
        return store

    def _views(self, store: ParamStore, streams: RngStreams) -> Dict[str, GraphView]:
        token = store.get(MASK_TOKEN)
        return {name: aug.apply(self.g, streams.get(aug.spec.stream or f"augment.{name}"), token)
                for name, aug in self.augmentations.items()}

    def _stacks(self, views: Dict[str, GraphView], store: ParamStore,
                streams: RngStreams) -> Dict[str, Optional[EmbeddingStack]]:
        stacks = {}
        for name, view in views.items():
            deepest = self.spec.deepest_layer(name)
            stacks[name] = None if deepest is None else self.encoder.encode(
                view, store, training=True, rng=streams.get("dropout"), upto=deepest)
        return stacks

    def step_loss(self, store: ParamStore, streams: RngStreams) -> Tuple[Tensor, PairBatch]:
        """Loss of one full-batch step, with fresh views and negatives."""
        views = self._views(store, streams)
        stacks = self._stacks(views, store, streams)
        left_stack = stacks[self.spec.left_graph]
        embeddings = left_stack.layer(self.spec.l).data if self.sampler is not None else None

        batch = supervision_pairs(self.spec, self.g, views["A"], views["B"],
                                  rng=streams.get("negatives"), sampler=self.sampler,
                                  embeddings=embeddings, neg_multiplier=self.neg_cfg.multiplier)
        contrast = left_right(self.spec, stacks["A"], stacks["B"], batch, self.decoder, store,
                              self.decode_right)
        return evaluate_objective(self.loss_cfg, contrast, self.decoder, store), batch

    def fit(self, callbacks: Optional[List[Callback]] = None,
            evaluator: Optional[Evaluator] = None) -> Tuple[ParamStore, RunRecord]:
        cfg = self.cfg
        streams = RngStreams(cfg.seed)
        store = self.init_params(streams)
        optimizer = Adam(store, cfg)
        record = RunRecord(seed=cfg.seed, config=self.snapshot())
        callbacks = callbacks or []

        logger.info(f"📡 Pretraining {case_abbreviation(self.spec)} (case {self.case}) "
                    f"seed={cfg.seed} epochs={cfg.epochs} params={store.num_values()}")
        started = time.perf_counter()
        epochs = range(1, cfg.epochs + 1)
        if get_settings().LRGAE_PROGRESS:
            epochs = tqdm(epochs, desc=f"seed {cfg.seed}", leave=False)

        for epoch in epochs:
            before = store.snapshot() if callbacks else {}
            loss, batch = self.step_loss(store, streams)
            value = loss.item()
            if not np.isfinite(value):
                raise TrainingError(f"non-finite loss {value} at epoch {epoch}", epoch=epoch)

            grads = backward(loss, store.tensors())
            try:
                optimizer.step({name: grads[t] for name, t in store.items()})
            except TrainingError as e:
                raise TrainingError(f"{e} at epoch {epoch}", epoch=epoch, parameter=e.parameter) from e

            record.losses.append(value)
            for callback in callbacks:
                callback(EpochState(epoch=epoch, loss=value, batch=batch, params=before))
            if epoch % cfg.log_every == 0 or epoch == cfg.epochs:
                logger.debug(f"epoch {epoch}: loss={value:.6f} pairs={batch.num_positive}"
                             f"+{batch.num_negative}")
            if evaluator is not None and cfg.eval_every and epoch % cfg.eval_every == 0:
                record.evals.append({"epoch": epoch, **evaluator(store, epoch)})

        record.wall_clock_s = time.perf_counter() - started
        logger.info(f"✅ Pretraining done: seed={cfg.seed} final loss={record.losses[-1]:.6f} "
                    f"in {record.wall_clock_s:.1f}s")
        return store, record


def train(g: Graph, aug_a: AugmentSpec, aug_b: AugmentSpec, spec: ViewSpec, enc: EncoderConfig,
          dec: DecoderConfig, loss: LossConfig, neg: Optional[NegSamplerConfig] = None,
          cfg: Optional[TrainConfig] = None, callbacks: Optional[List[Callback]] = None,
          evaluator: Optional[Evaluator] = None) -> Tuple[ParamStore, RunRecord]:
    return Trainer(g, aug_a, aug_b, spec, enc, dec, loss, neg, cfg).fit(callbacks, evaluator)


def embed(g: Graph, enc: EncoderConfig, params: ParamStore, mode: str = "last") -> Tensor:
    """
    Evaluation-mode encoding of the unaugmented graph: H^(k) for `last`,
    [H^(1) | ... | H^(k)] for `concat`. Detached.
    """
    stack = Encoder(resolve_encoder(enc, g)).encode(GraphView.of(g), params)
    if mode == "last":
        out = stack.layer(stack.num_layers)
    elif mode == "concat":
        out = ops.concat_cols(stack.layers[1:])
    else:
        raise ConfigError("eval.embed_mode", f"unknown mode '{mode}'")
    return out.detach()


def score_links(g: Graph, enc: EncoderConfig, dec: DecoderConfig, params: ParamStore,
                pairs: np.ndarray, spec: Optional[ViewSpec] = None) -> np.ndarray:
    """
    Raw scores for node pairs (u, v) from one full-graph encoding. An edge
    decoder trained on edge pairs scores H^(l)[u] against H^(r)[v] with the
    view's l and r; otherwise both ends read H^(k). mlp_edge uses the trained
    MLP, every other decoder the inner product.
    """
    enc = resolve_encoder(enc, g)
    stack = Encoder(enc).encode(GraphView.of(g), params)
    l = r = stack.num_layers
    if spec is not None and dec.scores_edges and spec.pair_mode == "edge_pair":
        try:
            resolved = spec.resolve(stack.num_layers)
        except IndexRangeError as e:
            raise ConfigError("view", str(e)) from None
        l, r = resolved.l, resolved.r

    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    left = ops.gather_rows(stack.layer(l).detach(), pairs[:, 0])
    right = ops.gather_rows(stack.layer(r).detach(), pairs[:, 1])
    if dec.kind == "mlp_edge":
        scores = Decoder(dec, in_dim=left.cols).score_pairs(left, right, params)
    else:
        scores = decode_edge("dot", left, right)
    return scores.data[:, 0].copy()
