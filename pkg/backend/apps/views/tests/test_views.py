import itertools

import numpy as np
import pytest

from apps.augment import GraphView, edge_mask, feature_mask
from apps.core.exceptions import ConfigError, ContractError, IndexRangeError
from apps.graph import Graph
from apps.losses import LossConfig, UniformSampler, evaluate_objective, mse_feature_loss
from apps.nn import Decoder, DecoderConfig, EmbeddingStack, Encoder, EncoderConfig, ParamStore
from apps.tensor import Tensor, backward, ops
from apps.views import (ViewSpec, case_abbreviation, case_of, check_dimensions, left_right, preset,
                        preset_names, resolve_decode_right, supervision_pairs)
from apps.views.cases import CASES, IMPLEMENTATIONS

K = 2


@pytest.fixture
def small_graph():
    rng = np.random.default_rng(0)
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]
    return Graph.from_edges(6, edges, rng.uniform(-1, 1, (6, 3)), labels=[0, 0, 0, 1, 1, 1])


@pytest.fixture
def model(small_graph):
    cfg = EncoderConfig(arch="gcn", num_layers=K, input_dim=3, hidden_dim=4)
    store = ParamStore()
    encoder = Encoder(cfg)
    encoder.init_params(store, np.random.default_rng(1))
    return encoder, store


def spec_for(views_equal, fields_equal, nodes_equal, **extra):
    return ViewSpec(left_graph="A", right_graph="A" if views_equal else "B", l=K,
                    r=K if fields_equal else K - 1,
                    pair_mode="same_node" if nodes_equal else "edge_pair", **extra)


class TestCases:
    def test_truth_table_is_total(self):
        seen = set()
        for key in itertools.product([True, False], repeat=3):
            case = case_of(spec_for(*key))
            assert case == CASES[key]
            seen.add(case)
        assert seen == set(range(1, 9))

    def test_examples(self):
        assert case_of(spec_for(False, True, True)) == 2
        assert case_abbreviation(spec_for(False, True, True)) == "ABllvv"
        assert case_of(spec_for(True, False, True)) == 3
        assert case_of(spec_for(False, True, False)) == 7
        assert IMPLEMENTATIONS[7] is None

    def test_symbolic_fields_resolve_with_depth(self):
        spec = ViewSpec(l="k", r=K)
        assert case_of(spec, K) == 5
        assert case_of(ViewSpec(l="k", r="k-1"), K) == 6

    def test_field_outside_depth(self):
        with pytest.raises(IndexRangeError):
            ViewSpec(l=3).resolve(K)

    def test_negative_field_rejected(self):
        with pytest.raises(ValueError):
            ViewSpec(r=-1)

    @pytest.mark.parametrize("name,case", [
        ("gae", 5), ("gae_f", 3), ("maskgae", 5), ("graphmae", 4), ("gcl", 2),
        ("lrgae6", 6), ("lrgae7", 7), ("lrgae8", 8),
    ])
    def test_preset_cases(self, name, case):
        assert case_of(preset(name).view, K) == case

    def test_preset_losses_fit_pair_modes(self):
        for name in preset_names():
            p = preset(name)
            assert p.loss.supports(p.view.pair_mode), name

    def test_unknown_preset(self):
        with pytest.raises(ConfigError, match="preset"):
            preset("dgi")


class TestSupervisionPairs:
    def test_unmasked_edge_pairs_are_graph_edges(self, small_graph):
        view = GraphView.of(small_graph)
        batch = supervision_pairs(preset("gae").view, small_graph, view, view)
        np.testing.assert_array_equal(batch.positive_pairs(), small_graph.edges)
        assert batch.source == "graph_edges"
        assert batch.num_negative == 0

    def test_full_edge_mask_uses_all_edges(self, small_graph):
        view_a = edge_mask(small_graph, 1.0, np.random.default_rng(0))
        batch = supervision_pairs(preset("maskgae").view, small_graph, view_a, GraphView.of(small_graph))
        np.testing.assert_array_equal(batch.positive_pairs(), small_graph.edges)
        assert batch.source == "masked_edges"

    def test_masked_nodes_pair_with_themselves(self, small_graph):
        view_a = GraphView(base=small_graph, visible_edges=small_graph.edges,
                           masked_nodes=np.array([2, 5]))
        spec = spec_for(False, False, True)
        batch = supervision_pairs(spec, small_graph, view_a, GraphView.of(small_graph))
        np.testing.assert_array_equal(batch.positive_pairs(), [[2, 2], [5, 5]])

    def test_same_node_without_masking_uses_every_node(self, small_graph):
        view = GraphView.of(small_graph)
        batch = supervision_pairs(spec_for(True, False, True), small_graph, view, view)
        np.testing.assert_array_equal(batch.left_nodes, np.arange(6))
        assert batch.source == "all_nodes"

    def test_negatives_from_sampler(self, small_graph):
        view = GraphView.of(small_graph)
        batch = supervision_pairs(preset("gae").view, small_graph, view, view,
                                  rng=np.random.default_rng(0), sampler=UniformSampler(), neg_count=11)
        assert batch.num_negative == 11
        assert batch.is_positive.sum() == small_graph.num_edges
        negatives = batch.negative_pairs()
        assert negatives.shape == (11, 2)
        assert np.all(negatives[:, 0] != negatives[:, 1])

    def test_no_positive_edges(self):
        g = Graph.from_edges(3, [], np.eye(3))
        view = GraphView.of(g)
        with pytest.raises(ContractError, match="AAllvu"):
            supervision_pairs(preset("gae").view, g, view, view)


class TestLeftRight:
    def test_layer_zero_right_is_raw_features(self, small_graph, model):
        encoder, store = model
        view = GraphView.of(small_graph)
        stack = encoder.encode(view, store)
        spec = spec_for(True, False, True).model_copy(update={"r": 0})
        batch = supervision_pairs(spec, small_graph, view, view)
        decoder = Decoder(DecoderConfig(kind="dot"), in_dim=4)
        contrast = left_right(spec, stack, stack, batch, decoder, store)
        np.testing.assert_array_equal(contrast.right.data, small_graph.features.data)

    def test_degenerate_case_is_identity_and_zero_loss(self, small_graph, model):
        encoder, store = model
        view = GraphView.of(small_graph)
        stack = encoder.encode(view, store)
        spec = spec_for(True, True, True)
        assert case_of(spec) == 1
        batch = supervision_pairs(spec, small_graph, view, view)
        decoder = Decoder(DecoderConfig(kind="dot"), in_dim=4)
        contrast = left_right(spec, stack, stack, batch, decoder, store)
        np.testing.assert_array_equal(contrast.left.data, contrast.right.data)
        assert mse_feature_loss(contrast.left, contrast.right).item() == 0.0

    def test_graphmae_targets_are_original_features(self, small_graph, model):
        encoder, store = model
        token = store.add_zeros("mask_token", 1, 3)
        view_a = feature_mask(small_graph, 1.0, token, np.random.default_rng(0))
        view_b = GraphView.of(small_graph)
        p = preset("graphmae")
        spec = p.view.resolve(K)
        batch = supervision_pairs(spec, small_graph, view_a, view_b)
        decoder = Decoder(p.decoder, in_dim=4, target_dim=3)
        decoder.init_params(store, np.random.default_rng(2))
        contrast = left_right(spec, encoder.encode(view_a, store), encoder.encode(view_b, store),
                              batch, decoder, store)
        np.testing.assert_array_equal(contrast.right.data, small_graph.features.data[batch.right_nodes])
        assert contrast.left.shape == contrast.right.shape

    def test_uncomputed_layer(self, small_graph, model):
        encoder, store = model
        view = GraphView.of(small_graph)
        partial = encoder.encode(view, store, upto=1)
        spec = spec_for(True, True, True)
        batch = supervision_pairs(spec, small_graph, view, view)
        with pytest.raises(ContractError):
            left_right(spec, partial, partial, batch, Decoder(DecoderConfig(), in_dim=4), store)

    def test_negatives_are_gathered(self, small_graph, model):
        encoder, store = model
        view = GraphView.of(small_graph)
        stack = encoder.encode(view, store)
        spec = preset("gae").view.resolve(K)
        batch = supervision_pairs(spec, small_graph, view, view, rng=np.random.default_rng(0),
                                  sampler=UniformSampler(), neg_count=5)
        contrast = left_right(spec, stack, stack, batch, Decoder(DecoderConfig(), in_dim=4), store)
        assert contrast.neg_left.shape == (5, 4)
        np.testing.assert_array_equal(contrast.neg_right.data, stack.layer(K).data[batch.neg_right])

    @pytest.mark.parametrize("stop", [True, False])
    def test_stop_gradient_blocks_right_branch(self, small_graph, model, stop):
        encoder, store = model
        token = store.add("mask_token", np.ones((1, 3)))
        view_a = GraphView.of(small_graph)
        view_b = feature_mask(small_graph, 1.0, token, np.random.default_rng(0))
        spec = ViewSpec(left_graph="A", right_graph="B", l=K, r=K, pair_mode="same_node",
                        stop_gradient_right=stop)
        batch = supervision_pairs(spec, small_graph, view_a, view_b)
        contrast = left_right(spec, encoder.encode(view_a, store), encoder.encode(view_b, store),
                              batch, Decoder(DecoderConfig(), in_dim=4), store)
        loss = ops.sum_all(ops.mul(contrast.left, contrast.right))
        grads = backward(loss, store.tensors())
        assert np.all(grads[token] == 0.0) == stop


class TestDecodeRight:
    def test_symmetric_loss_with_matching_decoder(self):
        decoder = Decoder(DecoderConfig(kind="mlp_feature"), in_dim=4, target_dim=4)
        assert resolve_decode_right(ViewSpec(pair_mode="same_node"), "infonce", decoder, 4)

    def test_asymmetric_loss_leaves_right_raw(self):
        decoder = Decoder(DecoderConfig(kind="mlp_feature"), in_dim=4, target_dim=3)
        assert not resolve_decode_right(ViewSpec(pair_mode="same_node", r=0), "sce", decoder, 3)

    def test_explicit_flag_must_fit(self):
        decoder = Decoder(DecoderConfig(kind="mlp_feature"), in_dim=4, target_dim=3)
        with pytest.raises(ConfigError, match="decode_right"):
            resolve_decode_right(ViewSpec(r=0, decode_right=True), "infonce", decoder, 3)

    def test_decoded_right_goes_through_decoder(self, small_graph, model):
        encoder, store = model
        decoder = Decoder(DecoderConfig(kind="mlp_feature"), in_dim=4, target_dim=4)
        decoder.init_params(store, np.random.default_rng(3))
        view = GraphView.of(small_graph)
        stack = encoder.encode(view, store)
        spec = spec_for(False, True, True)
        batch = supervision_pairs(spec, small_graph, view, view)
        contrast = left_right(spec, stack, stack, batch, decoder, store, decode_right=True)
        # identical views and layers: decoding both sides gives equal rows
        np.testing.assert_array_equal(contrast.left.data, contrast.right.data)
        loss = evaluate_objective(LossConfig(kind="infonce"), contrast, decoder, store)
        assert np.isfinite(loss.item())

    def test_dimension_mismatch(self):
        decoder = Decoder(DecoderConfig(kind="mlp_feature"), in_dim=4, target_dim=5)
        with pytest.raises(ConfigError):
            check_dimensions(ViewSpec(l=2, r=0, pair_mode="same_node"), decoder, 4, 3, False)
        check_dimensions(ViewSpec(l=2, r=0, pair_mode="same_node"), decoder, 4, 5, False)

    def test_edge_mlp_needs_equal_widths(self):
        decoder = Decoder(DecoderConfig(kind="mlp_edge"), in_dim=4)
        with pytest.raises(ConfigError):
            check_dimensions(ViewSpec(l=2, r=0), decoder, 4, 3, False)


def test_raw_tensor_right_side_is_detached_copy(small_graph):
    view = GraphView.of(small_graph)
    spec = ViewSpec(l=0, r=0, pair_mode="same_node", stop_gradient_right=True)
    x = Tensor(small_graph.features.data, requires_grad=True)
    stack = EmbeddingStack(layers=[x], num_layers=0)
    batch = supervision_pairs(spec, small_graph, view, view)
    contrast = left_right(spec, stack, stack, batch, Decoder(DecoderConfig(), in_dim=3), ParamStore())
    assert contrast.left.requires_grad
    assert not contrast.right.requires_grad
