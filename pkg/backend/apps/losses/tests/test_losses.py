import logging

import numpy as np
import pytest

from apps.core.exceptions import ConfigError, ContractError, DimensionError
from apps.graph import Graph
from apps.losses import (DegreeSampler, LossConfig, NegSamplerConfig, SimilaritySampler,
                         UniformSampler, bce_edge_loss, build_sampler, evaluate_objective,
                         info_nce, mse_feature_loss, negative_sample, sce_loss, simcse)
from apps.nn import Decoder, DecoderConfig, ParamStore
from apps.tensor import Tensor
from apps.tensor.gradcheck import check_gradients
from apps.views import ContrastBatch


def param(rng, rows, cols):
    return Tensor(rng.uniform(-1.0, 1.0, size=(rows, cols)), requires_grad=True)


class TestBce:
    def test_zero_scores(self):
        loss = bce_edge_loss(Tensor([[0.0]]), Tensor([[0.0]]))
        assert loss.item() == pytest.approx(2 * np.log(2), abs=1e-12)

    def test_matches_naive_formula(self):
        rng = np.random.default_rng(0)
        pos, neg = rng.uniform(-5, 5, (7, 1)), rng.uniform(-5, 5, (9, 1))
        naive = (-np.log(1 / (1 + np.exp(-pos)))).mean() + (-np.log(1 - 1 / (1 + np.exp(-neg)))).mean()
        assert bce_edge_loss(Tensor(pos), Tensor(neg)).item() == pytest.approx(naive, abs=1e-9)

    def test_large_scores_stay_finite(self):
        loss = bce_edge_loss(Tensor([[-1000.0], [1000.0]]), Tensor([[1000.0], [-1000.0]]))
        assert np.isfinite(loss.item())
        assert loss.item() == pytest.approx(1000.0, rel=1e-9)

    def test_confident_correct_scores_near_zero(self):
        assert bce_edge_loss(Tensor([[40.0]]), Tensor([[-40.0]])).item() < 1e-15

    def test_empty_raises(self):
        with pytest.raises(ContractError):
            bce_edge_loss(Tensor(np.zeros((0, 1))), Tensor([[0.0]]))

    def test_gradients(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            pos = param(rng, int(rng.integers(1, 7)), 1)
            neg = param(rng, int(rng.integers(1, 7)), 1)
            assert check_gradients(lambda: bce_edge_loss(pos, neg), [pos, neg]) < 1e-6


class TestMse:
    def test_example(self):
        assert mse_feature_loss(Tensor([[1.0, 2.0]]), Tensor([[1.0, 4.0]])).item() == 2.0

    def test_coordinate_subset(self):
        loss = mse_feature_loss(Tensor([[1.0, 2.0]]), Tensor([[1.0, 4.0]]), np.array([[False, True]]))
        assert loss.item() == 4.0

    def test_identical_is_zero(self):
        x = Tensor(np.arange(6.0).reshape(2, 3))
        assert mse_feature_loss(x, x).item() == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            mse_feature_loss(Tensor.zeros(2, 3), Tensor.zeros(2, 2))

    def test_empty_coordinates(self):
        with pytest.raises(ContractError):
            mse_feature_loss(Tensor.zeros(1, 2), Tensor.zeros(1, 2), np.zeros((1, 2), dtype=bool))

    def test_gradients(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            rows, cols = int(rng.integers(1, 6)), int(rng.integers(1, 5))
            a, b = param(rng, rows, cols), param(rng, rows, cols)
            coords = rng.random((rows, cols)) < 0.7
            coords[0, 0] = True
            assert check_gradients(lambda: mse_feature_loss(a, b), [a, b]) < 1e-6
            assert check_gradients(lambda: mse_feature_loss(a, b, coords), [a, b]) < 1e-6


class TestSce:
    def test_identical_rows(self):
        x = Tensor([[1.0, 2.0], [-3.0, 0.5]])
        assert sce_loss(x, x).item() == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_and_opposite(self):
        assert sce_loss(Tensor([[1.0, 0.0]]), Tensor([[0.0, 3.0]])).item() == pytest.approx(1.0)
        assert sce_loss(Tensor([[1.0, 0.0]]), Tensor([[-2.0, 0.0]])).item() == pytest.approx(4.0)
        assert sce_loss(Tensor([[1.0, 0.0]]), Tensor([[-2.0, 0.0]]), gamma=1.0).item() == pytest.approx(2.0)

    def test_gamma_below_one(self):
        with pytest.raises(ContractError):
            sce_loss(Tensor([[1.0]]), Tensor([[1.0]]), gamma=0.5)

    def test_gradients(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            rows, cols = int(rng.integers(1, 6)), int(rng.integers(2, 5))
            a, b = param(rng, rows, cols), param(rng, rows, cols)
            gamma = float(rng.choice([1.0, 2.0, 3.0]))
            assert check_gradients(lambda: sce_loss(a, b, gamma), [a, b]) < 1e-6


class TestInfoNce:
    def test_identical_rows_give_log_m(self):
        for m in (2, 3, 7):
            x = Tensor(np.ones((m, 4)))
            assert info_nce(x, x, 1.0).item() == pytest.approx(np.log(m), abs=1e-12)

    def test_one_hot_rows(self):
        tau, m = 0.5, 4
        x = Tensor(np.eye(m))
        expected = np.log(np.exp(1 / tau) + (m - 1)) - 1 / tau
        assert info_nce(x, x, tau).item() == pytest.approx(expected, abs=1e-12)
        assert simcse(x, x, tau).item() == pytest.approx(expected, abs=1e-12)

    def test_never_negative(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            a, b = Tensor(rng.normal(size=(6, 3))), Tensor(rng.normal(size=(6, 3)))
            assert info_nce(a, b, 0.2).item() >= -1e-12

    def test_symmetric_in_arguments(self):
        rng = np.random.default_rng(5)
        a, b = Tensor(rng.normal(size=(5, 3))), Tensor(rng.normal(size=(5, 3)))
        assert info_nce(a, b).item() == pytest.approx(info_nce(b, a).item(), abs=1e-12)

    def test_needs_two_rows(self):
        with pytest.raises(ContractError):
            info_nce(Tensor([[1.0, 0.0]]), Tensor([[1.0, 0.0]]))

    def test_temperature_must_be_positive(self):
        x = Tensor(np.eye(2))
        with pytest.raises(ContractError):
            info_nce(x, x, 0.0)

    def test_gradients(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            rows, cols = int(rng.integers(2, 6)), int(rng.integers(2, 5))
            a, b = param(rng, rows, cols), param(rng, rows, cols)
            tau = float(rng.uniform(0.2, 1.0))
            assert check_gradients(lambda: info_nce(a, b, tau), [a, b]) < 1e-6
            assert check_gradients(lambda: simcse(a, b, tau), [a, b]) < 1e-6


class TestObjective:
    def test_bce_uses_decoder_scores(self):
        decoder = Decoder(DecoderConfig(kind="dot"), in_dim=2)
        contrast = ContrastBatch(left=Tensor([[1.0, 0.0]]), right=Tensor([[2.0, 0.0]]),
                                 neg_left=Tensor([[0.0, 1.0]]), neg_right=Tensor([[0.0, -1.0]]))
        loss = evaluate_objective(LossConfig(kind="bce"), contrast, decoder, ParamStore())
        expected = bce_edge_loss(Tensor([[2.0]]), Tensor([[-1.0]])).item()
        assert loss.item() == pytest.approx(expected, abs=1e-12)

    def test_bce_without_negatives(self):
        decoder = Decoder(DecoderConfig(kind="dot"), in_dim=1)
        contrast = ContrastBatch(left=Tensor([[1.0]]), right=Tensor([[1.0]]))
        with pytest.raises(ContractError):
            evaluate_objective(LossConfig(kind="bce"), contrast, decoder, ParamStore())

    @pytest.mark.parametrize("kind", ["mse", "sce", "infonce", "simcse"])
    def test_row_losses_dispatch(self, kind):
        rng = np.random.default_rng(7)
        left, right = Tensor(rng.normal(size=(4, 3))), Tensor(rng.normal(size=(4, 3)))
        direct = {"mse": lambda: mse_feature_loss(left, right), "sce": lambda: sce_loss(left, right, 2.0),
                  "infonce": lambda: info_nce(left, right, 0.5), "simcse": lambda: simcse(left, right, 0.5)}
        loss = evaluate_objective(LossConfig(kind=kind), ContrastBatch(left, right), None, None)
        assert loss.item() == direct[kind]().item()

    def test_loss_pair_modes(self):
        assert LossConfig(kind="bce").supports("edge_pair")
        assert not LossConfig(kind="bce").supports("same_node")
        assert not LossConfig(kind="mse").supports("edge_pair")
        assert LossConfig(kind="infonce").supports("edge_pair")


@pytest.fixture
def big_star():
    n = 101
    return Graph.from_edges(n, [(0, i) for i in range(1, n)], np.zeros((n, 1)))


class TestSamplers:
    def test_uniform_pairs_are_canonical(self, sbm_small):
        pairs = UniformSampler().sample(sbm_small, 500, np.random.default_rng(0))
        assert pairs.shape == (500, 2)
        assert np.all(pairs[:, 0] < pairs[:, 1])
        assert pairs.min() >= 0 and pairs.max() < sbm_small.n

    def test_same_seed_same_pairs(self, sbm_small):
        for strategy in ("uniform", "degree"):
            first = negative_sample(sbm_small, 50, strategy, np.random.default_rng(3))
            second = negative_sample(sbm_small, 50, strategy, np.random.default_rng(3))
            np.testing.assert_array_equal(first, second)

    def test_too_few_nodes(self):
        g = Graph.from_edges(1, [], np.zeros((1, 1)))
        with pytest.raises(ContractError):
            UniformSampler().sample(g, 1, np.random.default_rng(0))

    def test_degree_endpoints_favour_hub(self, big_star):
        draws = DegreeSampler().draw_endpoints(big_star, 20000, np.random.default_rng(0))
        assert 0.47 < np.mean(draws == 0) < 0.53

    def test_degree_pairs_have_no_self_loops(self, big_star):
        pairs = DegreeSampler().sample(big_star, 300, np.random.default_rng(1))
        assert np.all(pairs[:, 0] != pairs[:, 1])
        # the hub sits in about three quarters of pairs
        assert np.mean(pairs[:, 0] == 0) > 0.5

    def test_degree_falls_back_without_edges(self, caplog):
        g = Graph.from_edges(4, [], np.zeros((4, 1)))
        with caplog.at_level(logging.WARNING):
            pairs = DegreeSampler().sample(g, 10, np.random.default_rng(0))
        assert pairs.shape == (10, 2)
        assert "using uniform" in caplog.text

    def test_similarity_prefers_dissimilar_pairs(self):
        g = Graph.from_edges(10, [], np.zeros((10, 1)))
        z = np.vstack([np.tile([1.0, 0.0], (5, 1)), np.tile([-1.0, 0.0], (5, 1))])
        pairs = SimilaritySampler().sample(g, 20, np.random.default_rng(0), z)
        assert pairs.shape == (20, 2)
        assert np.all((pairs[:, 0] < 5) & (pairs[:, 1] >= 5))

    def test_similarity_identical_embeddings_fill_uniformly(self, caplog):
        g = Graph.from_edges(12, [], np.zeros((12, 1)))
        z = np.ones((12, 4))
        with caplog.at_level(logging.WARNING):
            pairs = SimilaritySampler().sample(g, 20, np.random.default_rng(5), z)
        assert pairs.shape == (20, 2)
        assert np.all(pairs[:, 0] < pairs[:, 1])
        assert pairs.min() >= 0 and pairs.max() < g.n
        assert not g.has_edges(pairs).any()
        assert "kept 0/20, filling 20 uniformly" in caplog.text
        again = SimilaritySampler().sample(g, 20, np.random.default_rng(5), z)
        np.testing.assert_array_equal(pairs, again)

    def test_similarity_needs_embeddings(self, sbm_small):
        with pytest.raises(ContractError):
            SimilaritySampler().sample(sbm_small, 5, np.random.default_rng(0))

    def test_build_sampler(self):
        assert isinstance(build_sampler(NegSamplerConfig(strategy="degree")), DegreeSampler)
        assert build_sampler(NegSamplerConfig()).get_strategy() == "uniform"

    def test_unknown_strategy(self):
        with pytest.raises(ConfigError):
            build_sampler(NegSamplerConfig.model_construct(strategy="hard", multiplier=1))
