import json

import numpy as np
import pytest
from pydantic import ValidationError

from apps.cli import (ExperimentConfig, ExperimentRunner, ResultReport, ablation_matrix, aggregate,
                      summarize)
from apps.cli import main as cli
from apps.core.exceptions import TrainingError
from apps.graph import load_graph
from apps.graph.schemas import SyntheticSpec
from apps.train import Trainer

SBM = {"blocks": 2, "sizes": [20, 20], "p_in": 0.5, "p_out": 0.05, "feature_dim": 8, "seed": 0}

CASE_ONE_MODEL = {
    "view": {"left_graph": "A", "right_graph": "A", "l": "k", "r": "k", "pair_mode": "same_node"},
    "decoder": {"kind": "mlp_feature"},
    "loss": {"kind": "mse"},
}


def experiment(**overrides):
    config = {
        "dataset": {"synthetic": SBM, "name": "sbm40"},
        "preset": "gae",
        "encoder": {"num_layers": 2, "hidden_dim": 16, "keep_prob": 1.0},
        "train": {"epochs": 5},
        "eval": {"probe": {"epochs": 10}},
        "seeds": [0, 1],
    }
    config.update(overrides)
    return {k: v for k, v in config.items() if v is not None}


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture(autouse=True)
def quiet_logging(monkeypatch):
    monkeypatch.setattr(cli, "configure_logging", lambda settings: None)


def fake_report(label, dataset, values, metric="accuracy"):
    per_seed = [{"seed": i, "metrics": {metric: v}, "epochs": 1, "wall_clock_s": 0.0}
                for i, v in enumerate(values)]
    return ResultReport(config={}, per_seed=per_seed, aggregate=aggregate(per_seed), label=label,
                        dataset=dataset, task="node_classification")


class TestExperimentConfig:
    def test_preset_and_model_are_exclusive(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate(experiment(model=CASE_ONE_MODEL))
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate(experiment(preset=None))

    def test_case_one_names_view_field(self):
        with pytest.raises(ValidationError) as exc:
            ExperimentConfig.model_validate(experiment(preset=None, model=CASE_ONE_MODEL))
        assert "model.view" in str(exc.value)
        assert "not applicable" in str(exc.value)

    def test_loss_pair_mode_mismatch(self):
        model = {"view": {"left_graph": "A", "right_graph": "B", "pair_mode": "same_node"},
                 "loss": {"kind": "bce"}}
        with pytest.raises(ValidationError, match="model.loss.kind"):
            ExperimentConfig.model_validate(experiment(preset=None, model=model))

    def test_unknown_preset_and_duplicate_seeds(self):
        with pytest.raises(ValidationError, match="unknown preset"):
            ExperimentConfig.model_validate(experiment(preset="vgae"))
        with pytest.raises(ValidationError, match="distinct"):
            ExperimentConfig.model_validate(experiment(seeds=[1, 1]))

    def test_dataset_needs_one_source(self, tmp_path):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate(experiment(dataset={"path": str(tmp_path), "synthetic": SBM}))

    def test_default_seeds(self):
        config = experiment()
        del config["seeds"]
        assert ExperimentConfig.model_validate(config).seeds == list(range(10))

    def test_labels(self):
        assert ExperimentConfig.model_validate(experiment()).label == "gae"
        model = {"view": {"left_graph": "A", "right_graph": "B", "r": "k-1", "pair_mode": "edge_pair"}}
        custom = ExperimentConfig.model_validate(experiment(preset=None, model=model))
        assert custom.label == "custom-ABlrvu"


class TestRun:
    def test_two_seeds(self, tmp_path):
        config = write_json(tmp_path / "gae.json", experiment())
        out = tmp_path / "out.json"
        assert cli.main(["run", config, "--output", str(out)]) == 0

        report = json.loads(out.read_text())
        assert [entry["seed"] for entry in report["per_seed"]] == [0, 1]
        values = [entry["metrics"]["accuracy"] for entry in report["per_seed"]]
        assert report["aggregate"]["accuracy"]["mean"] == pytest.approx(np.mean(values))
        assert report["aggregate"]["accuracy"]["std"] == pytest.approx(np.std(values))
        assert report["std"] == "population"
        assert all(entry["epochs"] == 5 for entry in report["per_seed"])
        assert {"python", "numpy", "scipy", "pandas"} <= set(report["versions"])

    def test_default_output_path(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        config = write_json(tmp_path / "small.json", experiment(seeds=[0]))
        assert cli.main(["run", config]) == 0
        assert (tmp_path / "results" / "small.json").is_file()

    def test_case_one_exits_2(self, tmp_path, capsys):
        config = write_json(tmp_path / "c1.json", experiment(preset=None, model=CASE_ONE_MODEL))
        assert cli.main(["run", config]) == 2
        err = capsys.readouterr().err
        assert "not applicable" in err
        assert "model.view" in err

    def test_unknown_key_names_field(self, tmp_path, capsys):
        config = write_json(tmp_path / "typo.json", experiment(train={"epoch": 5}))
        assert cli.main(["run", config]) == 2
        assert "train.epoch" in capsys.readouterr().err

    def test_repeated_runs_have_identical_bodies(self, tmp_path):
        config = write_json(tmp_path / "gae.json", experiment())
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert cli.main(["run", config, "-o", str(first)]) == 0
        assert cli.main(["run", config, "-o", str(second)]) == 0
        assert ResultReport.load(first).body() == ResultReport.load(second).body()

    def test_snapshot_reproduces_metrics(self):
        report = ExperimentRunner(ExperimentConfig.model_validate(experiment())).run()
        again = ExperimentRunner(ExperimentConfig.model_validate(report.config)).run()
        assert [e["metrics"] for e in again.per_seed] == [e["metrics"] for e in report.per_seed]

    def test_parallel_seeds_keep_order(self):
        config = ExperimentConfig.model_validate(experiment(seeds=[2, 0, 1]))
        sequential = ExperimentRunner(config, max_workers=1).run()
        parallel = ExperimentRunner(config, max_workers=3).run()
        assert [e["seed"] for e in parallel.per_seed] == [0, 1, 2]
        assert parallel.body() == sequential.body()

    def test_link_prediction(self):
        report = ExperimentRunner(ExperimentConfig.model_validate(
            experiment(task="link_prediction", seeds=[0]))).run()
        metrics = report.per_seed[0]["metrics"]
        assert set(metrics) == {"auc", "ap"}
        assert all(0.0 <= v <= 1.0 for v in metrics.values())

    def test_clustering(self):
        report = ExperimentRunner(ExperimentConfig.model_validate(
            experiment(task="clustering", seeds=[0], eval={"kmeans_restarts": 2}))).run()
        assert 0.0 <= report.per_seed[0]["metrics"]["nmi"] <= 1.0

    def test_unlabelled_dataset_exits_2(self, tmp_path, dataset_dir, capsys):
        root = dataset_dir(edges="0\t1\n1\t2\n", features="1.0\n2.0\n3.0\n")
        config = write_json(tmp_path / "nolabels.json", experiment(dataset={"path": str(root)}))
        assert cli.main(["run", config]) == 2
        assert "task" in capsys.readouterr().err

    def test_training_failure_exits_1_with_context(self, tmp_path, monkeypatch, capsys):
        def diverge(self, *args, **kwargs):
            raise TrainingError("non-finite loss nan at epoch 3", epoch=3)

        monkeypatch.setattr(Trainer, "fit", diverge)
        config = write_json(tmp_path / "gae.json", experiment(seeds=[4]))
        assert cli.main(["run", config]) == 1
        assert "seed 4, epoch 3" in capsys.readouterr().err

    def test_missing_config_exits_1(self, tmp_path):
        assert cli.main(["run", str(tmp_path / "absent.json")]) == 1


class TestGen:
    def test_writes_dataset_that_round_trips(self, tmp_path):
        spec = {"blocks": 2, "sizes": [50, 50], "p_in": 0.3, "p_out": 0.02, "seed": 3}
        out = tmp_path / "sbm"
        assert cli.main(["gen", write_json(tmp_path / "spec.json", spec), str(out)]) == 0
        assert {p.name for p in out.iterdir()} == {"edges.tsv", "features.csv", "labels.csv"}
        assert load_graph(out).same_as(SyntheticSpec(**spec).build())

    def test_p_out_above_p_in_exits_2(self, tmp_path, capsys):
        spec = {"blocks": 2, "sizes": [10, 10], "p_in": 0.1, "p_out": 0.5}
        assert cli.main(["gen", write_json(tmp_path / "spec.json", spec), str(tmp_path / "x")]) == 2
        assert "p_out" in capsys.readouterr().err
        assert not (tmp_path / "x").exists()


class TestReport:
    def test_mean_std_cell(self):
        table = summarize([fake_report("lrgae7", "cora", [0.96, 0.97])])
        assert table.loc[("cora", "lrgae7"), "accuracy"] == "96.5±0.5"

    def test_two_runs_of_one_preset_pool_into_one_row(self):
        table = summarize([fake_report("gae", "cora", [0.96]), fake_report("gae", "cora", [0.97])])
        assert len(table) == 1
        assert table.iloc[0]["accuracy"] == "96.5±0.5"

    def test_mixed_datasets_get_a_row_each(self):
        table = summarize([fake_report("gae", "cora", [0.8]), fake_report("gae", "citeseer", [0.7])])
        assert sorted(table.index.get_level_values("dataset")) == ["citeseer", "cora"]

    def test_command_prints_table_and_csv(self, tmp_path, capsys):
        fake_report("gae", "cora", [0.96, 0.97]).write(tmp_path / "r1.json")
        fake_report("maskgae", "cora", [0.5, 0.7], metric="auc").write(tmp_path / "r2.json")
        csv = tmp_path / "table.csv"
        assert cli.main(["report", str(tmp_path / "*.json"), "--csv", str(csv)]) == 0
        out = capsys.readouterr().out
        assert "96.5±0.5" in out
        assert "60.0±10.0" in out
        assert "maskgae" in csv.read_text()

    def test_no_files_exits_2(self, tmp_path):
        assert cli.main(["report", str(tmp_path / "*.json")]) == 2

    @pytest.mark.parametrize("content", ["{not json", "[1, 2]", '{"label": "gae"}'])
    def test_malformed_result_exits_2(self, tmp_path, capsys, content):
        fake_report("gae", "cora", [0.9]).write(tmp_path / "good.json")
        (tmp_path / "bad.json").write_text(content)
        assert cli.main(["report", str(tmp_path / "*.json")]) == 2
        assert "bad.json" in capsys.readouterr().err


class TestAblationMatrix:
    def test_encoder_architectures_for_lrgae_presets(self):
        matrix = dict(ablation_matrix("data/sbm", "node_classification", 10, [0, 1]))
        for name in ("lrgae6", "lrgae7", "lrgae8"):
            for arch in ("gcn", "sage", "gat"):
                config = ExperimentConfig.model_validate(matrix[f"{name}_{arch}"])
                assert config.preset == name
                assert config.encoder.arch == arch

    def test_covers_losses_samplers_and_maskings(self):
        stems = [stem for stem, _ in ablation_matrix("data/sbm", "link_prediction", 10, [0])]
        assert len(stems) == len(set(stems))
        assert {"lrgae7_bce_uniform", "lrgae7_bce_degree", "lrgae7_bce_similarity"} <= set(stems)
        assert {"lrgae7_edge_mask", "lrgae7_path_mask", "lrgae7_node_mask"} <= set(stems)
        assert "gcl_infonce_uniform" in stems
