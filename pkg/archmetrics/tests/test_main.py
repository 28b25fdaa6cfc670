import csv
import io
import json
import pathlib

import pytest
from click.testing import CliRunner, Result

from archmetrics import settings
from archmetrics.errors import ArchMetricsError
from archmetrics.graph.serialization import parse_graph, serialize_graph
from archmetrics.main import _write_csv, main
from archmetrics.zoo.builders import build_autoencoder

CYCLE = {
    "name": "loop",
    "input_shape": [4],
    "nodes": [
        {"id": "input", "kind": "input", "params": {}, "inputs": []},
        {"id": "a", "kind": "add", "params": {}, "inputs": ["input", "b"]},
        {"id": "b", "kind": "dense", "params": {"units": 4}, "inputs": ["a"]},
    ],
}


def run(*args: str) -> Result:
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def rows(text: str) -> list:
    return list(csv.reader(io.StringIO(text)))


@pytest.fixture
def autoencoder_file(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "autoencoder.json"
    path.write_text(serialize_graph(build_autoencoder([8, 8, 8])))
    return path


class TestAnalyze:
    def test_prints_global_metrics(self, autoencoder_file: pathlib.Path) -> None:
        """Verify that analyze prints the metrics of a graph file as JSON."""
        result = run("analyze", str(autoencoder_file))
        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["gcip"] == 1.0
        assert document["gsc"] == 12.0
        assert document["complexity_mode"] == "multiplicative"

    def test_writes_curves(
        self, autoencoder_file: pathlib.Path, tmp_path: pathlib.Path
    ) -> None:
        out = tmp_path / "curves.csv"
        result = run("analyze", str(autoencoder_file), "-o", str(out))
        assert result.exit_code == 0
        table = rows(out.read_text())
        assert table[0] == [
            "node_id",
            "depth",
            "kind",
            "p_local",
            "c_local",
            "P_cum",
            "log2_C_cum",
        ]
        assert [row[0] for row in table[1:]] == [
            "input",
            "dense1",
            "act1",
            "dense2",
            "act2",
        ]

    def test_top_level_flags(self, autoencoder_file: pathlib.Path) -> None:
        """Verify that the propagation flags reach the analysis."""
        result = run(
            "--complexity-mode", "additive", "analyze", str(autoencoder_file)
        )
        document = json.loads(result.output)
        assert document["complexity_mode"] == "additive"
        assert document["log2_gcc"] == document["gsc"] == 12.0

    def test_cycle_is_reported(self, tmp_path: pathlib.Path) -> None:
        """Verify that an invalid graph exits with 3 and lists the violations."""
        path = tmp_path / "loop.json"
        path.write_text(json.dumps(CYCLE))
        result = run("analyze", str(path))
        assert result.exit_code == 3
        assert "cycle" in result.output

    def test_malformed_json(self, tmp_path: pathlib.Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{")
        result = run("analyze", str(path))
        assert result.exit_code == 3
        assert "Error:" in result.output

    def test_missing_file(self, tmp_path: pathlib.Path) -> None:
        result = run("analyze", str(tmp_path / "nope.json"))
        assert result.exit_code == 2


class TestCompare:
    def test_csv(self) -> None:
        result = run("compare", "ResNet-18", "mlp", "-w", "2")
        assert result.exit_code == 0
        table = rows(result.output)
        assert table[0] == ["model", "gcip", "log2_gcc", "gsc", "log2_gwc", "params"]
        assert [row[0] for row in table[1:]] == ["resnet18", "mlp"]
        assert table[1][5] == "11689512"

    def test_json(self) -> None:
        result = run("compare", "autoencoder", "-f", "json")
        (row,) = json.loads(result.output)
        assert row["model"] == "autoencoder"
        assert row["gcip"] == pytest.approx(1.0)

    def test_text(self) -> None:
        result = run("compare", "mlp", "vgg11", "-f", "text")
        assert result.exit_code == 0
        assert "vgg11" in result.output
        assert "log2_gcc" in result.output

    def test_unknown_model(self) -> None:
        result = run("compare", "resnet18", "alexnet")
        assert result.exit_code == 3
        assert "alexnet" in result.output

    def test_output_is_deterministic(self) -> None:
        first = run("compare", "vgg11", "resnet18", "mlp", "-w", "3")
        second = run("compare", "vgg11", "resnet18", "mlp", "-w", "1")
        assert first.output == second.output


class TestZoo:
    def test_build_round_trips(self) -> None:
        result = run("zoo", "build", "ResNet-18")
        assert result.exit_code == 0
        assert len(parse_graph(result.output)) == 76

    def test_build_to_file(self, tmp_path: pathlib.Path) -> None:
        out = tmp_path / "vgg.json"
        assert run("zoo", "build", "vgg11", "-o", str(out)).exit_code == 0
        assert parse_graph(out.read_text()).name == "vgg11"

    def test_list(self) -> None:
        names = run("zoo", "list").output.split()
        assert {"mlp", "resnet152", "vgg19_bn", "plainnet18"} <= set(names)

    def test_manifest(self) -> None:
        table = rows(run("zoo", "manifest").output)
        assert table[0] == ["model", "family", "source", "top1", "top5", "params"]
        assert len(table) > 100
        built = rows(run("zoo", "manifest", "--built-only").output)
        assert 1 < len(built) < len(table)

    def test_unknown(self) -> None:
        assert run("zoo", "build", "lenet").exit_code == 3


class TestEstimate:
    def test_activation(self) -> None:
        result = run(
            "--seed", "3", "estimate", "activation", "--fn", "tanh", "-n", "50000"
        )
        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["fn"] == "tanh"
        assert document["estimate"] == pytest.approx(document["oracle"], abs=1e-2)
        assert document["n_samples"] == 50000

    def test_activation_is_reproducible(self) -> None:
        args = ("--seed", "5", "estimate", "activation", "-n", "20000")
        assert run(*args).output == run(*args).output

    def test_too_few_samples(self) -> None:
        result = run("estimate", "activation", "-n", "10")
        assert result.exit_code == 4

    def test_softmax(self) -> None:
        result = run("estimate", "softmax", "--len", "1000", "--trials", "20")
        document = json.loads(result.output)
        assert document["vector_len"] == 1000
        assert document["oracle"] == pytest.approx(1.3108e-3, rel=1e-3)

    def test_boxfilter(self) -> None:
        result = run(
            "estimate", "boxfilter", "--len", "400", "--vectors", "2", "--k-max", "4"
        )
        table = rows(result.output)
        assert table[0] == ["K", "var_ratio", "p_formula"]
        assert [row[0] for row in table[1:]] == ["1", "2", "3", "4"]

    def test_sweep(self, tmp_path: pathlib.Path) -> None:
        out = tmp_path / "sweep.csv"
        result = run(
            "estimate", "sweep", "--fn", "linear", "-n", "5000", "-o", str(out)
        )
        assert result.exit_code == 0
        table = rows(out.read_text())
        assert table[0] == ["input_var", "output_var"]
        assert len(table) == 17


class TestFit:
    def test_points_file(self, tmp_path: pathlib.Path) -> None:
        """Verify a fit through user-supplied points."""
        path = tmp_path / "points.csv"
        path.write_text("x,y\n1,2\n4,4\n16,8\n")
        document = json.loads(run("fit", "--points", str(path)).output)
        assert document["a"] == pytest.approx(2.0)
        assert document["b"] == pytest.approx(0.5)
        assert document["spearman"] == pytest.approx(1.0)
        assert document["x_metric"] is None

    def test_bad_points_file(self, tmp_path: pathlib.Path) -> None:
        path = tmp_path / "points.csv"
        path.write_text("a,b\n1,2\n")
        assert run("fit", "--points", str(path)).exit_code == 4

    def test_flat_points_report_null_spearman(self, tmp_path: pathlib.Path) -> None:
        """Verify that an undefined rank correlation is written as JSON null."""
        path = tmp_path / "points.csv"
        path.write_text("x,y\n1,3\n4,3\n16,3\n")
        result = run("fit", "--points", str(path))
        assert result.exit_code == 0
        assert "NaN" not in result.output
        document = json.loads(result.output)
        assert document["spearman"] is None
        assert document["b"] == pytest.approx(0.0)

    def test_manifest_fit(self, tmp_path: pathlib.Path) -> None:
        out = tmp_path / "points.csv"
        result = run("fit", "--x-metric", "log2_gcc", "-o", str(out), "-w", "2")
        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["x_metric"] == "log2_gcc"
        assert document["y_metric"] == "top1"
        table = rows(out.read_text())
        assert table[0] == ["model", "source", "key", "log2_x", "y"]
        assert len(table) - 1 == document["n_points"]


class TestVc:
    def test_single_bound(self) -> None:
        document = json.loads(run("vc", "--weights", "2", "--layers", "1").output)
        assert document == {"weights": 2, "layers": 1, "vc_bound": 2.0}

    def test_needs_arguments(self) -> None:
        assert run("vc", "--weights", "2").exit_code == 2

    def test_bad_weights(self) -> None:
        assert run("vc", "--weights", "1", "--layers", "1").exit_code == 1

    def test_sweep(self) -> None:
        table = rows(run("vc", "--sweep").output)
        assert table[0] == [
            "width",
            "layers",
            "params",
            "vc_bound",
            "log2_gcc",
            "ratio",
        ]
        assert len(table) == 1 + 7 * 4


def test_constants_override(tmp_path: pathlib.Path) -> None:
    """Verify that --constants changes the activation table used by analyze."""
    graph = tmp_path / "mlp.json"
    run("zoo", "build", "mlp", "-o", str(graph))
    constants = tmp_path / "constants.json"
    constants.write_text(json.dumps({"relu": {"p": 0.5, "c": 2.0}}))
    default = json.loads(run("analyze", str(graph)).output)
    overridden = json.loads(
        run("--constants", str(constants), "analyze", str(graph)).output
    )
    assert overridden["gcip"] == pytest.approx(default["gcip"] / 0.584 * 0.5)


def test_bad_constants_file(tmp_path: pathlib.Path) -> None:
    constants = tmp_path / "constants.json"
    constants.write_text("[]")
    assert run("--constants", str(constants), "zoo", "list").exit_code == 2


def test_version() -> None:
    assert "archmetrics" in run("--version").output


def test_selfcheck_uses_testing_settings(mocker, monkeypatch) -> None:  # noqa: ANN001
    """Verify that selfcheck re-routes settings before handing over to pytest."""
    monkeypatch.setenv("ARCHMETRICS_ENVIRONMENT", "base")
    monkeypatch.setattr(settings, "ENVIRONMENT", "base")
    pytest_main = mocker.patch("pytest.main", return_value=0)
    result = run("selfcheck")
    assert result.exit_code == 0
    assert settings.ENVIRONMENT == "testing"
    (args,), _ = pytest_main.call_args
    assert args[0] == "-x"
    assert args[-1] == "-qq"


def test_bad_table_leaves_no_file(tmp_path: pathlib.Path) -> None:
    out = tmp_path / "table.csv"
    with pytest.raises(ArchMetricsError):
        _write_csv([("a", 1), ("b",)], ("name", "value"), str(out))
    assert not out.exists()


def test_power_underflow_exits_with_4(tmp_path: pathlib.Path) -> None:
    graph = tmp_path / "relus.json"
    graph.write_text(
        json.dumps(
            {
                "name": "relus",
                "input_shape": [4],
                "nodes": [
                    {"id": "input", "kind": "input", "params": {}, "inputs": []},
                    {
                        "id": "a",
                        "kind": "activation",
                        "params": {"fn": "relu"},
                        "inputs": ["input"],
                    },
                    {
                        "id": "b",
                        "kind": "activation",
                        "params": {"fn": "relu"},
                        "inputs": ["a"],
                    },
                ],
            }
        )
    )
    constants = tmp_path / "constants.json"
    constants.write_text(json.dumps({"relu": {"p": 1e-200, "c": 1e200}}))
    result = run("--constants", str(constants), "analyze", str(graph))
    assert result.exit_code == 4
    assert "node b" in result.output
