import json

import pytest

from dtwmean import Dataset, cost, save_dataset
from dtwmean.cli import main

from conftest import random_dataset, seq


def run_cli(capsys, *argv) -> tuple[int, dict | None]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def strip_timing(report):
    if isinstance(report, dict):
        return {
            k: strip_timing(v) for k, v in report.items() if k != "runtime_ms"
        }
    if isinstance(report, list):
        return [strip_timing(v) for v in report]
    return report


@pytest.fixture
def dataset_path(tmp_path, rng):
    T = random_dataset(rng, n=5, max_len=3, min_len=2, lo=0.0, hi=3.0)
    path = tmp_path / "data.json"
    save_dataset(T, path)
    return str(path)


class TestCommands:
    def test_dtw(self, capsys, dataset_path):
        code, rep = run_cli(capsys, "dtw", "--input", dataset_path, "--p", "1")
        assert code == 0
        assert rep["result"]["distance"] >= 0
        assert rep["result"]["warping"][0] == [1, 1]

    def test_simplify(self, capsys, dataset_path):
        code, rep = run_cli(
            capsys, "simplify", "--input", dataset_path, "--ell", "2", "--p", "1"
        )
        assert code == 0
        assert len(rep["result"]["sequences"]) == 5

    @pytest.mark.parametrize("algo", ["sample", "net", "refine", "dba"])
    def test_mean_algos_cost_recomputable(self, capsys, dataset_path, algo):
        code, rep = run_cli(
            capsys, "mean", "--input", dataset_path, "--algo", algo,
            "--p", "1", "--eps", "1", "--delta", "0.2", "--ell", "2", "--seed", "3",
        )
        assert code == 0
        T = Dataset([seq(*[v[0] for v in s]) for s in json.load(open(dataset_path))["sequences"]])
        obj = rep["objective"]
        recomputed = cost(T, rep["result"]["sequence"], obj["p"], obj["q"])
        assert abs(recomputed - rep["result"]["cost"]) <= 1e-9 * max(1.0, recomputed)

    def test_oracle_and_cluster(self, capsys, dataset_path):
        code, rep = run_cli(
            capsys, "oracle", "--input", dataset_path, "--p", "1", "--q", "1", "--ell", "2"
        )
        assert code == 0 and rep["result"]["mode"] == "line-1-1"
        code, rep = run_cli(
            capsys, "cluster", "--input", dataset_path, "--k", "2", "--beta", "8.5",
            "--p", "1", "--q", "1", "--ell", "2", "--seed", "1",
        )
        assert code == 0 and len(rep["result"]["centers"]) <= 2

    def test_oracle_clustering_mode(self, capsys, dataset_path):
        code, rep = run_cli(
            capsys, "oracle", "--input", dataset_path, "--p", "1", "--q", "1",
            "--ell", "2", "--k", "2",
        )
        assert code == 0
        assert len(rep["result"]["centers"]) <= 2

    def test_gen_writes_dataset(self, capsys, tmp_path, dataset_path):
        out = tmp_path / "gen.json"
        code, rep = run_cli(
            capsys, "gen", "--input", dataset_path, "--output", str(out),
            "--n", "4", "--noise", "0.0", "--resample", "2,3", "--seed", "5",
        )
        assert code == 0
        assert json.loads(out.read_text())["dimension"] == 1

    def test_bench_battery(self, capsys, dataset_path):
        code, rep = run_cli(
            capsys, "bench", "--input", dataset_path, "--p", "1",
            "--eps", "1", "--delta", "0.2", "--ell", "2", "--seed", "2",
        )
        assert code == 0
        algos = [r["algo"] for r in rep["runs"]]
        assert algos == ["sample", "net", "refine", "dba", "oracle"]
        for row in rep["runs"]:
            assert "result" in row
            if row["ratio"] is not None:
                assert row["ratio"] >= 1.0 - 1e-12

    def test_bench_explicit_runs_and_empty(self, capsys, tmp_path, dataset_path):
        batch = tmp_path / "batch.json"
        batch.write_text(json.dumps({"runs": [
            {"algo": "sample", "input": dataset_path, "p": 1.0, "seed": 4},
        ]}))
        code, rep = run_cli(capsys, "bench", "--input", str(batch))
        assert code == 0 and len(rep["runs"]) == 1

        empty = tmp_path / "empty.json"
        empty.write_text(json.dumps({"runs": []}))
        code, rep = run_cli(capsys, "bench", "--input", str(empty))
        assert code == 0 and rep["runs"] == []


class TestExitCodes:
    def test_validation_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        assert main(["mean", "--input", str(bad)]) == 2

    def test_capacity_error(self, capsys, tmp_path, rng):
        T = random_dataset(rng, n=6, max_len=8, min_len=8)
        path = tmp_path / "big.json"
        save_dataset(T, path)
        code = main(
            ["mean", "--input", str(path), "--algo", "sample", "--ell", "5",
             "--eps", "0.05", "--delta", "0.01"]
        )
        assert code == 3

    def test_io_error(self, capsys, tmp_path):
        assert main(["mean", "--input", str(tmp_path / "missing.json")]) == 4


class TestReproducibility:
    @pytest.mark.parametrize(
        "argv",
        [
            ["mean", "--algo", "sample", "--p", "1", "--seed", "11"],
            ["mean", "--algo", "refine", "--p", "1", "--eps", "1", "--seed", "11"],
            ["cluster", "--k", "2", "--beta", "8.5", "--p", "1", "--q", "1", "--seed", "11"],
            ["bench", "--p", "1", "--eps", "1", "--seed", "11"],
        ],
    )
    def test_same_seed_same_report(self, capsys, dataset_path, argv):
        code_a, rep_a = run_cli(capsys, *argv[:1], "--input", dataset_path, *argv[1:])
        code_b, rep_b = run_cli(capsys, *argv[:1], "--input", dataset_path, *argv[1:])
        assert code_a == code_b == 0
        assert strip_timing(rep_a) == strip_timing(rep_b)
