import csv
import json

import numpy as np
import pytest

from crlab import cli, selection


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def tiny_grid_file(tmp_path):
    spec = selection.GridSpec(
        input_weights=(0.1, 0.3),
        cycle_weights=(0.5, 0.9),
        jump_weights=(0.5,),
        reservoir_sizes=(20,),
        lambdas=(1e-7, 1e-3),
        leak_rates=(0.7, 1.0),
        jump_sizes=(2,),
        topologies_per_size={20: ["10-10"]},
        model_kinds=("SCR", "cjESN"),
    )
    path = tmp_path / "grid.json"
    path.write_text(spec.to_json())
    return str(path)


class TestEigen:
    def test_scr_circle(self, tmp_path):
        out = tmp_path / "eig.csv"
        assert cli.main(["eigen", "--topology", "100", "--wc", "0.5", "--out", str(out)]) == 0
        rows = read_csv(out)
        assert len(rows) == 100
        mags = [float(r["re"]) ** 2 + float(r["im"]) ** 2 for r in rows]
        assert np.allclose(mags, 0.25, atol=1e-8)
        assert (tmp_path / "eig.csv.manifest.json").exists()

    def test_two_cycle_magnitude_multiset(self, tmp_path):
        out = tmp_path / "eig.csv"
        assert cli.main([
            "eigen", "--topology", "40-60", "--wc", "0.9,0.5", "--out", str(out)
        ]) == 0
        mags = sorted(
            np.hypot(float(r["re"]), float(r["im"])) for r in read_csv(out)
        )
        assert np.allclose(mags, sorted([0.5] * 60 + [0.9] * 40), atol=1e-8)

    def test_jumps_leave_the_circles(self, tmp_path):
        out = tmp_path / "eig.csv"
        assert cli.main([
            "eigen", "--topology", "40-60", "--wc", "0.9,0.5",
            "--wj", "0.3", "--tau", "5", "--out", str(out)
        ]) == 0
        mags = np.array([
            np.hypot(float(r["re"]), float(r["im"])) for r in read_csv(out)
        ])
        off_both = (np.abs(mags - 0.9) > 1e-3) & (np.abs(mags - 0.5) > 1e-3)
        assert off_both.any()

    def test_invalid_topology_exits_nonzero(self, tmp_path, capsys):
        out = tmp_path / "eig.csv"
        assert cli.main(["eigen", "--topology", "abc", "--out", str(out)]) == 1
        assert "error:" in capsys.readouterr().err
        assert not out.exists()


class TestBench:
    def test_narma_smoke(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert cli.main([
            "bench", "--task", "narma", "--model", "SCR", "--topology", "100",
            "--wc", "0.9", "--alpha", "1.0", "--lambda", "1e-6",
            "--seed", "3", "--out", str(out)
        ]) == 0
        rows = read_csv(out)
        assert len(rows) == 1
        assert np.isfinite(float(rows[0]["valid_err"]))
        assert np.isfinite(float(rows[0]["test_err"]))
        manifest = json.loads((tmp_path / "bench.csv.manifest.json").read_text())
        assert manifest["command"] == "bench"
        assert manifest["config"]["data_provenance"] == "generated"

    def test_same_seed_identical_row(self, tmp_path):
        args = [
            "bench", "--task", "narma", "--model", "cjESN", "--topology", "50-50",
            "--wc", "0.9", "--wj", "0.5", "--tau", "5", "--seed", "3",
        ]
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli.main(args + ["--out", str(out_a)]) == 0
        assert cli.main(args + ["--out", str(out_b)]) == 0
        row_a, row_b = read_csv(out_a)[0], read_csv(out_b)[0]
        row_a.pop("wall_ms"), row_b.pop("wall_ms")
        assert row_a == row_b

    def test_file_task_missing_data(self, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        assert cli.main([
            "bench", "--task", "file", "--model", "SCR", "--topology", "100",
            "--out", str(out)
        ]) == 1
        assert "one value per line" in capsys.readouterr().err

    def test_file_task_runs(self, tmp_path):
        rng = np.random.default_rng(0)
        data = tmp_path / "laser.txt"
        data.write_text("\n".join(f"{x:.6f}" for x in rng.uniform(0, 255, 3000)))
        out = tmp_path / "bench.csv"
        assert cli.main([
            "bench", "--task", "file", "--data", str(data), "--model", "SCR",
            "--topology", "50", "--wc", "0.9", "--out", str(out)
        ]) == 0
        assert np.isfinite(float(read_csv(out)[0]["test_err"]))

    def test_missing_jump_flags_rejected(self, tmp_path):
        assert cli.main([
            "bench", "--model", "CRJ", "--topology", "100",
            "--out", str(tmp_path / "x.csv")
        ]) == 1


class TestMc:
    def test_structure_and_summary(self, tmp_path):
        out = tmp_path / "mc.csv"
        assert cli.main([
            "mc", "--model", "cjESN", "--topology", "20-30", "--wc", "0.9",
            "--wj", "0.5", "--tau", "5", "--kmax", "50",
            "--train-len", "2000", "--test-len", "500", "--out", str(out)
        ]) == 0
        rows = read_csv(out)
        assert [int(r["k"]) for r in rows] == list(range(1, 51))
        assert all(0.0 <= float(r["mc_k"]) <= 1.0 for r in rows)
        summary = json.loads((tmp_path / "mc.csv.summary.json").read_text())
        assert summary["total_mc"] == pytest.approx(
            sum(float(r["mc_k"]) for r in rows), abs=1e-9
        )

    def test_k_column_full_default_range(self, tmp_path):
        out = tmp_path / "mc.csv"
        assert cli.main([
            "mc", "--model", "SCR", "--topology", "30", "--wc", "0.9",
            "--out", str(out)
        ]) == 0
        assert [int(r["k"]) for r in read_csv(out)] == list(range(1, 201))


class TestGrid:
    def test_row_count_and_best(self, tmp_path):
        grid = tiny_grid_file(tmp_path)
        out = tmp_path / "grid.csv"
        assert cli.main([
            "grid", "--grid", grid, "--task", "narma", "--seed", "1",
            "--out", str(out)
        ]) == 0
        rows = read_csv(out)
        # SCR: 2*2*2*2 = 16, cjESN: same times single jump lists = 16
        assert len(rows) == 32
        best = json.loads((tmp_path / "grid.csv.best.json").read_text())
        assert best["config"]["model_kind"] in ("SCR", "cjESN")

    def test_worker_invariance(self, tmp_path):
        grid = tiny_grid_file(tmp_path)
        out1, out8 = tmp_path / "w1.csv", tmp_path / "w8.csv"
        for out, workers in ((out1, "1"), (out8, "8")):
            assert cli.main([
                "grid", "--grid", grid, "--task", "narma", "--seed", "1",
                "--workers", workers, "--out", str(out)
            ]) == 0
        strip = lambda rows: [
            {k: v for k, v in r.items() if k != "wall_ms"} for r in rows
        ]
        assert strip(read_csv(out1)) == strip(read_csv(out8))

    def test_malformed_grid_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"model_kinds": ["deepESN"]}')
        assert cli.main([
            "grid", "--grid", str(bad), "--out", str(tmp_path / "g.csv")
        ]) == 1
        assert "deepESN" in capsys.readouterr().err


def test_version_runs():
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
