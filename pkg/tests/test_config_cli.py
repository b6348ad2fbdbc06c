import json
import subprocess
import sys

import numpy as np
import pytest

from hybridconsensus.config import PAPER_H, PAPER_X0, build_schedule, build_system, load_config
from hybridconsensus.errors import DimensionMismatch, ParseError, UnknownCase


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "hybridconsensus", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def write_cfg(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


SMALL_GRAPH = "n 2\n1 2 1.0\n2 1 1.0\n"


class TestLoadConfig:
    def test_minimal_config_defaults(self, tmp_path):
        (tmp_path / "g.edges").write_text(SMALL_GRAPH)
        cfg = load_config(write_cfg(tmp_path, "graph = g.edges\ncase = 1\nm = 1\nh = 0.2\nx0 = 0, 1\n"))
        assert cfg.dense_per_step == 10
        assert cfg.tol == 1e-8
        assert cfg.trials == 1000
        assert cfg.probs == "uniform"
        np.testing.assert_array_equal(cfg.x0, [0.0, 1.0])

    def test_paper_preset(self, tmp_path, presets_dir):
        cfg = load_config(presets_dir / "example1.cfg")
        np.testing.assert_array_equal(cfg.x0, PAPER_X0)
        assert cfg.h == PAPER_H
        assert cfg.graph.n == 6

    def test_paper_preset_requires_six_vertices(self, tmp_path):
        (tmp_path / "g.edges").write_text(SMALL_GRAPH)
        with pytest.raises(DimensionMismatch):
            load_config(write_cfg(tmp_path, "graph = g.edges\ncase = 1\nm = 1\nx0 = paper\n"))

    def test_x0_length_mismatch(self, tmp_path):
        (tmp_path / "g.edges").write_text(SMALL_GRAPH)
        with pytest.raises(DimensionMismatch):
            load_config(
                write_cfg(tmp_path, "graph = g.edges\ncase = 1\nm = 1\nh = 0.1\nx0 = 0, 1, 2\n")
            )

    def test_unknown_case(self, tmp_path):
        (tmp_path / "g.edges").write_text(SMALL_GRAPH)
        with pytest.raises(UnknownCase):
            load_config(write_cfg(tmp_path, "graph = g.edges\ncase = 9\nm = 1\nh = 0.1\nx0 = 0, 1\n"))

    def test_unknown_key_rejected(self, tmp_path):
        (tmp_path / "g.edges").write_text(SMALL_GRAPH)
        with pytest.raises(ParseError):
            load_config(
                write_cfg(tmp_path, "graph = g.edges\ncase = 1\nm = 1\nh = 0.1\nx0 = 0, 1\nbogus = 3\n")
            )

    def test_explicit_probs(self, tmp_path):
        (tmp_path / "g.edges").write_text("n 3\n1 2 1.0\n2 1 1.0\n2 3 1.0\n3 2 1.0\n")
        cfg = load_config(
            write_cfg(
                tmp_path,
                "graph = g.edges\ncase = 3\nm = 1\nh = 0.2\nx0 = 0, 1, 2\nprobs = 0.25, 0.75\n",
            )
        )
        sched = build_schedule(cfg)
        np.testing.assert_allclose(sched.probs, [0.25, 0.75])
        build_system(cfg)


class TestCliExitCodes:
    def test_missing_config_is_io_error(self):
        assert run_cli("run", "/nonexistent/exp.cfg").returncode == 1

    def test_missing_graph_is_io_error(self, tmp_path):
        cfg = write_cfg(tmp_path, "graph = missing.edges\ncase = 1\nm = 1\nh = 0.1\nx0 = 0, 1\n")
        assert run_cli("run", str(cfg)).returncode == 1

    def test_h_over_bound_is_condition_error(self, tmp_path, presets_dir):
        result = run_cli("run", str(presets_dir / "example1.cfg"), "--h", "2.0", "--out", str(tmp_path))
        assert result.returncode == 2
        assert "bound_case1" in result.stderr

    def test_example1_run_exits_zero(self, tmp_path, presets_dir):
        result = run_cli("run", str(presets_dir / "example1.cfg"), "--out", str(tmp_path))
        assert result.returncode == 0, result.stderr
        verdict = json.loads((tmp_path / "verdict.json").read_text())
        assert verdict["converged"] and verdict["solvable"]

    def test_outdir_env_var(self, tmp_path, presets_dir):
        import os

        env = dict(os.environ, HYBRIDCONSENSUS_OUTDIR=str(tmp_path / "envout"))
        result = run_cli("run", str(presets_dir / "example1.cfg"), "--steps", "5", env=env)
        assert result.returncode == 2  # too few steps to converge -> mismatch
        assert (tmp_path / "envout" / "trajectory.csv").is_file()


class TestCliSubcommands:
    def test_bounds_output(self, presets_dir):
        result = run_cli("bounds", str(presets_dir / "example1.cfg"))
        assert result.returncode == 0
        assert "bound_case1 = 1.0" in result.stdout

    def test_check_reports_prediction(self, presets_dir):
        result = run_cli("check", str(presets_dir / "example1.cfg"))
        assert result.returncode == 0
        verdict = json.loads(result.stdout)
        assert verdict["solvable"]
        assert verdict["predicted_value"] == pytest.approx(-1 / 3, abs=1e-9)

    def test_matrix_dump_is_row_stochastic(self, presets_dir):
        result = run_cli("matrix", str(presets_dir / "example1.cfg"))
        rows = [list(map(float, line.split(","))) for line in result.stdout.strip().splitlines()]
        assert len(rows) == 6
        for row in rows:
            assert sum(row) == pytest.approx(1.0, abs=1e-12)

    def test_flag_overrides_config(self, presets_dir):
        result = run_cli("check", str(presets_dir / "example1.cfg"), "--h", "0.5")
        verdict = json.loads(result.stdout)
        assert verdict["config"]["h"] == 0.5


class TestDeterminism:
    def test_identical_runs_byte_identical(self, tmp_path, presets_dir):
        # gossip run: seeds drive the edge draws
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        for out in (out_a, out_b):
            result = run_cli(
                "run", str(presets_dir / "example3.cfg"),
                "--steps", "80", "--trials", "50", "--tol", "1.0", "--out", str(out),
            )
            assert result.returncode == 0, result.stderr
        assert (out_a / "trajectory.csv").read_bytes() == (out_b / "trajectory.csv").read_bytes()
