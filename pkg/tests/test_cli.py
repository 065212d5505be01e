"""End-to-end command line checks.

Most tests drive ``tiecut.cli.main`` in-process for speed; exit-code
tests go through a real subprocess so argparse's own exits are
exercised too.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import DATA
from tiecut import read_graph
from tiecut.cli import main
from tiecut.datio import read_table
from tiecut.sweep import STATISTICS


def run(args):
    code = main([str(a) for a in args])
    assert code == 0
    return code


def table(path):
    return read_table(path)


class TestGenerate:
    def test_bare_invocation(self, tmp_path):
        out = tmp_path / "g"
        run(["generate", "--seed", "7", "--out", out])
        g = read_graph(out / "graph.tsv")
        assert g.n == 30  # documented default size
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "generate"
        assert manifest["seed"] == 7
        assert "graph.tsv" in manifest["outputs"]

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[generate]\nn = 12\nfamily = poisson\ndirected = true\n")
        out = tmp_path / "g"
        run(["generate", "--config", cfg, "--seed", "3", "--out", out])
        g = read_graph(out / "graph.tsv")
        assert g.n == 12 and g.directed and g.unit_label == "counts"

    def test_byte_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run(["generate", "--seed", "11", "--out", a])
        run(["generate", "--seed", "11", "--out", b])
        assert (a / "graph.tsv").read_bytes() == (b / "graph.tsv").read_bytes()
        assert (a / "manifest.json").read_bytes() == (b / "manifest.json").read_bytes()

    def test_seed_changes_graph(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run(["generate", "--seed", "1", "--out", a])
        run(["generate", "--seed", "2", "--out", b])
        assert (a / "graph.tsv").read_bytes() != (b / "graph.tsv").read_bytes()


class TestSweep:
    def test_row_counts_and_columns(self, tmp_path):
        out = tmp_path / "s"
        cfg = tmp_path / "c.ini"
        cfg.write_text("[generate]\nn = 14\n[sweep]\nreplicates = 2\n")
        run(["sweep", "--config", cfg, "--seed", "5", "--out", out,
             "--thresholds", "0.4,1.0,2.0"])
        cols, rows = table(out / "sweep_cells.tsv")
        assert cols == ["replicate", "threshold", "density", "statistic",
                        "discrepancy"]
        assert len(rows) == 2 * 3 * len(STATISTICS)
        ccols, crows = table(out / "sweep_conversions.tsv")
        assert len(crows) == 2 * 3
        ocols, orows = table(out / "sweep_optima.tsv")
        assert {r[0] for r in orows} == set(STATISTICS)

    def test_graph_input_single_replicate(self, tmp_path):
        gdir = tmp_path / "g"
        run(["generate", "--seed", "4", "--out", gdir])
        out = tmp_path / "s"
        run(["sweep", "--graph", gdir / "graph.tsv", "--out", out,
             "--targets", "2.0,4.0", "--seed", "0"])
        _, rows = table(out / "sweep_cells.tsv")
        assert {r[0] for r in rows} == {"0"}
        manifest = json.loads((out / "manifest.json").read_text())
        inputs = manifest["config"]["input"]
        assert "sha256" in inputs

    def test_deterministic_across_threads(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[generate]\nn = 12\n[sweep]\nreplicates = 3\n")
        a, b = tmp_path / "a", tmp_path / "b"
        run(["sweep", "--config", cfg, "--seed", "2", "--out", a,
             "--targets", "1.5,3.0"])
        run(["sweep", "--config", cfg, "--seed", "2", "--out", b,
             "--targets", "1.5,3.0", "--threads", "3"])
        for name in ("sweep_cells.tsv", "sweep_conversions.tsv",
                     "sweep_optima.tsv", "manifest.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()


class TestLmSweep:
    def test_outputs(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text(
            "[generate]\nn = 20\nsigma_alpha = 1.5\n"
            "[lagmodel]\nbeta = 0.2\nrho = 0.3\n"
        )
        out = tmp_path / "lm"
        run(["lm-sweep", "--config", cfg, "--seed", "9", "--out", out,
             "--targets", "1.0,2.0,4.0"])
        cols, rows = table(out / "lm_cells.tsv")
        assert len(cols) == 13 and len(rows) == 3
        vcols, vrows = table(out / "lm_valued.tsv")
        assert len(vrows) == 1
        ocols, orows = table(out / "lm_optima.tsv")
        assert {r[0] for r in orows} == {"min_gamma_mse", "min_beta_mse", "max_r2"}


class TestBatch:
    def test_rows_and_tstats(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text(
            "[generate]\nn = 16\nsigma_alpha = 1.0,2.0\n"
            "[lagmodel]\nbeta = 0.15\n"
            "[batch]\nreplicates = 2\n"
        )
        out = tmp_path / "b"
        run(["batch", "--config", cfg, "--seed", "3", "--out", out,
             "--targets", "1.0,3.0"])
        cols, rows = table(out / "batch.tsv")
        assert len(rows) == 2 * 2 * 3  # gens x reps x criteria
        assert "criterion" in cols
        tcols, trows = table(out / "batch_tstats.tsv")
        kinds = {r[0] for r in trows}
        assert kinds == {"min_gamma_mse", "min_beta_mse", "max_r2", "valued"}

    def test_thread_invariant(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text(
            "[generate]\nn = 14\n[lagmodel]\nbeta = 0.1\n[batch]\nreplicates = 2\n"
        )
        a, b = tmp_path / "a", tmp_path / "b"
        run(["batch", "--config", cfg, "--seed", "1", "--out", a,
             "--targets", "1.0,2.0"])
        run(["batch", "--config", cfg, "--seed", "1", "--out", b,
             "--targets", "1.0,2.0", "--threads", "4"])
        assert (a / "batch.tsv").read_bytes() == (b / "batch.tsv").read_bytes()

    def test_requires_generate_section(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[lagmodel]\nbeta = 0.1\n")
        assert main(["batch", "--config", str(cfg), "--out",
                     str(tmp_path / "x")]) == 1


class TestAnneal:
    def test_outputs_and_improvement(self, tmp_path, capsys):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[generate]\nn = 10\nsigma_alpha = 1.2\n")
        out = tmp_path / "an"
        run(["anneal", "--config", cfg, "--seed", "6", "--out", out,
             "--steps", "200"])
        lcols, lrows = table(out / "anneal_ladder.tsv")
        tcols, trows = table(out / "anneal_trace.tsv")
        assert tcols == ["step", "current_energy", "best_energy"]
        assert len(trows) == 201
        best_graph = read_graph(out / "anneal_best.tsv")
        assert best_graph.n == 10
        # final best energy never exceeds the best finite ladder energy
        ladder_best = min(float(r[2]) for r in lrows if r[2] != "NA")
        final_best = float(trows[-1][2])
        assert final_best <= ladder_best + 1e-12

    def test_deterministic(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[generate]\nn = 9\nsigma_alpha = 1.0\n")
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            run(["anneal", "--config", cfg, "--seed", "2", "--out", out,
                 "--steps", "150"])
        for name in ("anneal_trace.tsv", "anneal_best.tsv", "anneal_ladder.tsv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()


class TestAnalyze:
    def test_rank_files(self, tmp_path):
        out = tmp_path / "an"
        run(["analyze", DATA / "newcomb_week01.tsv", DATA / "newcomb_week15.tsv",
             "--format", "ranks", "--out", out, "--seed", "1",
             "--targets", "2.0,4.0", "--statistics", "harmonic_rank,ohmic_rank"])
        cols, rows = table(out / "analyze_cells.tsv")
        assert cols[0] == "input"
        inputs = {r[0] for r in rows}
        assert inputs == {"newcomb_week01", "newcomb_week15"}
        assert len(rows) == 2 * 2 * 2  # files x taus x statistics
        _, orows = table(out / "analyze_optima.tsv")
        assert len(orows) == 2 * 2

    def test_edgelist_with_mutual(self, tmp_path):
        out = tmp_path / "an"
        run(["analyze", DATA / "eies_messages.tsv", "--format", "edgelist",
             "--directed", "true", "--mutual", "--unit", "counts",
             "--out", out, "--seed", "0", "--thresholds", "1.0,10.0",
             "--statistics", "harmonic_rank"])
        _, rows = table(out / "analyze_cells.tsv")
        assert len(rows) == 2

    def test_matrix_requires_absolute_for_negatives(self, tmp_path):
        out = tmp_path / "an"
        code = main(["analyze", str(DATA / "corr90.tsv"), "--format", "matrix",
                     "--out", str(out), "--thresholds", "0.25",
                     "--statistics", "harmonic_rank"])
        assert code == 1
        run(["analyze", DATA / "corr90.tsv", "--format", "matrix", "--absolute",
             "--out", out, "--thresholds", "0.25",
             "--statistics", "harmonic_rank"])

    def test_error_names_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("1 2\n")
        code = main(["analyze", str(bad), "--format", "edgelist",
                     "--out", str(tmp_path / "o")])
        assert code == 1
        err = capsys.readouterr().err
        assert "bad.tsv" in err and err.startswith("error:")


class TestLayers:
    def test_nested_files(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[generate]\nn = 12\n")
        out = tmp_path / "ly"
        run(["layers", "--config", cfg, "--seed", "8", "--out", out,
             "--targets", "1.0,2.0,3.0"])
        _, idx = table(out / "layers_index.tsv")
        assert len(idx) == 3
        edge_sets = []
        for row in idx:
            lines = (out / f"layer_{int(row[0]):02d}.tsv").read_text().splitlines()
            edges = {tuple(map(int, ln.split()[:2]))
                     for ln in lines if not ln.startswith("#")}
            edge_sets.append(edges)
        # files are ordered densest to sparsest; each sparser layer nests
        assert edge_sets[2] <= edge_sets[1] <= edge_sets[0]


class TestExitCodes:
    def cli(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "tiecut", *map(str, args)],
            capture_output=True, text=True,
        )

    def test_usage_error_is_2(self):
        out = self.cli("sweep", "--bogus-flag")
        assert out.returncode == 2

    def test_data_error_is_1(self, tmp_path):
        missing = tmp_path / "nope.tsv"
        out = self.cli("sweep", "--graph", missing, "--out", tmp_path / "o")
        assert out.returncode == 1
        assert out.stderr.startswith("error:")

    def test_clean_run_is_0(self, tmp_path):
        out = self.cli("generate", "--seed", "1", "--out", tmp_path / "g")
        assert out.returncode == 0

    def test_version(self):
        out = self.cli("--version")
        assert out.returncode == 0
        assert "tiecut" in out.stdout

    def test_conflicting_ladder_flags(self, tmp_path):
        out = self.cli("sweep", "--thresholds", "1.0", "--targets", "2.0",
                       "--out", tmp_path / "o")
        assert out.returncode == 1
