"""CLI: subcommand outputs, exit-code contract, config files, report files."""

import json

import pytest

from phisub.cli import main
from phisub import SequenceSpec, Rademacher, convergence_report


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConjugate:
    def test_spec_example(self, capsys):
        code, out, _ = run(capsys, "conjugate", "--p", "3", "--y", "2")
        assert code == 0
        assert "1.718951" in out

    def test_quadratic_point(self, capsys):
        code, out, _ = run(capsys, "conjugate", "--p", "2", "--y", "1.3")
        assert code == 0
        assert "0.845" in out

    def test_grid(self, capsys):
        # attached form: a detached value starting with '-' looks like a flag
        code, out, _ = run(capsys, "conjugate", "--p", "2", "--grid=-1:1:5")
        assert code == 0
        assert len(out.strip().splitlines()) == 6  # header + 5 rows

    def test_precision_flag(self, capsys):
        code, out, _ = run(capsys, "conjugate", "--p", "3", "--y", "2",
                           "--precision", "8")
        assert code == 0
        assert "1.71895142" in out

    def test_needs_y_or_grid(self, capsys):
        code, _, err = run(capsys, "conjugate", "--p", "3")
        assert code == 1
        assert "need --y or --grid" in err

    def test_p_one_conjugate_diverges(self, capsys):
        # phi_1 grows linearly: the transform at y = 2 has no finite sup
        code, _, err = run(capsys, "conjugate", "--p", "1", "--y", "2")
        assert code == 2
        assert "numeric failure" in err


class TestNorm:
    def test_gaussian_exact(self, capsys):
        code, out, _ = run(capsys, "norm", "--model", "gaussian",
                           "--sigma", "3", "--p", "2")
        assert code == 0
        assert "exact" in out
        row = out.strip().splitlines()[1].split()
        assert row[2] == "3"

    def test_rademacher(self, capsys):
        code, out, _ = run(capsys, "norm", "--model", "rademacher", "--p", "2")
        assert code == 0
        assert "numeric-sup" in out

    def test_empirical_from_file(self, capsys, tmp_path):
        f = tmp_path / "s.txt"
        f.write_text("# data\n1.0\n-1.0\n1.0\n-1.0\n")
        code, out, _ = run(capsys, "norm", "--model", "empirical",
                           "--samples", str(f), "--p", "2")
        assert code == 0
        assert "empirical" in out

    def test_not_subgaussian_is_numeric_failure(self, capsys):
        code, _, err = run(capsys, "norm", "--model", "gaussian",
                           "--sigma", "1", "--p", "1.5")
        assert code == 2
        assert "diverges" in err

    def test_missing_samples(self, capsys):
        code, _, err = run(capsys, "norm", "--model", "empirical", "--p", "2")
        assert code == 1


class TestTailbound:
    def test_basic(self, capsys):
        code, out, _ = run(capsys, "tailbound", "--kind", "basic", "--p", "2",
                           "--C", "1", "--eps", "3")
        assert code == 0
        assert "0.022218" in out

    def test_slln_with_flag_column(self, capsys):
        code, out, _ = run(capsys, "tailbound", "--kind", "slln", "--p", "2",
                           "--c", "1", "--alpha", "0.5", "--eps", "0.5",
                           "--n", "4,10")
        assert code == 0
        lines = out.strip().splitlines()
        assert "false" in lines[1] and "true" in lines[2]
        assert "0.57301" in lines[2]  # 2 e^-1.25 = 0.5730095... at 6 decimals

    def test_mz(self, capsys):
        code, out, _ = run(capsys, "tailbound", "--kind", "mz", "--p", "2",
                           "--b", "1", "--s", "1", "--eps", "0.5", "--n", "100")
        assert code == 0
        assert "7.453306e-06" in out

    def test_missing_params(self, capsys):
        code, _, err = run(capsys, "tailbound", "--kind", "slln", "--p", "2",
                           "--eps", "0.5")
        assert code == 1


class TestSllnCheck:
    def test_sqrt_table(self, capsys):
        code, out, _ = run(capsys, "slln-check", "--pairs", "1:1,4:2,16:4,64:8")
        assert code == 0
        row = out.strip().splitlines()[-1].split()
        assert row[0] == "1" and row[1] == "0.5"
        assert "true" in out

    def test_identical_copies_table(self, capsys):
        code, out, _ = run(capsys, "slln-check", "--pairs",
                           "1:1,10:10,100:100,1000:1000")
        assert code == 0
        assert "not satisfied" in out

    def test_table_file(self, capsys, tmp_path):
        f = tmp_path / "norms.csv"
        f.write_text("# n tau\n1,1\n4,2\n16,4\n64,8\n")
        code, out, _ = run(capsys, "slln-check", "--table", str(f))
        assert code == 0
        assert "0.5" in out

    def test_needs_exactly_one_source(self, capsys):
        code, _, _ = run(capsys, "slln-check")
        assert code == 1
        code, _, _ = run(capsys, "slln-check", "--pairs", "1:1,2:2,3:3",
                         "--table", "x.csv")
        assert code == 1

    def test_too_few_points(self, capsys):
        code, _, err = run(capsys, "slln-check", "--pairs", "1:1,4:2")
        assert code == 1
        assert "three" in err


class TestSimulate:
    ARGS = ["simulate", "--dist", "rademacher", "--n-grid", "50,100",
            "--eps-grid", "0.5", "--replications", "80", "--seed", "3",
            "--normalizations", "mean"]

    def test_runs_clean(self, capsys):
        code, out, _ = run(capsys, *self.ARGS)
        assert code == 0
        assert "frequency" in out

    def test_violation_exit_code(self, capsys):
        code, _, err = run(capsys, "simulate", "--dist", "identical-copies",
                           "--base", "rademacher", "--n-grid", "100,1000",
                           "--eps-grid", "0.5", "--replications", "50",
                           "--seed", "1", "--normalizations", "mean")
        assert code == 3
        assert "violation" in err

    def test_json_round_trip(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        code, _, _ = run(capsys, *self.ARGS, "--out", str(out_file))
        assert code == 0
        want = convergence_report(
            SequenceSpec(Rademacher(), 100, 3), s=1.0, n_grid=[50, 100],
            eps_grid=[0.5], replications=80, seed_base=3,
            normalizations=("mean",))
        assert json.loads(out_file.read_text()) == want.to_dict()

    def test_csv_byte_identical(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(capsys, *self.ARGS, "--out", str(a))
        run(capsys, *self.ARGS, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_martingale_dist(self, capsys):
        code, out, _ = run(capsys, "simulate", "--dist", "martingale",
                           "--bound", "1", "--n-grid", "100", "--eps-grid", "0.5",
                           "--replications", "50", "--seed", "0",
                           "--normalizations", "mean")
        assert code == 0

    def test_bad_normalization(self, capsys):
        code, _, err = run(capsys, "simulate", "--dist", "rademacher",
                           "--n-grid", "50", "--eps-grid", "0.5",
                           "--normalizations", "bogus")
        assert code == 1


class TestPlumbing:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "bogus")[0] == 1

    def test_unknown_flag(self, capsys):
        assert run(capsys, "conjugate", "--p", "3", "--wat", "1")[0] == 1

    def test_no_args(self, capsys):
        assert run(capsys)[0] == 1

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_bad_precision(self, capsys):
        code, _, err = run(capsys, "conjugate", "--p", "3", "--y", "2",
                           "--precision", "40")
        assert code == 1

    def test_config_file_defaults_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "conj.cfg"
        cfg.write_text("p=3\ny=2\nprecision=8\n")
        code, out, _ = run(capsys, "conjugate", "--config", str(cfg))
        assert code == 0
        assert "1.71895142" in out
        code, out, _ = run(capsys, "conjugate", "--config", str(cfg), "--y", "0")
        assert code == 0
        assert "1.71895142" not in out

    def test_config_missing_file(self, capsys):
        code, _, _ = run(capsys, "conjugate", "--config", "/nonexistent.cfg")
        assert code == 1

    def test_out_unknown_extension(self, capsys, tmp_path):
        code, _, err = run(capsys, "conjugate", "--p", "3", "--y", "2",
                           "--out", str(tmp_path / "x.xml"))
        assert code == 1
        assert "unknown output format" in err

    def test_out_csv_and_json(self, capsys, tmp_path):
        csv_file = tmp_path / "rows.csv"
        json_file = tmp_path / "rows.json"
        assert run(capsys, "tailbound", "--kind", "basic", "--p", "2", "--C", "1",
                   "--eps", "1,3", "--out", str(csv_file))[0] == 0
        assert run(capsys, "tailbound", "--kind", "basic", "--p", "2", "--C", "1",
                   "--eps", "1,3", "--out", str(json_file))[0] == 0
        assert csv_file.read_text().splitlines()[0] == "epsilon,bound"
        payload = json.loads(json_file.read_text())
        assert payload["command"] == "tailbound"
        assert len(payload["rows"]) == 2
