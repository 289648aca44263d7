import json

import numpy as np
import pytest

from renormdiff.cli import ExperimentConfig, main, run_compare_pipeline
from renormdiff.lineardiff import RootConvention, SchemeParams, characteristic_roots


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    comments = [ln for ln in lines if ln.startswith("#")]
    data_lines = [ln for ln in lines if not ln.startswith("#")]
    header = data_lines[0].split(",")
    rows = np.array(
        [[float(x) if x else np.nan for x in ln.split(",")] for ln in data_lines[1:]]
    )
    return header, rows, comments


def summary_from_comments(comments):
    for line in comments:
        if line.startswith("# summary = "):
            return json.loads(line[len("# summary = ") :])
    raise AssertionError("no summary comment found")


class TestSimulate:
    def test_linear_run_matches_closed_form(self, tmp_path):
        out = tmp_path / "traj.csv"
        code = main(
            [
                "simulate",
                "--kind", "cubic",
                "--dt", "0.1",
                "--eps", "0",
                "--a0-re", "0.5",
                "--a0-im", "0",
                "--t-max", "50",
                "--root-convention", "exact",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        header, rows, _ = read_csv(out)
        assert header == ["n", "t", "z"]
        params = SchemeParams(dt=0.1, root_convention=RootConvention.EXACT_UNIT_MODULUS)
        lam, _ = characteristic_roots(params)
        n = rows[:, 0]
        expected = 2.0 * np.real(0.5 * np.exp(n * np.log(lam)))
        assert np.max(np.abs(rows[:, 2] - expected)) <= 1e-10

    def test_zero_dt_is_config_error(self, tmp_path, capsys):
        code = main(["simulate", "--dt", "0", "--output-path", str(tmp_path / "x.csv")])
        assert code == 2
        assert "dt must be positive" in capsys.readouterr().err

    def test_vdp_envelope_rises_then_saturates(self, tmp_path):
        out = tmp_path / "vdp.csv"
        code = main(
            [
                "simulate",
                "--kind", "vdp",
                "--dt", "0.01",
                "--eps", "0.05",
                "--a0-re", "0.1",
                "--t-max", "250",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        _, rows, _ = read_csv(out)
        t, z = rows[:, 1], rows[:, 2]
        assert np.abs(z[t < 20.0]).max() < 1.0  # still far from the limit cycle
        assert np.abs(z[t > 150.0]).max() == pytest.approx(2.0, rel=0.05)

    def test_mickens_scheme_available(self, tmp_path):
        out = tmp_path / "mick.csv"
        code = main(
            [
                "simulate",
                "--scheme", "mickens",
                "--kind", "cubic",
                "--dt", "0.1",
                "--eps", "0",
                "--a0-re", "0.5",
                "--t-max", "20",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        _, rows, _ = read_csv(out)
        # with eps = 0 the trigonometric scheme reproduces cos(n h) for the
        # matching initial data; a0 = 0.5 gives exactly that data under the
        # first-order convention... z(1) = Re(1 + i h) = 1, so just check
        # boundedness and the documented column layout here
        assert np.abs(rows[:, 2]).max() <= 1.2

    def test_divergence_exit_code(self, tmp_path, capsys):
        code = main(
            [
                "simulate",
                "--kind", "cubic",
                "--dt", "0.1",
                "--eps", "0.4",
                "--a0-re", "1e6",
                "--t-max", "10",
                "--output-path", str(tmp_path / "d.csv"),
            ]
        )
        assert code == 3
        assert "numerical failure" in capsys.readouterr().err


class TestCompare:
    def test_zero_eps_all_errors_tiny(self, tmp_path):
        out = tmp_path / "cmp.csv"
        code = main(
            [
                "compare",
                "--kind", "cubic",
                "--dt", "0.05",
                "--eps", "0",
                "--a0-re", "0.5",
                "--t-max", "50",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        header, rows, comments = read_csv(out)
        assert header[:2] == ["n", "t"]
        err_naive = rows[:, header.index("err_naive")]
        err_renorm = rows[:, header.index("err_renorm")]
        assert err_naive.max() <= 1e-8
        assert err_renorm.max() <= 1e-8
        summary = summary_from_comments(comments)
        assert summary["max_err_naive"] <= 1e-8

    def test_secular_vs_renormalized_slopes(self, tmp_path):
        out = tmp_path / "cmp.csv"
        code = main(
            [
                "compare",
                "--kind", "cubic",
                "--dt", "0.01",
                "--eps", "0.01",
                "--a0-re", "0.5",
                "--t-max", "200",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        _, _, comments = read_csv(out)
        summary = summary_from_comments(comments)
        assert summary["slope_err_naive"] >= 5.0 * summary["slope_err_renorm"]

    def test_vdp_limit_amplitude_reported(self, tmp_path):
        out = tmp_path / "vdp.json"
        code = main(
            [
                "compare",
                "--kind", "vdp",
                "--dt", "0.01",
                "--eps", "0.05",
                "--a0-re", "0.1",
                "--t-max", "250",
                "--output-format", "json",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["summary"]["limit_amplitude_oracle"] == pytest.approx(2.0, rel=0.02)
        assert {"n", "t", "z_oracle", "z_naive", "z_renorm_discrete",
                "z_renorm_continuum", "err_naive", "err_renorm"} <= set(doc["rows"][0])

    def test_output_byte_stable(self, tmp_path):
        args = [
            "compare",
            "--kind", "cubic",
            "--dt", "0.02",
            "--eps", "0.02",
            "--a0-re", "0.4",
            "--t-max", "30",
        ]
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(args + ["--output-path", str(out1)]) == 0
        assert main(args + ["--output-path", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_stride_decimates_rows(self, tmp_path):
        out = tmp_path / "s.csv"
        code = main(
            [
                "compare",
                "--kind", "cubic",
                "--dt", "0.1",
                "--eps", "0.01",
                "--a0-re", "0.5",
                "--t-max", "10",
                "--stride", "10",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        _, rows, _ = read_csv(out)
        assert rows.shape[0] == 11  # 101 samples, every 10th
        assert np.allclose(np.diff(rows[:, 0]), 10)

    def test_summary_recomputable_from_rows(self, tmp_path):
        out = tmp_path / "cmp.csv"
        main(
            [
                "compare",
                "--kind", "cubic",
                "--dt", "0.05",
                "--eps", "0.02",
                "--a0-re", "0.5",
                "--t-max", "60",
                "--output-path", str(out),
            ]
        )
        header, rows, comments = read_csv(out)
        summary = summary_from_comments(comments)
        err_naive = np.abs(
            rows[:, header.index("z_oracle")] - rows[:, header.index("z_naive")]
        )
        assert err_naive.max() == pytest.approx(summary["max_err_naive"], rel=1e-12)


class TestSweep:
    def test_eps_sweep_renorm_error_quadratic(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(
            [
                "sweep",
                "--param", "eps",
                "--values", "0.01,0.02,0.04",
                "--kind", "cubic",
                "--dt", "0.01",
                "--a0-re", "0.5",
                "--t-max", "200",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        header, rows, _ = read_csv(out)
        err = rows[:, header.index("max_err_renorm")]
        assert err[1] / err[0] == pytest.approx(4.0, rel=0.25)
        assert err[2] / err[1] == pytest.approx(4.0, rel=0.25)

    def test_dt_sweep_drift_shrinks_for_first_order_roots(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(
            [
                "sweep",
                "--param", "dt",
                "--values", "0.02,0.01,0.005",
                "--kind", "cubic",
                "--eps", "0",
                "--a0-re", "0.5",
                "--t-max", "20",
                "--root-convention", "first-order",
                "--output-path", str(out),
            ]
        )
        assert code == 0
        header, rows, _ = read_csv(out)
        drift = rows[:, header.index("max_err_naive")]
        assert drift[0] > 1.5 * drift[1] > 2.0 * drift[2]

    def test_empty_values_rejected(self, tmp_path, capsys):
        code = main(
            ["sweep", "--param", "eps", "--values", "", "--output-path", str(tmp_path / "x")]
        )
        assert code == 2

    def test_unknown_parameter_rejected(self, tmp_path, capsys):
        code = main(
            [
                "sweep",
                "--param", "t_max",
                "--values", "1,2",
                "--output-path", str(tmp_path / "x"),
            ]
        )
        assert code == 2
        assert "sweep parameter" in capsys.readouterr().err


class TestConfigFile:
    def test_file_values_and_flag_overrides(self, tmp_path):
        cfg_file = tmp_path / "exp.cfg"
        cfg_file.write_text(
            "# experiment configuration\n"
            "kind = cubic\n"
            "dt = 0.05\n"
            "eps = 0.02\n"
            "t_max = 30  # short run\n"
        )
        out = tmp_path / "out.csv"
        code = main(
            [
                "simulate",
                "--config", str(cfg_file),
                "--eps", "0",  # override wins
                "--output-path", str(out),
            ]
        )
        assert code == 0
        _, rows, _ = read_csv(out)
        assert rows.shape[0] == 601  # t_max / dt + 1 from the file

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg_file = tmp_path / "bad.cfg"
        cfg_file.write_text("frequency = 3\n")
        code = main(["simulate", "--config", str(cfg_file)])
        assert code == 2
        assert "unknown config key" in capsys.readouterr().err

    def test_missing_file_rejected(self, tmp_path):
        code = main(["simulate", "--config", str(tmp_path / "absent.cfg")])
        assert code == 2

    def test_bad_subcommand_exits_two(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_module_entry_point(self, tmp_path):
        import subprocess
        import sys

        out = tmp_path / "m.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "renormdiff", "simulate", "--dt", "0.1",
             "--eps", "0", "--t-max", "5", "--output-path", str(out)],
            capture_output=True,
        )
        assert proc.returncode == 0
        assert out.read_text().startswith("n,t,z")


class TestPipelineDefaults:
    def test_defaults_run(self):
        cols, summary = run_compare_pipeline(ExperimentConfig(t_max=10.0))
        assert len(cols["n"]) == 1001
        assert summary["max_err_naive"] >= 0.0

    def test_vdp_needs_nonzero_real_amplitude(self):
        cfg = ExperimentConfig(kind="vdp", a0_re=0.0)
        with pytest.raises(ValueError):
            run_compare_pipeline(_validated(cfg))


def _validated(cfg):
    from renormdiff.cli import _validate

    return _validate(cfg)
