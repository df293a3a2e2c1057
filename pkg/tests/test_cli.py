"""End-to-end CLI runs: files, formats, exit codes, determinism."""
import re

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

import pytest

from twinvss.cli import main

SMALL = """
[grid]
points = 64

[scan]
delay_points = 64

[ensemble]
count = 4

[sweep]
photon_numbers = [0.01, 0.1, 1.0]
"""

FLOAT_RE = re.compile(r"^-?\d\.\d{8}e[+-]\d{2,3}$")


@pytest.fixture()
def small_config(tmp_path):
    path = tmp_path / "small.toml"
    path.write_text(SMALL, encoding="utf-8")
    return path


def read_manifest(out_dir):
    return tomllib.loads((out_dir / "manifest.toml").read_text(encoding="utf-8"))


def strip_timings(text: str) -> str:
    return text.split("[timings]")[0]


class TestCommands:
    def test_joint_spectrum_outputs(self, small_config, tmp_path):
        out = tmp_path / "js"
        assert main(["joint-spectrum", "--config", str(small_config), "--out", str(out)]) == 0
        manifest = read_manifest(out)
        assert manifest["derived"]["correlation_coefficient"] < -0.5
        assert manifest["config"]["grid"]["points"] == 64
        header = (out / "data.csv").read_text().splitlines()[0]
        assert header == "nu_s_ev,nu_i_ev,abs_amplitude"
        assert (out / "plot.svg").read_text().startswith("<svg")

    def test_schmidt_outputs(self, small_config, tmp_path):
        out = tmp_path / "schmidt"
        assert main(["schmidt", "--config", str(small_config), "--out", str(out)]) == 0
        lines = (out / "data.csv").read_text().splitlines()
        assert lines[0] == "mode,lambda,u,v"
        assert len(lines) > 1
        manifest = read_manifest(out)
        assert manifest["derived"]["photon_number_achieved"] == pytest.approx(
            1.0, rel=1e-9
        )

    def test_spectrogram_outputs(self, small_config, tmp_path):
        out = tmp_path / "spec"
        assert main(["spectrogram", "--config", str(small_config), "--out", str(out)]) == 0
        data = (out / "data.csv").read_text().splitlines()
        assert data[0] == "energy_ev,magnitude,magnitude_raw"
        trace = (out / "trace.csv").read_text().splitlines()
        assert trace[0] == "delay_fs,noise,classical,quantum,total"
        assert len(trace) == 65
        assert (out / "peaks.csv").read_text().splitlines()[0] == "energy_ev,magnitude"

    def test_ensemble_outputs(self, small_config, tmp_path):
        out = tmp_path / "ens"
        assert main(["ensemble", "--config", str(small_config), "--out", str(out)]) == 0
        manifest = read_manifest(out)
        assert manifest["derived"]["member_count"] == 4
        assert (out / "peaks.csv").exists()

    def test_flux_sweep_outputs(self, small_config, tmp_path):
        out = tmp_path / "flux"
        assert main(["flux-sweep", "--config", str(small_config), "--out", str(out)]) == 0
        lines = (out / "data.csv").read_text().splitlines()
        assert lines[0] == (
            "n_s,gain,noise,classical,quantum,noise_plus_classical,"
            "slope_quantum,slope_noise_classical,crossover_n_s"
        )
        assert len(lines) == 4
        slope_q = float(lines[1].split(",")[6])
        slope_nc = float(lines[1].split(",")[7])
        assert slope_q == pytest.approx(1.0, abs=0.15)
        assert slope_nc == pytest.approx(2.0, abs=0.15)

    def test_csv_numeric_contract(self, small_config, tmp_path):
        out = tmp_path / "fmt"
        main(["flux-sweep", "--config", str(small_config), "--out", str(out)])
        rows = (out / "data.csv").read_text().splitlines()[1:]
        for row in rows:
            for cell in row.split(","):
                if cell != "nan":
                    assert FLOAT_RE.match(cell), cell

    def test_seed_replaces_levels(self, small_config, tmp_path):
        out = tmp_path / "seeded"
        assert main(
            [
                "spectrogram",
                "--config",
                str(small_config),
                "--out",
                str(out),
                "--seed",
                "5",
            ]
        ) == 0


class TestDeterminism:
    def test_thread_count_invariance(self, small_config, tmp_path):
        out1 = tmp_path / "t1"
        out2 = tmp_path / "t2"
        assert main(
            ["ensemble", "--config", str(small_config), "--out", str(out1), "--threads", "1"]
        ) == 0
        assert main(
            ["ensemble", "--config", str(small_config), "--out", str(out2), "--threads", "2"]
        ) == 0
        assert (out1 / "data.csv").read_bytes() == (out2 / "data.csv").read_bytes()
        assert (out1 / "peaks.csv").read_bytes() == (out2 / "peaks.csv").read_bytes()
        m1 = strip_timings((out1 / "manifest.toml").read_text())
        m2 = strip_timings((out2 / "manifest.toml").read_text())
        assert m1 == m2

    def test_repeat_runs_byte_identical(self, small_config, tmp_path):
        out1 = tmp_path / "r1"
        out2 = tmp_path / "r2"
        main(["spectrogram", "--config", str(small_config), "--out", str(out1)])
        main(["spectrogram", "--config", str(small_config), "--out", str(out2)])
        assert (out1 / "data.csv").read_bytes() == (out2 / "data.csv").read_bytes()
        assert (out1 / "plot.svg").read_bytes() == (out2 / "plot.svg").read_bytes()


class TestExitCodes:
    def test_config_error_is_2(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text("[pump]\npower_w = 1.0\n", encoding="utf-8")
        assert main(["spectrogram", "--config", str(bad), "--out", str(tmp_path / "o")]) == 2

    def test_parse_error_is_2(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text("[pump\n", encoding="utf-8")
        assert main(["spectrogram", "--config", str(bad), "--out", str(tmp_path / "o")]) == 2

    def test_missing_config_is_io_error(self, tmp_path):
        assert main(
            [
                "spectrogram",
                "--config",
                str(tmp_path / "missing.toml"),
                "--out",
                str(tmp_path / "o"),
            ]
        ) == 4
