"""Peak detection, scenario runs, file outputs, and the CLI surface."""

import json
import math
import os

import numpy as np
import pytest

from gspulse import ValidationError, detect_peaks, estimate_pdf
from gspulse.cli import main
from gspulse.config import config_from_mapping
from gspulse.interference import SignalSamples
from gspulse.presets import load_preset, preset_names
from gspulse.scenario import run_scenario, write_report

FAST = {"mc.iterations": 1500, "mc.seed": 11}


def fast_config(extra=None):
    mapping = dict(FAST)
    if extra:
        mapping.update(extra)
    return config_from_mapping(mapping)


class TestDetectPeaks:
    def test_single_gaussian(self):
        rng = np.random.default_rng(3)
        hist = estimate_pdf(SignalSamples(values=rng.normal(2, 0.3, 50_000)),
                            200)
        peaks = detect_peaks(hist)
        assert len(peaks) == 1
        assert peaks[0][0] == pytest.approx(2.0, abs=0.05)

    def test_arcsine_two_edge_peaks(self):
        rng = np.random.default_rng(4)
        theta = rng.uniform(0, 2 * math.pi, 100_000)
        vals = 2 * (1 + np.cos(theta))
        hist = estimate_pdf(SignalSamples(values=vals), 200)
        peaks = detect_peaks(hist)
        assert len(peaks) == 2
        assert peaks[0][0] < 0.2
        assert peaks[1][0] > 3.8

    def test_needs_enough_bins(self):
        rng = np.random.default_rng(5)
        hist = estimate_pdf(SignalSamples(values=rng.normal(0, 1, 100)), 8)
        with pytest.raises(ValidationError):
            detect_peaks(hist)

    def test_sorted_by_location(self):
        rng = np.random.default_rng(6)
        vals = np.concatenate([rng.normal(1, 0.1, 30_000),
                               rng.normal(3, 0.1, 30_000)])
        peaks = detect_peaks(estimate_pdf(SignalSamples(values=vals), 100))
        locs = [loc for loc, _ in peaks]
        assert locs == sorted(locs)
        assert len(peaks) == 2


class TestPresets:
    def test_names(self):
        assert preset_names() == ["fig2a", "fig2b", "fig2c", "fig3", "fig4"]

    def test_fig2a_fields(self):
        [(label, cfg)] = load_preset("fig2a")
        assert label == "fig2a"
        assert cfg.pump.bias == pytest.approx(7e-3)
        assert cfg.pump.peak == pytest.approx(10e-3)
        assert cfg.laser.henry_alpha == 0.0
        assert cfg.laser.gain_compression == 25.0
        assert cfg.noise.detector_rms == 0.05

    def test_fig3_is_a_bias_sweep(self):
        entries = load_preset("fig3")
        assert len(entries) == 4
        biases = [cfg.pump.bias for _, cfg in entries]
        assert biases == pytest.approx([6e-3, 7e-3, 8e-3, 9e-3])
        for _, cfg in entries:
            assert cfg.noise.detector_rms == 0.25
            assert cfg.laser.gain_compression == 30.0
            assert cfg.pump.peak == pytest.approx(11e-3)
            assert cfg.interferometer.loss_a2 == 0.1

    def test_fig4_has_filter(self):
        [(_, cfg)] = load_preset("fig4")
        assert cfg.filter_enabled
        assert cfg.filter_center_ghz is None  # auto-centered

    def test_overrides(self):
        [(_, cfg)] = load_preset("fig2a", {"mc.seed": 1})
        assert cfg.mc.seed == 1


class TestRunScenario:
    def test_report_contents(self):
        report = run_scenario(fast_config(), label="smoke")
        assert report.label == "smoke"
        assert report.histogram.counts.sum() == FAST["mc.iterations"]
        assert report.pulse_summary["peak_power_W"] > 0
        assert report.pulse_summary["fwhm_ps"] > 0
        assert len(report.peaks) >= 1
        assert report.diagnostics["mc"]["skipped"] == 0
        assert "dynamics_s" in report.timings

    def test_filtered_stage(self):
        report = run_scenario(fast_config({
            "laser.alpha": 6.0, "pump.bias_mA": 9.0,
            "filter.enabled": True}), label="filtered")
        assert report.histogram_filtered is not None
        assert report.spectrum is not None
        assert report.spectrum_filtered is not None
        assert "filter_center_GHz" in report.diagnostics

    def test_write_report_files(self, tmp_path):
        report = run_scenario(fast_config({"output.emit_spectrum": True}),
                              label="files")
        out = tmp_path / "run"
        write_report(report, str(out), emit_samples=True)
        for name in ("histogram.csv", "pulse.csv", "spectrum.csv",
                     "samples.csv", "run.json"):
            assert (out / name).exists(), name
        meta = json.loads((out / "run.json").read_text())
        assert meta["label"] == "files"
        assert meta["config"]["pump.bias_mA"] == 7.0
        assert meta["peak_count"] == len(meta["peaks"])
        # no wall-clock data in the serialized report
        assert "timings" not in json.dumps(meta)

    def test_byte_reproducibility(self, tmp_path):
        cfg = fast_config()
        for d in ("a", "b"):
            write_report(run_scenario(cfg, label="rep"), str(tmp_path / d),
                         emit_samples=True)
        for name in ("histogram.csv", "pulse.csv", "samples.csv",
                     "run.json"):
            assert (tmp_path / "a" / name).read_bytes() == \
                (tmp_path / "b" / name).read_bytes(), name


class TestCli:
    def test_run_with_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "scenario.cfg"
        cfg.write_text("mc.iterations = 800\nmc.seed = 3\n")
        out = tmp_path / "out"
        code = main(["run", "--config", str(cfg), "--out-dir", str(out)])
        assert code == 0
        assert (out / "histogram.csv").exists()
        assert (out / "run.json").exists()

    def test_run_preset_with_overrides(self, tmp_path):
        out = tmp_path / "out"
        code = main(["run", "--preset", "fig2a", "--iterations", "600",
                     "--seed", "5", "--out-dir", str(out),
                     "--emit-samples"])
        assert code == 0
        assert (out / "samples.csv").exists()
        meta = json.loads((out / "run.json").read_text())
        assert meta["config"]["mc.seed"] == 5
        assert meta["config"]["mc.iterations"] == 600

    def test_multi_run_preset_creates_subdirs(self, tmp_path):
        out = tmp_path / "sweep"
        code = main(["run", "--preset", "fig3", "--iterations", "400",
                     "--out-dir", str(out)])
        assert code == 0
        subdirs = sorted(os.listdir(out))
        assert subdirs == ["fig3_bias_06mA", "fig3_bias_07mA",
                           "fig3_bias_08mA", "fig3_bias_09mA"]
        for sub in subdirs:
            assert (out / sub / "histogram.csv").exists()

    def test_spectrum_subcommand(self, tmp_path):
        out = tmp_path / "spec"
        code = main(["spectrum", "--preset", "fig2c", "--out-dir", str(out)])
        assert code == 0
        assert (out / "spectrum.csv").exists()
        assert (out / "pulse.csv").exists()
        header = (out / "spectrum.csv").read_text().splitlines()[0]
        assert header == "detuning_GHz,density"

    def test_parse_error_exit_code(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nonsense line\n")
        code = main(["run", "--config", str(cfg),
                     "--out-dir", str(tmp_path / "o")])
        assert code == 64
        assert "error" in capsys.readouterr().err

    def test_validation_error_exit_code(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("laser.tau_ph_ps = -1\n")
        code = main(["run", "--config", str(cfg),
                     "--out-dir", str(tmp_path / "o")])
        assert code == 65

    def test_missing_config_file(self, tmp_path, capsys):
        code = main(["run", "--config", str(tmp_path / "absent.cfg"),
                     "--out-dir", str(tmp_path / "o")])
        assert code == 1

    def test_verify_subcommand(self, capsys):
        code = main(["verify"])
        out = capsys.readouterr().out
        assert code == 0
        assert "PASS" in out
        assert "FAIL" not in out

    def test_seed_changes_outputs(self, tmp_path):
        outs = []
        for seed in ("1", "2"):
            out = tmp_path / f"s{seed}"
            main(["run", "--preset", "fig2a", "--iterations", "500",
                  "--seed", seed, "--out-dir", str(out), "--emit-samples"])
            outs.append((out / "samples.csv").read_bytes())
        assert outs[0] != outs[1]
