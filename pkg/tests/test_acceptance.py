"""Acceptance suite: one test per shipped criterion.

Each test prints a single `[ACCEPTANCE] ...` verdict line (run pytest with
`-s` to see them as they happen) and then asserts, so the suite both
documents and enforces the criteria.  Runtime budgets are part of the
criteria and are asserted alongside the numerical tolerances.
"""

import math
import time

import numpy as np
import pytest
from scipy.stats import kstest

from gspulse import (DrawSample, GaussianPulse, InterferometerParams,
                     McConfig, NoiseModel, arcsine_cdf, chirp_rate,
                     closed_form_check, detect_peaks, estimate_pdf,
                     fit_gaussian, instantaneous_chirp, run_monte_carlo,
                     spectral_centroid, visibility_chirped,
                     visibility_chirpless)
from gspulse.cli import main
from gspulse.presets import load_preset
from gspulse.scenario import run_scenario

DELTA = 20e-12
WORKERS = 1


def verdict(number, name, ok, detail):
    state = "PASS" if ok else "FAIL"
    print(f"\n[ACCEPTANCE] criterion {number} ({name}): {state} -- {detail}")
    assert ok, f"criterion {number} ({name}): {detail}"


def make_draw(time_shift=0.0, phase2=0.0):
    return DrawSample(time_shift=time_shift, phase1=0.0, phase2=phase2,
                      scale1=1.0, scale2=1.0, detector_noise=0.0)


def test_criterion_1_closed_form_equivalence():
    t0 = time.perf_counter()
    pulse = GaussianPulse(rms_width=DELTA, peak_power=1e-3)
    worst = 0.0
    for loss_a2, r in ((0.0, 1.0), (0.1, 0.9)):
        iface = InterferometerParams(loss_a2=loss_a2)
        for dphi in np.linspace(0, 2 * math.pi, 100, endpoint=False):
            _, _, rel = closed_form_check(pulse, make_draw(phase2=dphi),
                                          iface)
            worst = max(worst, rel)
    elapsed = time.perf_counter() - t0
    verdict(1, "closed-form equivalence",
            worst <= 1e-3 and elapsed < 10,
            f"max rel err {worst:.2e} (tol 1e-3), {elapsed:.1f} s (< 10 s)")


def test_criterion_2_visibility_law():
    t0 = time.perf_counter()
    iface = InterferometerParams()
    worst = 0.0
    for alpha in (6.0, 0.0):
        pulse = GaussianPulse(rms_width=DELTA, peak_power=1e-3,
                              chirp_rate=chirp_rate(alpha, DELTA))
        for shift in (0.0, DELTA / 4, DELTA / 2, DELTA):
            sweep = [
                closed_form_check(pulse,
                                  make_draw(time_shift=shift, phase2=dphi),
                                  iface)[0]
                for dphi in np.linspace(0, 2 * math.pi, 256, endpoint=False)
            ]
            eta_num = (max(sweep) - min(sweep)) / 4
            if alpha == 0.0:
                eta_ana = visibility_chirpless(shift, DELTA)
            else:
                eta_ana = visibility_chirped(shift, DELTA, alpha)
            worst = max(worst, abs(eta_num - eta_ana))
    elapsed = time.perf_counter() - t0
    verdict(2, "visibility law",
            worst <= 0.01 and elapsed < 30,
            f"max abs err {worst:.2e} (tol 0.01), {elapsed:.1f} s (< 30 s)")


def test_criterion_3_chirp_linearity(pulse_linear_chirp):
    t0 = time.perf_counter()
    pulse = pulse_linear_chirp
    chirp = instantaneous_chirp(pulse)
    _, _, delta = fit_gaussian(pulse)
    core = pulse.power >= 0.5 * pulse.power.max()
    slope = float(np.polyfit(pulse.times[core], chirp[core], 1)[0])
    beta = 6.0 / (2 * delta**2)
    rel = abs(slope + beta) / beta
    elapsed = time.perf_counter() - t0
    verdict(3, "chirp linearity",
            rel <= 0.10 and elapsed < 10,
            f"slope {slope:.3e}, -alpha/(2 delta^2) {-beta:.3e}, rel err "
            f"{rel:.3f} (tol 0.10), {elapsed:.1f} s (< 10 s)")


def test_criterion_4_arcsine_limit(pulse_bell_chirpless):
    t0 = time.perf_counter()
    noise = NoiseModel(jitter_rms=0.0, amplitude_rms=0.0,
                       phase_rms=2 * math.pi, detector_rms=0.0)
    mc = McConfig(iterations=100_000, seed=20210905)
    out = run_monte_carlo(pulse_bell_chirpless, InterferometerParams(),
                          noise, mc, n_workers=WORKERS)
    stat = kstest(out.values, arcsine_cdf).statistic
    elapsed = time.perf_counter() - t0
    verdict(4, "arcsine limit",
            stat <= 0.01 and elapsed < 60,
            f"KS distance {stat:.4f} (tol 0.01), {elapsed:.1f} s (< 60 s)")


def run_preset(name):
    [(label, config)] = load_preset(name)
    return run_scenario(config, label=label, n_workers=WORKERS)


def test_criterion_5_morphology_fig2a():
    t0 = time.perf_counter()
    report = run_preset("fig2a")
    elapsed = time.perf_counter() - t0
    peaks = report.peaks
    ok = (len(peaks) == 2 and peaks[0][1] > peaks[1][1] and elapsed < 120)
    detail = (f"{len(peaks)} peak(s) at "
              f"{[round(loc, 3) for loc, _ in peaks]}, heights "
              f"{[round(h, 3) for _, h in peaks]}, {elapsed:.0f} s (< 120 s)")
    verdict("5a", "fig2a: two peaks, left higher", ok, detail)


def test_criterion_5_morphology_fig2b():
    t0 = time.perf_counter()
    report = run_preset("fig2b")
    elapsed = time.perf_counter() - t0
    peaks = report.peaks
    ok = len(peaks) == 3 and elapsed < 120
    detail = (f"{len(peaks)} peak(s) at "
              f"{[round(loc, 3) for loc, _ in peaks]}, {elapsed:.0f} s "
              f"(< 120 s)")
    verdict("5b", "fig2b: three peaks", ok, detail)


def test_criterion_5_morphology_fig2c():
    t0 = time.perf_counter()
    report = run_preset("fig2c")
    elapsed = time.perf_counter() - t0
    peaks = report.peaks
    # interior: clearly away from the zero-noise extremes 0 and 4
    ok = (len(peaks) == 2
          and all(0.1 < loc < 3.9 for loc, _ in peaks)
          and elapsed < 120)
    detail = (f"{len(peaks)} peak(s) at "
              f"{[round(loc, 3) for loc, _ in peaks]} (interior to (0, 4)), "
              f"{elapsed:.0f} s (< 120 s)")
    verdict("5c", "fig2c: two interior peaks", ok, detail)


def test_criterion_6_spectral_shoulder_and_mitigation():
    t0 = time.perf_counter()
    report = run_preset("fig4")
    elapsed = time.perf_counter() - t0
    centroid_ghz = spectral_centroid(report.spectrum) / (2 * math.pi * 1e9)
    n_filtered = len(report.peaks_filtered)
    ok = centroid_ghz > 0 and n_filtered == 2 and elapsed < 180
    detail = (f"unfiltered centroid {centroid_ghz:+.1f} GHz (> 0), filtered "
              f"PDF {n_filtered} peak(s) at "
              f"{[round(loc, 3) for loc, _ in report.peaks_filtered]}, "
              f"{elapsed:.0f} s (< 180 s)")
    verdict(6, "spectral shoulder and mitigation", ok, detail)


def test_criterion_7_worker_determinism(tmp_path):
    for threads, sub in (("1", "t1"), ("8", "t8")):
        code = main(["run", "--preset", "fig2a", "--seed", "123",
                     "--threads", threads, "--emit-samples",
                     "--out-dir", str(tmp_path / sub)])
        assert code == 0
    files = ["samples.csv", "histogram.csv", "run.json", "pulse.csv"]
    same = all((tmp_path / "t1" / f).read_bytes()
               == (tmp_path / "t8" / f).read_bytes() for f in files)
    verdict(7, "worker-count determinism", same,
            f"1 vs 8 workers, files {files} bit-identical: {same}")


def test_criterion_8_desk_scale_budget(tmp_path):
    t0 = time.perf_counter()
    code = main(["run", "--preset", "fig3", "--threads", str(WORKERS),
                 "--out-dir", str(tmp_path / "fig3")])
    elapsed = time.perf_counter() - t0
    ok = code == 0 and elapsed < 300
    verdict(8, "desk-scale budget (fig3 sweep)", ok,
            f"exit {code}, {elapsed:.0f} s (< 300 s)")
