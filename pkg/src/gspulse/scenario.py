"""Scenario orchestration: dynamics -> optional filtering -> Monte-Carlo ->
histogram, plus machine-readable outputs.

A run writes, into its output directory:

    histogram.csv            bin_left, bin_right, count, density
    histogram_filtered.csv   (only when the filter stage is enabled)
    pulse.csv                time_ps, power_mW, phase_rad, detuning_GHz
    pulse_filtered.csv       (filter stage only)
    spectrum.csv             detuning_GHz, density  (when spectra are emitted)
    spectrum_filtered.csv    (filter stage only)
    samples.csv              s_hat, one per line (only when requested)
    run.json                 config echo, pulse summary, peaks, diagnostics

run.json deliberately contains no timings or timestamps: every emitted byte
is a function of (config, seed).  Wall-clock timings live on the returned
RunReport and go to the log.
"""

import json
import math
import os
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from . import analytic, spectrum as spectrum_mod
from .config import ScenarioConfig, config_echo
from .dynamics import (extract_pulse, instantaneous_chirp,
                       integrate_trajectory)
from .errors import ValidationError
from .interference import Histogram, estimate_pdf, run_monte_carlo

GHZ = 2 * math.pi * 1e9

PEAK_SMOOTH_WINDOW = 5        # bins of moving-average smoothing
PEAK_PROMINENCE_FRACTION = 0.05  # of the smoothed global maximum


@dataclass
class RunReport:
    """Everything a completed run produced, before serialization."""

    label: str
    echo: dict
    pulse_summary: dict
    histogram: Histogram
    peaks: list
    diagnostics: dict
    pulse: object = None
    samples: object = None
    histogram_filtered: Histogram = None
    peaks_filtered: list = None
    pulse_summary_filtered: dict = None
    pulse_filtered: object = None
    samples_filtered: object = None
    spectrum: object = None
    spectrum_filtered: object = None
    timings: dict = field(default_factory=dict)


def detect_peaks(hist: Histogram, window=PEAK_SMOOTH_WINDOW,
                 prominence_fraction=PEAK_PROMINENCE_FRACTION):
    """Locate the maxima of a histogram's density.

    The density is smoothed with a centered moving average (edge values
    repeated), zero-padded at both ends so boundary maxima count, and maxima
    with prominence below the given fraction of the smoothed global maximum
    are discarded.  Returns [(location, height), ...] sorted by location,
    heights from the smoothed density.
    """
    if len(hist.counts) < 16:
        raise ValidationError("detect_peaks needs >= 16 bins")
    pad = window // 2
    smoothed = np.convolve(np.pad(hist.density, pad, mode="edge"),
                           np.ones(window) / window, mode="valid")
    guarded = np.concatenate(([0.0], smoothed, [0.0]))
    idx, _ = find_peaks(guarded,
                        prominence=prominence_fraction * guarded.max())
    centers = hist.centers
    return [(float(centers[i - 1]), float(smoothed[i - 1])) for i in idx]


def pulse_summary(pulse):
    """Scalar description of a pulse window for reports."""
    chirp = instantaneous_chirp(pulse)
    summary = {
        "energy_J": pulse.energy(),
        "peak_power_W": float(pulse.power.max()),
        "peak_time_ps": float(pulse.times[pulse.power.argmax()] * 1e12),
        "fwhm_ps": analytic.power_fwhm(pulse) * 1e12,
        "chirp_min_GHz": float(chirp.min() / GHZ),
        "chirp_max_GHz": float(chirp.max() / GHZ),
    }
    try:
        _, _, width = analytic.fit_gaussian(pulse)
        summary["fitted_rms_width_ps"] = width * 1e12
    except RuntimeError:
        summary["fitted_rms_width_ps"] = None
    return summary


def run_scenario(config: ScenarioConfig, label="run", n_workers=1):
    """Execute one scenario and return its RunReport."""
    timings = {}
    t0 = time.perf_counter()
    trajectory = integrate_trajectory(config.laser, config.pump, config.grid)
    pulse = extract_pulse(trajectory, config.laser, config.grid)
    timings["dynamics_s"] = time.perf_counter() - t0

    diagnostics = {
        "photon_clamps": trajectory.clamp_count,
        "photon_clamp_last_step": trajectory.clamp_last_step,
        "clamps_after_warmup": bool(
            trajectory.clamp_last_step
            >= config.grid.n_periods_warmup * trajectory.steps_per_period),
    }

    spec = None
    spec_filtered = None
    pulse_filtered = None
    if config.filter_enabled or config.outputs.emit_spectrum:
        t0 = time.perf_counter()
        field_trace = spectrum_mod.field_from_pulse(pulse)
        spec = spectrum_mod.power_spectrum(field_trace)
        if config.filter_enabled:
            if config.filter_center_ghz is None:
                center = spectrum_mod.spectral_mode(spec)
            else:
                center = config.filter_center_ghz * GHZ
            bpf = config.bandpass(center)
            filtered_field = spectrum_mod.apply_filter(field_trace, bpf)
            pulse_filtered = spectrum_mod.filtered_pulse(filtered_field)
            spec_filtered = spectrum_mod.power_spectrum(filtered_field)
            diagnostics["filter_center_GHz"] = center / GHZ
        timings["spectrum_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    samples = run_monte_carlo(pulse, config.interferometer, config.noise,
                              config.mc, n_workers=n_workers)
    hist = estimate_pdf(samples, config.hist_bins)
    peaks = detect_peaks(hist)
    timings["monte_carlo_s"] = time.perf_counter() - t0
    diagnostics["mc"] = samples.metadata

    hist_filtered = None
    peaks_filtered = None
    summary_filtered = None
    samples_filtered = None
    if pulse_filtered is not None:
        t0 = time.perf_counter()
        samples_filtered = run_monte_carlo(pulse_filtered,
                                           config.interferometer,
                                           config.noise, config.mc,
                                           n_workers=n_workers)
        hist_filtered = estimate_pdf(samples_filtered, config.hist_bins)
        peaks_filtered = detect_peaks(hist_filtered)
        timings["monte_carlo_filtered_s"] = time.perf_counter() - t0
        diagnostics["mc_filtered"] = samples_filtered.metadata

    return RunReport(
        label=label,
        echo=config_echo(config),
        pulse_summary=pulse_summary(pulse),
        histogram=hist,
        peaks=peaks,
        diagnostics=diagnostics,
        pulse=pulse,
        samples=samples,
        histogram_filtered=hist_filtered,
        peaks_filtered=peaks_filtered,
        pulse_summary_filtered=(pulse_summary(pulse_filtered)
                                if pulse_filtered is not None else None),
        pulse_filtered=pulse_filtered,
        samples_filtered=samples_filtered,
        spectrum=spec,
        spectrum_filtered=spec_filtered,
        timings=timings,
    )


def _write_histogram(path, hist: Histogram):
    with open(path, "w") as fh:
        fh.write("bin_left,bin_right,count,density\n")
        for lo, hi, cnt, dens in zip(hist.bin_edges[:-1], hist.bin_edges[1:],
                                     hist.counts, hist.density):
            fh.write(f"{lo:.17g},{hi:.17g},{int(cnt)},{dens:.17g}\n")


def _write_pulse(path, pulse):
    chirp = instantaneous_chirp(pulse)
    with open(path, "w") as fh:
        fh.write("time_ps,power_mW,phase_rad,detuning_GHz\n")
        for t, p, ph, c in zip(pulse.times, pulse.power, pulse.phase, chirp):
            fh.write(f"{t * 1e12:.17g},{p * 1e3:.17g},{ph:.17g},"
                     f"{c / GHZ:.17g}\n")


def _write_spectrum(path, spec):
    with open(path, "w") as fh:
        fh.write("detuning_GHz,density\n")
        for om, d in zip(spec.detunings, spec.density):
            fh.write(f"{om / GHZ:.17g},{d:.17g}\n")


def _write_samples(path, samples):
    with open(path, "w") as fh:
        fh.write("s_hat\n")
        for v in samples.values:
            fh.write(f"{v:.17g}\n")


def write_report(report: RunReport, out_dir, emit_samples=False,
                 emit_pulse=True):
    """Serialize a run's outputs into out_dir (created if missing)."""
    os.makedirs(out_dir, exist_ok=True)
    _write_histogram(os.path.join(out_dir, "histogram.csv"), report.histogram)
    if report.histogram_filtered is not None:
        _write_histogram(os.path.join(out_dir, "histogram_filtered.csv"),
                         report.histogram_filtered)
    if emit_pulse:
        _write_pulse(os.path.join(out_dir, "pulse.csv"), report.pulse)
        if report.pulse_filtered is not None:
            _write_pulse(os.path.join(out_dir, "pulse_filtered.csv"),
                         report.pulse_filtered)
    if report.spectrum is not None:
        _write_spectrum(os.path.join(out_dir, "spectrum.csv"),
                        report.spectrum)
    if report.spectrum_filtered is not None:
        _write_spectrum(os.path.join(out_dir, "spectrum_filtered.csv"),
                        report.spectrum_filtered)
    if emit_samples:
        _write_samples(os.path.join(out_dir, "samples.csv"), report.samples)
        if report.samples_filtered is not None:
            _write_samples(os.path.join(out_dir, "samples_filtered.csv"),
                           report.samples_filtered)

    meta = {
        "label": report.label,
        "config": report.echo,
        "pulse": report.pulse_summary,
        "peaks": [{"location": loc, "height": h} for loc, h in report.peaks],
        "peak_count": len(report.peaks),
        "bimodal": len(report.peaks) == 2,
        "diagnostics": report.diagnostics,
    }
    if report.pulse_summary_filtered is not None:
        meta["pulse_filtered"] = report.pulse_summary_filtered
        meta["peaks_filtered"] = [{"location": loc, "height": h}
                                  for loc, h in report.peaks_filtered]
        meta["peak_count_filtered"] = len(report.peaks_filtered)
    with open(os.path.join(out_dir, "run.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
