"""Two-pulse interference signal and its Monte-Carlo statistics.

Each Monte-Carlo iteration draws six independent Gaussians (overlap shift,
two start phases, two pulse-energy scales, detector noise), forms the
interference intensity of the pulse with a shifted copy of itself, integrates
it over the window, and normalizes by the unfluctuated short-arm pulse
energy.  Per-iteration randomness comes from a counter-based generator keyed
by (seed, iteration index), so results are bit-identical for any execution
order, batch size, or worker count.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator, Philox

from .dynamics import PulseWindow
from .errors import ShiftTooLarge, ValidationError, ZeroDenominator
from .params import InterferometerParams, McConfig, NoiseModel

# Fraction of draws allowed to exceed the shift bound before the run aborts.
MAX_SKIP_FRACTION = 1e-3


@dataclass(frozen=True)
class DrawSample:
    """One iteration's stochastic variables.

    time_shift is the overlap inaccuracy of the delayed pulse; phase1/phase2
    the start phases of the two pulses; scale1/scale2 the pulse-energy scale
    factors (mean 1); detector_noise the additive readout noise.  Values are
    raw Gaussian draws: a (vanishingly rare) negative scale is clamped to
    zero at use, not here.
    """

    time_shift: float
    phase1: float
    phase2: float
    scale1: float
    scale2: float
    detector_noise: float


@dataclass(frozen=True)
class SignalSamples:
    """Monte-Carlo collection of normalized integral signals."""

    values: np.ndarray
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Histogram:
    """Equal-width histogram with a density normalized to unit integral."""

    bin_edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        if len(self.bin_edges) != len(self.counts) + 1:
            raise ValidationError("bin_edges must have len(counts) + 1 entries")

    @property
    def centers(self):
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])


def arm_ratio(iface: InterferometerParams):
    """Transmission ratio long arm / short arm (1 for a symmetric setup)."""
    return ((1.0 - iface.loss_a2) * iface.coupler_t2
            / ((1.0 - iface.loss_a1) * iface.coupler_t1))


def delay_length(n_pulses, mod_freq, group_index, light_speed=299792458.0):
    """One-way fiber delay length that makes pulse i meet pulse i + n_pulses.

    mod_freq is the repetition angular frequency; the pulses traverse the
    delay twice (folded arm), hence the factor pi rather than 2 pi.
    """
    if n_pulses < 1:
        raise ValidationError("n_pulses must be >= 1")
    if mod_freq <= 0:
        raise ValidationError("mod_freq must be > 0")
    return math.pi * n_pulses * light_speed / (mod_freq * group_index)


def iteration_rng(seed, index):
    """Counter-based generator for one Monte-Carlo iteration.

    Each iteration owns a disjoint 2^128-block region of the Philox counter
    space, so streams never overlap and depend only on (seed, index).
    """
    return Generator(Philox(key=seed, counter=index << 128))


def sample_draw(rng, noise: NoiseModel):
    """Draw the six independent stochastic variables for one iteration.

    Order is fixed (shift, phase1, phase2, scale1, scale2, detector) so a
    given generator state always yields the same draw.
    """
    z = rng.standard_normal(6)
    return DrawSample(time_shift=noise.jitter_rms * z[0],
                      phase1=noise.phase_rms * z[1],
                      phase2=noise.phase_rms * z[2],
                      scale1=1.0 + noise.amplitude_rms * z[3],
                      scale2=1.0 + noise.amplitude_rms * z[4],
                      detector_noise=noise.detector_rms * z[5])


class _PairEngine:
    """Precomputed machinery for evaluating draws against one pulse.

    Holds edge-padded power/phase arrays so the delayed copy is a constant
    fractional shift evaluated by linear interpolation, with out-of-window
    samples held at the window-edge values.
    """

    def __init__(self, pulse: PulseWindow, iface: InterferometerParams,
                 delta_theta=0.0):
        self.pulse = pulse
        self.dt = pulse.dt
        self.n = len(pulse.times)
        self.span = pulse.span
        self.c1 = (1.0 - iface.loss_a1) * iface.coupler_t1
        self.c2 = (1.0 - iface.loss_a2) * iface.coupler_t2
        self.delta_theta = delta_theta
        p = pulse.power
        ph = pulse.phase
        self._ppad = np.concatenate((np.full(self.n, p[0]), p,
                                     np.full(self.n + 1, p[-1])))
        self._phpad = np.concatenate((np.full(self.n, ph[0]), ph,
                                      np.full(self.n + 1, ph[-1])))
        self.denominator = float(np.trapezoid(self.c1 * p, dx=self.dt))
        self._weights = _trapezoid_weights(self.n, self.dt)

    def check_shift(self, time_shift):
        if abs(time_shift) >= self.span / 4:
            raise ShiftTooLarge(
                f"|time_shift| = {abs(time_shift):.3e} s exceeds a quarter "
                f"window ({self.span / 4:.3e} s)")

    def shifted(self, time_shift):
        """Power and phase of the delayed copy on the common grid."""
        s = time_shift / self.dt
        k = math.floor(-s)
        f = -s - k
        a = self.n + k
        p2 = ((1.0 - f) * self._ppad[a:a + self.n]
              + f * self._ppad[a + 1:a + 1 + self.n])
        ph2 = ((1.0 - f) * self._phpad[a:a + self.n]
               + f * self._phpad[a + 1:a + 1 + self.n])
        return p2, ph2

    def signal(self, draw: DrawSample):
        """Interference intensity trace for one draw."""
        self.check_shift(draw.time_shift)
        p2, ph2 = self.shifted(draw.time_shift)
        s1 = max(draw.scale1, 0.0)
        s2 = max(draw.scale2, 0.0)
        a1 = (self.c1 * s1) * self.pulse.power
        a2 = (self.c2 * s2) * p2
        dphase = (self.pulse.phase - ph2) \
            + (draw.phase1 - draw.phase2 - self.delta_theta)
        return a1 + a2 + 2.0 * np.sqrt(a1 * a2) * np.cos(dphase)

    def integral(self, trace):
        if self.denominator == 0.0:
            raise ZeroDenominator("short-arm pulse energy is zero")
        return float(np.dot(trace, self._weights)) / self.denominator


def pair_signal(pulse: PulseWindow, draw: DrawSample,
                iface: InterferometerParams, delta_theta=0.0):
    """Interference intensity trace of the pulse with its delayed copy.

    Expands |E1 + E2|^2 into powers and the cosine of the phase difference;
    only the phase difference of the two arms enters, and no extra carrier
    phase is attached to the shift.  The delayed copy is linearly
    interpolated; samples shifted past the window keep the edge values.

    Raises ShiftTooLarge when |time_shift| >= a quarter window.
    """
    return _PairEngine(pulse, iface, delta_theta).signal(draw)


def _trapezoid_weights(n, dt):
    w = np.full(n, dt)
    w[0] = w[-1] = 0.5 * dt
    return w


def integral_signal(trace, pulse: PulseWindow, iface: InterferometerParams,
                    reference_scale=1.0):
    """Window integral of a signal trace normalized by the short-arm pulse.

    The denominator uses the *unfluctuated* short-arm pulse (scale factor
    reference_scale, default 1), so a lone short-arm pulse with scale s
    integrates to exactly s.
    """
    c1 = (1.0 - iface.loss_a1) * iface.coupler_t1
    denom = reference_scale * float(np.trapezoid(c1 * pulse.power,
                                                 dx=pulse.dt))
    if denom == 0.0:
        raise ZeroDenominator("short-arm pulse energy is zero")
    weights = _trapezoid_weights(len(trace), pulse.dt)
    return float(np.dot(trace, weights)) / denom


def add_detector_noise(value, noise_value):
    """Additive detection noise on the normalized integral signal."""
    return value + noise_value


def run_monte_carlo(pulse: PulseWindow, iface: InterferometerParams,
                    noise: NoiseModel, config: McConfig, n_workers=1,
                    batch_size=2048):
    """Estimate the distribution of the normalized interference integral.

    Iterations map independent draws through the pair-signal / integral /
    detector-noise chain.  Draw i depends only on (seed, i), and batches
    write disjoint slices of the output, so the result is bit-identical for
    any n_workers and batch_size.

    Draws whose shift exceeds the quarter-window bound are skipped and
    counted; the run aborts with ShiftTooLarge when more than 0.1 % of the
    draws are skipped.

    Worker threads only change scheduling, never values; any speedup is
    platform-dependent (the per-draw kernel is NumPy-call bound), so the
    count is capped at the machine's core count.
    """
    n_workers = max(1, min(n_workers, os.cpu_count() or 1))
    engine = _PairEngine(pulse, iface, config.delta_theta)
    if engine.denominator == 0.0:
        raise ZeroDenominator("short-arm pulse energy is zero")
    n_iter = config.iterations
    values = np.empty(n_iter)
    skip_flags = np.zeros(n_iter, dtype=bool)
    clamp_flags = np.zeros(n_iter, dtype=bool)
    bound = engine.span / 4

    step = max(batch_size, 1)
    spans = [(start, min(start + step, n_iter))
             for start in range(0, n_iter, step)]
    draw_sums = np.zeros((len(spans), 6))

    def work(batch_id, start, stop):
        acc = np.zeros(6)
        for i in range(start, stop):
            d = sample_draw(iteration_rng(config.seed, i), noise)
            acc += (d.time_shift, d.phase1, d.phase2, d.scale1, d.scale2,
                    d.detector_noise)
            if d.scale1 < 0 or d.scale2 < 0:
                clamp_flags[i] = True
            if abs(d.time_shift) >= bound:
                skip_flags[i] = True
                values[i] = np.nan
                continue
            shat = engine.integral(engine.signal(d))
            values[i] = add_detector_noise(shat, d.detector_noise)
        draw_sums[batch_id] = acc

    if n_workers <= 1:
        for k, (start, stop) in enumerate(spans):
            work(k, start, stop)
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            futures = [pool.submit(work, k, start, stop)
                       for k, (start, stop) in enumerate(spans)]
            for fut in futures:
                fut.result()

    n_skipped = int(skip_flags.sum())
    if n_skipped > MAX_SKIP_FRACTION * n_iter:
        raise ShiftTooLarge(
            f"{n_skipped} of {n_iter} draws exceeded the shift bound "
            f"(limit {MAX_SKIP_FRACTION:.1%})")
    if n_skipped:
        values = values[~skip_flags]

    means = draw_sums.sum(axis=0) / n_iter
    metadata = {
        "iterations": n_iter,
        "seed": config.seed,
        "delta_theta": config.delta_theta,
        "skipped": n_skipped,
        "scale_clamps": int(clamp_flags.sum()),
        "draw_means": {
            "time_shift": means[0], "phase1": means[1], "phase2": means[2],
            "scale1": means[3], "scale2": means[4], "detector": means[5],
        },
    }
    return SignalSamples(values=values, metadata=metadata)


def estimate_pdf(samples: SignalSamples, n_bins=200):
    """Equal-width histogram over [min, max] with a unit-integral density.

    A degenerate sample set (max == min) yields a flagged single-bin
    histogram of width 1 centered on the value.
    """
    if n_bins < 2:
        raise ValidationError("n_bins must be >= 2")
    vals = np.asarray(samples.values, dtype=float)
    lo, hi = float(vals.min()), float(vals.max())
    edges = np.linspace(lo, hi, n_bins + 1)
    # a range too narrow for distinct bin edges counts as degenerate too
    if lo == hi or not np.all(np.diff(edges) > 0):
        mid = 0.5 * (lo + hi)
        edges = np.array([mid - 0.5, mid + 0.5])
        counts = np.array([len(vals)])
        density = np.array([1.0])
        return Histogram(bin_edges=edges, counts=counts, density=density,
                         degenerate=True)
    counts, _ = np.histogram(vals, bins=edges)
    widths = np.diff(edges)
    density = counts / (counts.sum() * widths)
    return Histogram(bin_edges=edges, counts=counts, density=density)
