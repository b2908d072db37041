"""Closed-form results for Gaussian pulses, used to cross-check the pipeline.

A Gaussian pulse of rms width delta with a linear chirp (detuning slope
-beta) admits an exact expression for the normalized two-pulse interference
integral: s1 + s2 + 2 eta sqrt(s1 s2) cos(dPhi), with an overlap visibility
eta that decays Gaussianly in the shift and is amplified by chirp.  These
functions are the independent reference the numerical pipeline is verified
against.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from .dynamics import PulseWindow
from .errors import DomainError, ValidationError
from .params import InterferometerParams


@dataclass(frozen=True)
class GaussianPulse:
    """Gaussian power profile with an optional linear chirp.

    rms_width is the rms width of the power envelope; chirp_rate is the
    magnitude of the linear detuning slope (detuning = -chirp_rate * t).
    """

    rms_width: float    # s
    peak_power: float   # W
    chirp_rate: float = 0.0  # rad/s^2

    def __post_init__(self):
        if not self.rms_width > 0:
            raise ValidationError("rms_width must be > 0")
        if not self.peak_power > 0:
            raise ValidationError("peak_power must be > 0")


def gaussian_power(t, pulse: GaussianPulse):
    """Power at time t (scalar or array)."""
    return pulse.peak_power * np.exp(-np.square(t) / (2 * pulse.rms_width**2))


def linear_chirp_phase(t, pulse: GaussianPulse):
    """Phase -beta t^2 / 2, whose derivative is the detuning -beta t."""
    return -0.5 * pulse.chirp_rate * np.square(t)


def chirp_rate(alpha, rms_width):
    """Linear detuning slope alpha / (2 delta^2) of a chirped Gaussian pulse."""
    if not rms_width > 0:
        raise ValidationError("rms_width must be > 0")
    return alpha / (2 * rms_width**2)


def interference_signal(s1, s2, visibility, phase_diff):
    """Normalized two-pulse interference integral.

    s1, s2 are the normalized single-arm integrals, visibility the fringe
    amplitude factor in [0, 1].
    """
    if np.any(np.asarray(s1) < 0) or np.any(np.asarray(s2) < 0):
        raise ValidationError("s1 and s2 must be >= 0")
    vis = np.asarray(visibility)
    if np.any(vis < 0) or np.any(vis > 1):
        raise ValidationError("visibility must be in [0, 1]")
    return s1 + s2 + 2 * visibility * np.sqrt(s1 * s2) * np.cos(phase_diff)


def visibility_chirpless(time_shift, rms_width):
    """Overlap visibility of two identical chirp-free Gaussian pulses."""
    return np.exp(-np.square(time_shift) / (8 * rms_width**2))


def visibility_chirped(time_shift, rms_width, alpha):
    """Overlap visibility with a linear chirp of Henry factor alpha.

    Equals the chirp-free visibility evaluated at the shift amplified by
    sqrt(1 + alpha^2).
    """
    return np.exp(-(1 + alpha**2) * np.square(time_shift)
                  / (8 * rms_width**2))


def arcsine_density(s):
    """Limit density 1 / (pi sqrt(s (4 - s))) of the ideal fringe signal.

    Valid on the open interval (0, 4): full visibility, equal arms, phase
    uniform modulo 2 pi.
    """
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0) or np.any(s >= 4):
        raise DomainError("arcsine_density is defined on (0, 4)")
    return 1.0 / (np.pi * np.sqrt(s * (4.0 - s)))


def arcsine_cdf(s):
    """CDF of the arcsine limit law, clamped to [0, 1] outside [0, 4]."""
    s = np.clip(np.asarray(s, dtype=float), 0.0, 4.0)
    return (2.0 / np.pi) * np.arcsin(np.sqrt(s / 4.0))


def gaussian_pulse_window(pulse: GaussianPulse, duration=400e-12,
                          dt=0.05e-12):
    """Sample a synthetic Gaussian pulse onto a uniform window.

    The window must span at least 10 rms widths so truncation is negligible
    relative to the closed forms.
    """
    if duration < 10 * pulse.rms_width:
        raise ValidationError("window must span >= 10 rms widths")
    n = int(round(duration / dt))
    times = np.arange(n) * dt - duration / 2
    return PulseWindow(times=times,
                       power=gaussian_power(times, pulse),
                       phase=linear_chirp_phase(times, pulse),
                       carriers=np.zeros(n))


def fit_gaussian(pulse: PulseWindow, core_fraction=0.5):
    """Least-squares Gaussian fit of a pulse's power profile.

    Only samples above core_fraction of the peak enter the fit, because the
    width is used in local relations (chirp slope) that hold around the peak.
    Returns (amplitude, center, rms_width).
    """
    p = pulse.power
    mask = p >= core_fraction * p.max()
    t = pulse.times[mask]
    y = p[mask]

    def model(x, a, t0, d):
        return a * np.exp(-(x - t0)**2 / (2 * d**2))

    # moment-based starting point
    w = p / p.sum()
    mean = float((w * pulse.times).sum())
    width = math.sqrt(float((w * (pulse.times - mean)**2).sum()))
    popt, _ = curve_fit(model, t, y, p0=[p.max(), mean, width])
    a, t0, d = popt
    return float(a), float(t0), abs(float(d))


def power_fwhm(pulse: PulseWindow):
    """Full width at half maximum of the power profile, via linear
    interpolation of the half-level crossings around the main peak."""
    p = pulse.power
    t = pulse.times
    half = 0.5 * p.max()
    pk = int(p.argmax())
    i = pk
    while i > 0 and p[i - 1] >= half:
        i -= 1
    if i == 0:
        t_lo = t[0]
    else:
        frac = (half - p[i - 1]) / (p[i] - p[i - 1])
        t_lo = t[i - 1] + frac * (t[i] - t[i - 1])
    j = pk
    n = len(p)
    while j < n - 1 and p[j + 1] >= half:
        j += 1
    if j == n - 1:
        t_hi = t[-1]
    else:
        frac = (p[j] - half) / (p[j] - p[j + 1])
        t_hi = t[j] + frac * (t[j + 1] - t[j])
    return float(t_hi - t_lo)


def closed_form_check(pulse: GaussianPulse, draw, iface: InterferometerParams,
                      delta_theta=0.0, duration=400e-12, dt=0.05e-12):
    """Run one draw through the full numerical pipeline on a synthetic
    Gaussian pulse and compare with the closed form.

    Returns (numeric, analytic, relative error); the relative error uses a
    1e-9 floor in the denominator so the exactly-destructive point does not
    divide by zero.
    """
    # imported here: interference depends on dynamics, not on this module,
    # but the check itself needs the pipeline
    from .interference import (add_detector_noise, arm_ratio, integral_signal,
                               pair_signal)

    window = gaussian_pulse_window(pulse, duration=duration, dt=dt)
    trace = pair_signal(window, draw, iface, delta_theta)
    numeric = add_detector_noise(integral_signal(trace, window, iface),
                                 draw.detector_noise)

    alpha = pulse.chirp_rate * 2 * pulse.rms_width**2
    eta = visibility_chirped(draw.time_shift, pulse.rms_width, alpha)
    s1 = max(draw.scale1, 0.0)
    s2 = arm_ratio(iface) * max(draw.scale2, 0.0)
    dphi = draw.phase2 - draw.phase1 + delta_theta
    analytic = float(interference_signal(s1, s2, eta, dphi))
    analytic += draw.detector_noise

    rel_err = abs(numeric - analytic) / max(abs(analytic), 1e-9)
    return numeric, analytic, rel_err
