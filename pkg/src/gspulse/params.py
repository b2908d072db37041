"""Parameter records for the laser, pump, interferometer, and Monte-Carlo run.

All quantities are SI unless a field name says otherwise.  Records are frozen;
invariants are enforced at construction time and raise ValidationError naming
the violated condition.
"""

import math
from dataclasses import dataclass

from .errors import ValidationError


def _require(cond, message):
    if not cond:
        raise ValidationError(message)


@dataclass(frozen=True)
class LaserParams:
    """Single-mode laser constants.

    carrier_threshold / carrier_transparency are total carrier numbers (not
    densities); gain_compression multiplies the emitted power in watts.
    """

    carrier_threshold: float   # N at threshold, dimensionless count
    carrier_transparency: float  # N at transparency
    spontaneous_fraction: float  # fraction of spontaneous emission in the mode
    confinement: float         # mode confinement factor
    quantum_output: float      # differential quantum output
    electron_lifetime: float   # s
    photon_lifetime: float     # s
    henry_alpha: float         # linewidth enhancement factor, may be 0
    gain_compression: float    # 1/W
    carrier_angular_freq: float  # rad/s

    def __post_init__(self):
        _require(self.carrier_transparency > 0,
                 "carrier_transparency must be > 0")
        _require(self.carrier_threshold > self.carrier_transparency,
                 "carrier_threshold must exceed carrier_transparency")
        _require(self.electron_lifetime > 0, "electron_lifetime must be > 0")
        _require(self.photon_lifetime > 0, "photon_lifetime must be > 0")
        _require(0 < self.confinement <= 1, "confinement must be in (0, 1]")
        _require(0 < self.quantum_output <= 1,
                 "quantum_output must be in (0, 1]")
        _require(self.spontaneous_fraction >= 0,
                 "spontaneous_fraction must be >= 0")
        _require(self.gain_compression >= 0, "gain_compression must be >= 0")
        _require(self.carrier_angular_freq > 0,
                 "carrier_angular_freq must be > 0")
        _require(math.isfinite(self.henry_alpha), "henry_alpha must be finite")


@dataclass(frozen=True)
class PumpTrain:
    """Rectangular pump current train: bias + peak current inside each pulse."""

    bias: float       # A, current outside the pulse
    peak: float       # A, added current inside the pulse
    width: float      # s, electrical pulse width
    mod_freq: float   # rad/s, repetition angular frequency

    def __post_init__(self):
        _require(self.bias >= 0, "bias must be >= 0")
        _require(self.peak >= 0, "peak must be >= 0")
        _require(self.mod_freq > 0, "mod_freq must be > 0")
        _require(0 < self.width < self.period,
                 "width must lie in (0, repetition period)")

    @property
    def period(self):
        return 2 * math.pi / self.mod_freq


@dataclass(frozen=True)
class SimGrid:
    """Fixed-step integration grid measured in pump periods."""

    dt: float                 # s, requested step (snapped to divide the period)
    n_periods_warmup: int     # periods discarded as transient
    n_periods_total: int      # periods integrated in total

    def __post_init__(self):
        _require(self.dt > 0, "dt must be > 0")
        _require(self.n_periods_warmup >= 1, "n_periods_warmup must be >= 1")
        _require(self.n_periods_total > self.n_periods_warmup,
                 "n_periods_total must exceed n_periods_warmup")


@dataclass(frozen=True)
class InterferometerParams:
    """Unbalanced two-arm interferometer with a multi-period fiber delay.

    coupler_t1 / coupler_t2 are round-trip coupler transmittance products for
    the short and long arm (0.25 each for an ideal 50:50 coupler).
    """

    coupler_t1: float = 0.25
    coupler_t2: float = 0.25
    loss_a1: float = 0.0
    loss_a2: float = 0.0
    pulses_in_delay: int = 32
    fiber_index: float = 1.47
    group_index: float = 1.5

    def __post_init__(self):
        _require(0 < self.coupler_t1 <= 0.25,
                 "coupler_t1 must be in (0, 0.25]")
        _require(0 < self.coupler_t2 <= 0.25,
                 "coupler_t2 must be in (0, 0.25]")
        _require(0 <= self.loss_a1 < 1, "loss_a1 must be in [0, 1)")
        _require(0 <= self.loss_a2 < 1, "loss_a2 must be in [0, 1)")
        _require(self.pulses_in_delay >= 1, "pulses_in_delay must be >= 1")
        _require(self.fiber_index > 1, "fiber_index must be > 1")
        _require(self.group_index > 1, "group_index must be > 1")


@dataclass(frozen=True)
class NoiseModel:
    """Widths of the per-shot stochastic variables.

    jitter_rms is the rms of the overlap inaccuracy between the interfering
    pulses, amplitude_rms the rms of the pulse-energy scale factors around 1,
    phase_rms the rms of each pulse's start phase, and detector_rms the rms of
    additive detection noise in normalized-signal units.
    """

    jitter_rms: float = 10e-12
    amplitude_rms: float = 0.05
    phase_rms: float = 2 * math.pi
    detector_rms: float = 0.05

    def __post_init__(self):
        for name in ("jitter_rms", "amplitude_rms", "phase_rms",
                     "detector_rms"):
            _require(getattr(self, name) >= 0, f"{name} must be >= 0")


@dataclass(frozen=True)
class McConfig:
    """Monte-Carlo run: sample count, RNG seed, fixed interferometer phase."""

    iterations: int = 100_000
    seed: int = 20210905
    delta_theta: float = 0.0   # rad, deterministic arm phase difference

    def __post_init__(self):
        _require(self.iterations >= 1, "iterations must be >= 1")
        _require(0 <= self.seed < 2**64, "seed must fit in 64 bits")


@dataclass(frozen=True)
class BandpassFilter:
    """Flat-top (super-Gaussian) optical bandpass filter.

    fwhm is the full width at half maximum of the *power* transmission;
    shape_order 1 gives a Gaussian filter, higher orders flatten the top.
    """

    center_detuning: float            # rad/s relative to the carrier
    fwhm: float = 2 * math.pi * 100e9  # rad/s
    shape_order: int = 4

    def __post_init__(self):
        _require(self.fwhm > 0, "fwhm must be > 0")
        _require(self.shape_order >= 1, "shape_order must be >= 1")


def default_laser_params(**overrides):
    """Laser constants of the simulated telecom DFB diode.

    Defaults correspond to a 193.63 THz (1548 nm) single-mode device with a
    1 ps cavity photon lifetime; keyword overrides replace individual fields.
    """
    base = dict(
        carrier_threshold=6.5e7,
        carrier_transparency=5.0e7,
        spontaneous_fraction=1e-5,
        confinement=0.12,
        quantum_output=0.3,
        electron_lifetime=1.0e-9,
        photon_lifetime=1.0e-12,
        henry_alpha=0.0,
        gain_compression=25.0,
        carrier_angular_freq=2 * math.pi * 193.63e12,
    )
    base.update(overrides)
    return LaserParams(**base)


def default_pump_train(**overrides):
    """2.5 GHz rectangular pump train, 200 ps wide pulses, 7 mA bias."""
    base = dict(bias=7e-3, peak=10e-3, width=200e-12,
                mod_freq=2 * math.pi * 2.5e9)
    base.update(overrides)
    return PumpTrain(**base)


def default_sim_grid(**overrides):
    """50 fs step, 20 warmup periods, 24 periods total."""
    base = dict(dt=0.05e-12, n_periods_warmup=20, n_periods_total=24)
    base.update(overrides)
    return SimGrid(**base)
