"""Optical spectra of the complex pulse field and bandpass filtering.

The complex field sqrt(P) exp(i phi) is transformed on its window; the
detuning axis is relative to the carrier, with positive detunings on the
blue side.  Filtering happens in the frequency domain on the unpadded grid,
which treats the window as one period of the pulse train.
"""

from dataclasses import dataclass

import numpy as np

from .dynamics import PulseWindow
from .errors import NonuniformGrid, ValidationError
from .params import BandpassFilter

# Power below this fraction of the peak carries no usable phase.
PHASE_POWER_FLOOR = 1e-9


@dataclass(frozen=True)
class ComplexFieldTrace:
    """Complex field amplitude on a uniform time grid."""

    times: np.ndarray
    amplitude: np.ndarray

    def __post_init__(self):
        if len(self.times) != len(self.amplitude):
            raise ValidationError("times and amplitude must share a length")
        _check_uniform(self.times)

    @property
    def dt(self):
        return float(self.times[1] - self.times[0])

    def energy(self):
        """Window-summed field energy (discrete sum, J)."""
        return float(np.sum(np.abs(self.amplitude) ** 2) * self.dt)


@dataclass(frozen=True)
class Spectrum:
    """Power spectrum on a symmetric detuning grid, normalized to unit sum.

    energy is the window field energy computed in the frequency domain
    (discrete Parseval pairing of ComplexFieldTrace.energy).
    """

    detunings: np.ndarray   # rad/s relative to the carrier
    density: np.ndarray     # unit-sum spectral weights
    energy: float

    def __post_init__(self):
        if len(self.detunings) != len(self.density):
            raise ValidationError("detunings and density must share a length")
        if (self.density < 0).any():
            raise ValidationError("density must be nonnegative")


def _check_uniform(times):
    steps = np.diff(times)
    if len(steps) == 0 or not (steps > 0).all() \
            or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise NonuniformGrid("operation requires a uniform time grid")


def field_from_pulse(pulse: PulseWindow):
    """Complex field amplitude sqrt(P) exp(i phi) of a pulse window."""
    amp = np.sqrt(pulse.power) * np.exp(1j * pulse.phase)
    return ComplexFieldTrace(times=pulse.times.copy(), amplitude=amp)


def power_spectrum(field: ComplexFieldTrace, pad_factor=4):
    """Power spectrum of the field, zero-padded for display smoothness.

    Zero-padding to pad_factor times the trace length interpolates the
    spectrum; the lowest (asymmetric Nyquist) bin is dropped so the detuning
    grid is symmetric about zero.
    """
    _check_uniform(field.times)
    n = len(field.times)
    nfft = int(pad_factor) * n
    coeffs = np.fft.fft(field.amplitude, n=nfft)
    power = np.abs(coeffs) ** 2
    detuning = 2 * np.pi * np.fft.fftfreq(nfft, field.dt)
    power = np.fft.fftshift(power)
    detuning = np.fft.fftshift(detuning)
    # drop the unpaired -Nyquist bin (index 0 after the shift)
    power = power[1:]
    detuning = detuning[1:]
    energy = float(power.sum()) * field.dt / nfft
    total = power.sum()
    if total == 0.0:
        raise ValidationError("field carries no energy")
    return Spectrum(detunings=detuning, density=power / total, energy=energy)


def spectral_centroid(spec: Spectrum):
    """Density-weighted mean detuning (rad/s)."""
    return float(np.dot(spec.density, spec.detunings))


def spectral_mode(spec: Spectrum):
    """Detuning of the strongest spectral bin (rad/s)."""
    return float(spec.detunings[int(np.argmax(spec.density))])


def filter_transmission(detuning, bpf: BandpassFilter):
    """Amplitude transmission of the flat-top filter at the given detunings.

    Unit peak; the *power* transmission falls to 1/2 at center +- fwhm/2.
    """
    x = 2.0 * (np.asarray(detuning) - bpf.center_detuning) / bpf.fwhm
    return np.exp(-0.5 * np.log(2.0) * (x * x) ** bpf.shape_order)


def apply_filter(field: ComplexFieldTrace, bpf: BandpassFilter):
    """Pass the field through the bandpass filter.

    The transform is taken on the unpadded window grid, so the filter acts
    on the pulse train's discrete spectrum (window = one period).
    """
    _check_uniform(field.times)
    n = len(field.times)
    coeffs = np.fft.fft(field.amplitude)
    detuning = 2 * np.pi * np.fft.fftfreq(n, field.dt)
    out = np.fft.ifft(coeffs * filter_transmission(detuning, bpf))
    return ComplexFieldTrace(times=field.times.copy(), amplitude=out)


def filtered_pulse(field: ComplexFieldTrace):
    """Reconstruct a PulseWindow (power and unwrapped phase) from a field.

    Where the power falls below PHASE_POWER_FLOOR of the peak the phase is
    meaningless; those samples hold the last valid phase (the first valid
    one at the leading edge).
    """
    power = np.abs(field.amplitude) ** 2
    phase = np.unwrap(np.angle(field.amplitude))
    floor = PHASE_POWER_FLOOR * power.max()
    valid = power >= floor
    if valid.any() and not valid.all():
        idx = np.where(valid, np.arange(len(valid)), -1)
        last = np.maximum.accumulate(idx)
        first_valid = int(np.argmax(valid))
        last[last < 0] = first_valid
        phase = phase[last]
    return PulseWindow(times=field.times.copy(), power=power, phase=phase,
                       carriers=np.zeros(len(power)))
