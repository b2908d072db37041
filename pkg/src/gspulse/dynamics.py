"""Gain-switched laser dynamics: rate equations and pulse extraction.

The state (Q, phi, N) holds the intracavity photon number, the optical phase
relative to the carrier, and the total carrier number.  The three coupled
equations are

    dQ/dt   = (G - 1) Q / tau_ph + C_sp N / tau_e
    dphi/dt = (alpha / 2 tau_ph) (G_L - 1)
    dN/dt   = I/e - N / tau_e - Q G / (Gamma tau_ph)

with the linear gain G_L = (N - N_0)/(N_th - N_0) and the saturated gain
G = G_L (1 - chi P) evaluated at the emitted power P.  Note the asymmetry:
the photon and carrier equations use the saturated gain, the phase equation
the linear gain.  All stochasticity lives downstream in the interference
layer; these equations are deterministic.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA
from .errors import InsufficientWarmup, NonFiniteState, ValidationError
from .params import LaserParams, PumpTrain, SimGrid


@dataclass(frozen=True)
class LaserState:
    """Instantaneous laser state."""

    photon_number: float
    optical_phase: float
    carrier_number: float

    def __post_init__(self):
        if not (self.photon_number >= 0):
            raise ValidationError("photon_number must be >= 0")
        if not (self.carrier_number >= 0):
            raise ValidationError("carrier_number must be >= 0")
        if not math.isfinite(self.optical_phase):
            raise ValidationError("optical_phase must be finite")


@dataclass(frozen=True)
class Trajectory:
    """Integrated state arrays on the fixed grid, plus diagnostics.

    times[0] = 0; arrays include both endpoints of the integration span.
    steps_per_period * dt is the exact repetition period used (dt is snapped
    so an integer number of steps covers one period).
    """

    times: np.ndarray
    photon_number: np.ndarray
    optical_phase: np.ndarray
    carrier_number: np.ndarray
    dt: float
    steps_per_period: int
    n_periods: int
    clamp_count: int          # negative-photon clamps applied
    clamp_last_step: int      # step index of the latest clamp, -1 if none


@dataclass(frozen=True)
class PulseWindow:
    """One repetition period of emitted power and phase, pump pulse centered.

    times span [-T/2, T/2) on a uniform grid; phase is unwrapped exactly as
    integrated (no modular reduction).
    """

    times: np.ndarray
    power: np.ndarray
    phase: np.ndarray
    carriers: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        if n < 64:
            raise ValidationError("PulseWindow needs >= 64 samples")
        if not (len(self.power) == len(self.phase) == len(self.carriers) == n):
            raise ValidationError("PulseWindow arrays must share one length")
        steps = np.diff(self.times)
        if not (steps > 0).all():
            raise ValidationError("times must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise ValidationError("times must be uniformly spaced")
        if (self.power < 0).any():
            raise ValidationError("power must be nonnegative")

    @property
    def dt(self):
        return float(self.times[1] - self.times[0])

    @property
    def span(self):
        """Window duration (one repetition period)."""
        return self.dt * len(self.times)

    def energy(self):
        """Window-integrated pulse energy in J (trapezoidal)."""
        return float(np.trapezoid(self.power, dx=self.dt))


def linear_gain(carrier_number, params: LaserParams):
    """Dimensionless linear gain, 1 at threshold and 0 at transparency.

    Negative values below transparency are meaningful (absorption).
    """
    return ((carrier_number - params.carrier_transparency)
            / (params.carrier_threshold - params.carrier_transparency))


def saturated_gain(linear, power, gain_compression):
    """Gain reduced by compression at emitted power `power` (W)."""
    return linear * (1.0 - gain_compression * power)


def photon_to_power(photon_number, params: LaserParams):
    """Emitted single-facet power in W for a given intracavity photon number."""
    coef = (params.quantum_output * CODATA.reduced_planck
            * params.carrier_angular_freq
            / (2 * params.confinement * params.photon_lifetime))
    return photon_number * coef


def pump_current(t, train: PumpTrain):
    """Pump current at time t (scalar or array), periodic rectangular train.

    The pulse occupies the center of each period: it is on for
    t mod T in [T/2 - w/2, T/2 + w/2).
    """
    period = train.period
    tmod = np.mod(t, period)
    on = ((tmod >= 0.5 * (period - train.width))
          & (tmod < 0.5 * (period + train.width)))
    return np.where(on, train.bias + train.peak, train.bias)


def rate_derivatives(state: LaserState, current, params: LaserParams):
    """Time derivatives (dQ/dt, dphi/dt, dN/dt) at the given state and current."""
    dq, dphi, dn = _derivs(state.photon_number, state.carrier_number,
                           current, params, _power_coef(params))
    return dq, dphi, dn


def _power_coef(params):
    return (params.quantum_output * CODATA.reduced_planck
            * params.carrier_angular_freq
            / (2 * params.confinement * params.photon_lifetime))


def _derivs(q, n, current, params, power_coef):
    gl = ((n - params.carrier_transparency)
          / (params.carrier_threshold - params.carrier_transparency))
    g = gl * (1.0 - params.gain_compression * (q * power_coef))
    dq = (g - 1.0) * q / params.photon_lifetime \
        + params.spontaneous_fraction * n / params.electron_lifetime
    dphi = (params.henry_alpha / (2.0 * params.photon_lifetime)) * (gl - 1.0)
    dn = current / CODATA.electron_charge - n / params.electron_lifetime \
        - q * g / (params.confinement * params.photon_lifetime)
    return dq, dphi, dn


def default_initial_state(params: LaserParams, train: PumpTrain):
    """Below-threshold start: carrier balance at the bias current, a
    spontaneously seeded photon number, zero phase."""
    n0 = train.bias * params.electron_lifetime / CODATA.electron_charge
    q0 = (params.spontaneous_fraction * n0 * params.photon_lifetime
          / params.electron_lifetime)
    return LaserState(photon_number=q0, optical_phase=0.0, carrier_number=n0)


def integrate_trajectory(params: LaserParams, train: PumpTrain, grid: SimGrid,
                         init: LaserState = None):
    """Integrate the rate equations with classical fixed-step RK4.

    The step is snapped so that an integer number of steps covers one pump
    period exactly; pump current samples are precomputed on the half-step
    grid of one period and reused periodically, which keeps the drive exactly
    periodic regardless of trajectory length.

    Photon numbers driven negative by a step are clamped to zero and counted.
    Raises NonFiniteState as soon as a period contains a non-finite value.
    """
    if grid.dt > params.photon_lifetime / 10:
        raise ValidationError("grid.dt must be <= photon_lifetime / 10")
    if init is None:
        init = default_initial_state(params, train)

    period = train.period
    spp = int(round(period / grid.dt))
    dt = period / spp
    n_per = grid.n_periods_total
    n_steps = spp * n_per

    # pump current on the half-step grid of one period; plain floats keep
    # the scalar integration loop fast and free of numpy warnings
    i_tab = [float(v)
             for v in pump_current(np.arange(2 * spp) * (dt / 2), train)]

    qs = np.empty(n_steps + 1)
    phs = np.empty(n_steps + 1)
    ns = np.empty(n_steps + 1)
    q, ph, n = (init.photon_number, init.optical_phase, init.carrier_number)
    qs[0], phs[0], ns[0] = q, ph, n

    pcoef = _power_coef(params)
    derivs = _derivs
    two_spp = 2 * spp
    h = dt
    clamps = 0
    clamp_last = -1

    for i in range(n_steps):
        j = (2 * i) % two_spp
        i_a = i_tab[j]
        i_m = i_tab[j + 1] if j + 1 < two_spp else i_tab[0]
        i_b = i_tab[(j + 2) % two_spp]
        k1q, k1p, k1n = derivs(q, n, i_a, params, pcoef)
        k2q, k2p, k2n = derivs(q + 0.5 * h * k1q, n + 0.5 * h * k1n,
                               i_m, params, pcoef)
        k3q, k3p, k3n = derivs(q + 0.5 * h * k2q, n + 0.5 * h * k2n,
                               i_m, params, pcoef)
        k4q, k4p, k4n = derivs(q + h * k3q, n + h * k3n, i_b, params, pcoef)
        q = q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        ph = ph + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        n = n + (h / 6.0) * (k1n + 2.0 * k2n + 2.0 * k3n + k4n)
        if q < 0.0:
            q = 0.0
            clamps += 1
            clamp_last = i
        qs[i + 1], phs[i + 1], ns[i + 1] = q, ph, n
        if (i + 1) % spp == 0:
            block = slice(i + 1 - spp, i + 2)
            if not (np.isfinite(qs[block]).all()
                    and np.isfinite(phs[block]).all()
                    and np.isfinite(ns[block]).all()):
                raise NonFiniteState(
                    f"non-finite state within period {(i + 1) // spp - 1}; "
                    "reduce grid.dt")

    return Trajectory(times=np.arange(n_steps + 1) * dt,
                      photon_number=qs, optical_phase=phs, carrier_number=ns,
                      dt=dt, steps_per_period=spp, n_periods=n_per,
                      clamp_count=clamps, clamp_last_step=clamp_last)


def extract_pulse(trajectory: Trajectory, params: LaserParams, grid: SimGrid,
                  period_index: int = None):
    """Cut one transient-free period out of a trajectory as a PulseWindow.

    By default the last full period is taken; period_index selects an earlier
    one (still at or beyond the warmup).  Times are re-centered to
    [-T/2, T/2); because the integrator places the pump pulse at the center
    of every period, the pump pulse is centered in the window.
    """
    if trajectory.n_periods < grid.n_periods_warmup + 1:
        raise InsufficientWarmup(
            f"trajectory has {trajectory.n_periods} periods, need more than "
            f"the {grid.n_periods_warmup} warmup periods")
    if period_index is None:
        period_index = trajectory.n_periods - 1
    if not grid.n_periods_warmup <= period_index < trajectory.n_periods:
        raise InsufficientWarmup(
            f"period_index {period_index} lies inside warmup or beyond the "
            "trajectory")

    spp = trajectory.steps_per_period
    sl = slice(period_index * spp, (period_index + 1) * spp)
    times = np.arange(spp) * trajectory.dt - 0.5 * (spp * trajectory.dt)
    power = photon_to_power(trajectory.photon_number[sl], params)
    return PulseWindow(times=times,
                       power=power,
                       phase=trajectory.optical_phase[sl].copy(),
                       carriers=trajectory.carrier_number[sl].copy())


def instantaneous_chirp(pulse: PulseWindow):
    """Instantaneous angular-frequency detuning dphi/dt on the pulse grid.

    Central differences inside the window, one-sided at the endpoints.
    """
    return np.gradient(pulse.phase, pulse.dt)
