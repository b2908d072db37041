"""Interference statistics of gain-switched semiconductor laser pulses.

Rate-equation pulse dynamics, Monte-Carlo estimation of the interference
signal's probability density under chirp, jitter, and amplitude noise, exact
Gaussian-pulse cross-checks, and flat-top spectral filtering.
"""

from .analytic import (GaussianPulse, arcsine_cdf, arcsine_density,
                       chirp_rate, closed_form_check, fit_gaussian,
                       gaussian_power, gaussian_pulse_window,
                       interference_signal, linear_chirp_phase, power_fwhm,
                       visibility_chirped, visibility_chirpless)
from .config import (OutputOptions, ScenarioConfig, config_from_mapping,
                     parse_config)
from .constants import CODATA, PhysicalConstants
from .dynamics import (LaserState, PulseWindow, Trajectory,
                       default_initial_state, extract_pulse,
                       instantaneous_chirp, integrate_trajectory,
                       linear_gain, photon_to_power, pump_current,
                       rate_derivatives, saturated_gain)
from .errors import (DomainError, GsPulseError, InsufficientWarmup,
                     NonFiniteState, NonuniformGrid, ParseError,
                     ShiftTooLarge, ValidationError, ZeroDenominator)
from .interference import (DrawSample, Histogram, SignalSamples,
                           add_detector_noise, arm_ratio, delay_length,
                           estimate_pdf, integral_signal, iteration_rng,
                           pair_signal, run_monte_carlo, sample_draw)
from .params import (BandpassFilter, InterferometerParams, LaserParams,
                     McConfig, NoiseModel, PumpTrain, SimGrid,
                     default_laser_params, default_pump_train,
                     default_sim_grid)
from .presets import load_preset, preset_names
from .scenario import RunReport, detect_peaks, run_scenario, write_report
from .spectrum import (ComplexFieldTrace, Spectrum, apply_filter,
                       field_from_pulse, filter_transmission, filtered_pulse,
                       power_spectrum, spectral_centroid, spectral_mode)

__version__ = "0.1.0"
