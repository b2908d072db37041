"""Scenario configuration: text grammar, defaults, and the combined record.

Grammar (one assignment per line)::

    # comment until end of line
    section.key = value

Keys are dotted lowercase identifiers from the table below; values are
numbers or booleans (true/false).  Unknown keys are rejected with the line
they appear on.  Numeric keys carry engineering units in their names (mA,
ps, GHz, THz); everything is converted to SI internally.  An empty file
yields the all-defaults configuration.
"""

import math
import re
from dataclasses import dataclass, field

from .errors import ParseError, ValidationError
from .params import (BandpassFilter, InterferometerParams, LaserParams,
                     McConfig, NoiseModel, PumpTrain, SimGrid,
                     default_laser_params, default_pump_train,
                     default_sim_grid)


@dataclass(frozen=True)
class OutputOptions:
    """Which optional artifacts a run writes."""

    emit_samples: bool = False
    emit_pulse: bool = True
    emit_spectrum: bool = False


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one simulation run needs.

    filter_enabled switches the spectral-filtering stage; when it is on and
    filter_center_ghz is None the filter auto-centers on the strongest
    spectral bin of the unfiltered pulse.
    """

    laser: LaserParams
    pump: PumpTrain
    grid: SimGrid
    interferometer: InterferometerParams
    noise: NoiseModel
    mc: McConfig
    hist_bins: int = 200
    filter_enabled: bool = False
    filter_center_ghz: float = None   # None -> auto-center
    filter_fwhm_ghz: float = 100.0
    filter_order: int = 4
    outputs: OutputOptions = field(default_factory=OutputOptions)

    def __post_init__(self):
        if self.hist_bins < 2:
            raise ValidationError("hist_bins must be >= 2")
        if self.filter_fwhm_ghz <= 0:
            raise ValidationError("filter_fwhm_ghz must be > 0")
        if self.filter_order < 1:
            raise ValidationError("filter_order must be >= 1")

    def bandpass(self, center_detuning):
        return BandpassFilter(center_detuning=center_detuning,
                              fwhm=2 * math.pi * self.filter_fwhm_ghz * 1e9,
                              shape_order=self.filter_order)


# key -> (target, converter); targets are resolved by config_from_mapping.
_GHZ = 2 * math.pi * 1e9
_KEYS = {
    "laser.n_th": ("laser.carrier_threshold", float),
    "laser.n_0": ("laser.carrier_transparency", float),
    "laser.c_sp": ("laser.spontaneous_fraction", float),
    "laser.confinement": ("laser.confinement", float),
    "laser.quantum_output": ("laser.quantum_output", float),
    "laser.tau_e_ns": ("laser.electron_lifetime", lambda v: float(v) * 1e-9),
    "laser.tau_ph_ps": ("laser.photon_lifetime", lambda v: float(v) * 1e-12),
    "laser.alpha": ("laser.henry_alpha", float),
    "laser.chi_per_W": ("laser.gain_compression", float),
    "laser.carrier_freq_THz": ("laser.carrier_angular_freq",
                               lambda v: 2 * math.pi * float(v) * 1e12),
    "pump.bias_mA": ("pump.bias", lambda v: float(v) * 1e-3),
    "pump.peak_mA": ("pump.peak", lambda v: float(v) * 1e-3),
    "pump.width_ps": ("pump.width", lambda v: float(v) * 1e-12),
    "pump.mod_freq_GHz": ("pump.mod_freq", lambda v: float(v) * _GHZ),
    "grid.dt_ps": ("grid.dt", lambda v: float(v) * 1e-12),
    "grid.warmup_periods": ("grid.n_periods_warmup", int),
    "grid.total_periods": ("grid.n_periods_total", int),
    "interferometer.coupler_t1": ("interferometer.coupler_t1", float),
    "interferometer.coupler_t2": ("interferometer.coupler_t2", float),
    "interferometer.loss_a1": ("interferometer.loss_a1", float),
    "interferometer.loss_a2": ("interferometer.loss_a2", float),
    "interferometer.pulses_in_delay": ("interferometer.pulses_in_delay", int),
    "interferometer.fiber_index": ("interferometer.fiber_index", float),
    "interferometer.group_index": ("interferometer.group_index", float),
    "noise.jitter_ps": ("noise.jitter_rms", lambda v: float(v) * 1e-12),
    "noise.amplitude_rms": ("noise.amplitude_rms", float),
    "noise.phase_rms_rad": ("noise.phase_rms", float),
    "noise.detector_rms": ("noise.detector_rms", float),
    "mc.iterations": ("mc.iterations", int),
    "mc.seed": ("mc.seed", int),
    "mc.delta_theta_rad": ("mc.delta_theta", float),
    "mc.bins": ("hist_bins", int),
    "filter.enabled": ("filter_enabled", bool),
    "filter.center_GHz": ("filter_center_ghz", float),
    "filter.fwhm_GHz": ("filter_fwhm_ghz", float),
    "filter.order": ("filter_order", int),
    "output.emit_samples": ("outputs.emit_samples", bool),
    "output.emit_pulse": ("outputs.emit_pulse", bool),
    "output.emit_spectrum": ("outputs.emit_spectrum", bool),
}

_KEY_RE = re.compile(r"^[a-zA-Z_][a-zA-Z0-9_]*(\.[a-zA-Z0-9_]+)+$")


def _parse_value(text, line_no, column):
    low = text.lower()
    if low == "true":
        return True
    if low == "false":
        return False
    try:
        if re.fullmatch(r"[+-]?\d+", text):
            return int(text)
        return float(text)
    except ValueError:
        raise ParseError(f"cannot parse value {text!r}", line_no, column) \
            from None


def parse_config_text(text):
    """Parse configuration text into a {key: value} mapping.

    Raises ParseError (with line/column) for structural problems and for
    unknown keys.
    """
    mapping = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("expected 'section.key = value'", line_no,
                             len(line.rstrip()) or 1)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        key_col = raw.index(key) + 1 if key and key in raw else 1
        if not key or not _KEY_RE.match(key):
            raise ParseError(f"malformed key {key!r}", line_no, key_col)
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", line_no, key_col)
        value = value_part.strip()
        if not value:
            raise ParseError("missing value", line_no, raw.index("=") + 2)
        val_col = raw.index(value, raw.index("=")) + 1
        target_is_bool = key in ("filter.enabled", "output.emit_samples",
                                 "output.emit_pulse", "output.emit_spectrum")
        parsed = _parse_value(value, line_no, val_col)
        if target_is_bool and not isinstance(parsed, bool):
            raise ParseError(f"key {key!r} takes true/false", line_no, val_col)
        if not target_is_bool and isinstance(parsed, bool):
            raise ParseError(f"key {key!r} takes a number", line_no, val_col)
        if key in mapping:
            raise ParseError(f"duplicate key {key!r}", line_no, key_col)
        mapping[key] = parsed
    return mapping


def config_from_mapping(mapping):
    """Build a ScenarioConfig from a {config key: value} mapping.

    Values are in the engineering units the keys name; missing keys take
    their defaults.  Raises ValidationError when a resulting record violates
    an invariant, KeyError for unknown keys.
    """
    sections = {"laser": {}, "pump": {}, "grid": {}, "interferometer": {},
                "noise": {}, "mc": {}, "outputs": {}}
    scalars = {}
    for key, value in mapping.items():
        if key not in _KEYS:
            raise KeyError(f"unknown configuration key {key!r}")
        target, conv = _KEYS[key]
        converted = conv(value) if not isinstance(value, bool) else value
        if "." in target:
            section, name = target.split(".", 1)
            sections[section][name] = converted
        else:
            scalars[target] = converted

    return ScenarioConfig(
        laser=default_laser_params(**sections["laser"]),
        pump=default_pump_train(**sections["pump"]),
        grid=default_sim_grid(**sections["grid"]),
        interferometer=InterferometerParams(**sections["interferometer"]),
        noise=NoiseModel(**sections["noise"]),
        mc=McConfig(**sections["mc"]),
        outputs=OutputOptions(**sections["outputs"]),
        **scalars,
    )


def parse_config(text):
    """Parse configuration text into a fully validated ScenarioConfig."""
    return config_from_mapping(parse_config_text(text))


def config_echo(config: ScenarioConfig):
    """Canonical engineering-unit mapping of a config (for reports).

    Inverse of config_from_mapping up to float formatting; keys are sorted.
    """
    c = config
    echo = {
        "laser.n_th": c.laser.carrier_threshold,
        "laser.n_0": c.laser.carrier_transparency,
        "laser.c_sp": c.laser.spontaneous_fraction,
        "laser.confinement": c.laser.confinement,
        "laser.quantum_output": c.laser.quantum_output,
        "laser.tau_e_ns": c.laser.electron_lifetime * 1e9,
        "laser.tau_ph_ps": c.laser.photon_lifetime * 1e12,
        "laser.alpha": c.laser.henry_alpha,
        "laser.chi_per_W": c.laser.gain_compression,
        "laser.carrier_freq_THz": c.laser.carrier_angular_freq
        / (2 * math.pi * 1e12),
        "pump.bias_mA": c.pump.bias * 1e3,
        "pump.peak_mA": c.pump.peak * 1e3,
        "pump.width_ps": c.pump.width * 1e12,
        "pump.mod_freq_GHz": c.pump.mod_freq / _GHZ,
        "grid.dt_ps": c.grid.dt * 1e12,
        "grid.warmup_periods": c.grid.n_periods_warmup,
        "grid.total_periods": c.grid.n_periods_total,
        "interferometer.coupler_t1": c.interferometer.coupler_t1,
        "interferometer.coupler_t2": c.interferometer.coupler_t2,
        "interferometer.loss_a1": c.interferometer.loss_a1,
        "interferometer.loss_a2": c.interferometer.loss_a2,
        "interferometer.pulses_in_delay": c.interferometer.pulses_in_delay,
        "interferometer.fiber_index": c.interferometer.fiber_index,
        "interferometer.group_index": c.interferometer.group_index,
        "noise.jitter_ps": c.noise.jitter_rms * 1e12,
        "noise.amplitude_rms": c.noise.amplitude_rms,
        "noise.phase_rms_rad": c.noise.phase_rms,
        "noise.detector_rms": c.noise.detector_rms,
        "mc.iterations": c.mc.iterations,
        "mc.seed": c.mc.seed,
        "mc.delta_theta_rad": c.mc.delta_theta,
        "mc.bins": c.hist_bins,
        "filter.enabled": c.filter_enabled,
        "filter.fwhm_GHz": c.filter_fwhm_ghz,
        "filter.order": c.filter_order,
        "output.emit_samples": c.outputs.emit_samples,
        "output.emit_pulse": c.outputs.emit_pulse,
        "output.emit_spectrum": c.outputs.emit_spectrum,
    }
    if c.filter_center_ghz is not None:
        echo["filter.center_GHz"] = c.filter_center_ghz
    return dict(sorted(echo.items()))
