"""Named scenario presets.

Each preset expands to one or more (label, ScenarioConfig) pairs built from
the same defaults as an empty configuration file.  The fig2* presets cover
the three single-run regimes (chirpless bell pulse, chirped bell pulse,
chirped pulse with a relaxation spike); fig3 is a four-point bias sweep with
a lossier long arm and heavier detector noise; fig4 repeats the relaxation
regime with the 100 GHz flat-top filter enabled (auto-centered on the
strongest spectral bin unless filter.center_GHz is set).
"""

from .config import config_from_mapping

_FIG3_COMMON = {
    "laser.alpha": 6.0,
    "laser.chi_per_W": 30.0,
    "pump.peak_mA": 11.0,
    "noise.detector_rms": 0.25,
    "interferometer.loss_a1": 0.0,
    "interferometer.loss_a2": 0.1,
}

# bias sweep: the two documented operating points (6 and 9 mA) plus two
# intermediate values to show the evolution between them
_FIG3_BIASES_MA = (6.0, 7.0, 8.0, 9.0)

_PRESETS = {
    "fig2a": [("fig2a", {"laser.alpha": 0.0, "laser.chi_per_W": 25.0,
                         "pump.bias_mA": 7.0, "pump.peak_mA": 10.0,
                         "noise.detector_rms": 0.05})],
    "fig2b": [("fig2b", {"laser.alpha": 6.0, "laser.chi_per_W": 25.0,
                         "pump.bias_mA": 7.0, "pump.peak_mA": 10.0,
                         "noise.detector_rms": 0.05})],
    "fig2c": [("fig2c", {"laser.alpha": 6.0, "laser.chi_per_W": 25.0,
                         "pump.bias_mA": 9.0, "pump.peak_mA": 10.0,
                         "noise.detector_rms": 0.05})],
    "fig3": [(f"fig3_bias_{b:02.0f}mA", dict(_FIG3_COMMON,
                                             **{"pump.bias_mA": b}))
             for b in _FIG3_BIASES_MA],
    "fig4": [("fig4", {"laser.alpha": 6.0, "laser.chi_per_W": 25.0,
                       "pump.bias_mA": 9.0, "pump.peak_mA": 10.0,
                       "noise.detector_rms": 0.05,
                       "filter.enabled": True,
                       "output.emit_spectrum": True})],
}


def preset_names():
    return sorted(_PRESETS)


def load_preset(name, overrides=None):
    """Expand a preset into a list of (label, ScenarioConfig) pairs.

    overrides is an optional {config key: value} mapping applied on top of
    every entry (used by the CLI for seed and output toggles).
    """
    if name not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: "
                       + ", ".join(preset_names()))
    out = []
    for label, mapping in _PRESETS[name]:
        merged = dict(mapping)
        if overrides:
            merged.update(overrides)
        out.append((label, config_from_mapping(merged)))
    return out
