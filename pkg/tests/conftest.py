"""Shared fixtures: integrated pulses are expensive, so regimes used by
several test modules are built once per session."""

import pytest

from gspulse import (default_laser_params, default_pump_train,
                     default_sim_grid, extract_pulse, integrate_trajectory)


def build_pulse(laser_overrides=None, pump_overrides=None):
    laser = default_laser_params(**(laser_overrides or {}))
    pump = default_pump_train(**(pump_overrides or {}))
    grid = default_sim_grid()
    trajectory = integrate_trajectory(laser, pump, grid)
    return extract_pulse(trajectory, laser, grid)


@pytest.fixture(scope="session")
def grid_default():
    return default_sim_grid()


@pytest.fixture(scope="session")
def pulse_bell_chirpless():
    """Bell-shaped chirp-free pulse: 7 mA bias, 10 mA pulse, compression on."""
    return build_pulse()


@pytest.fixture(scope="session")
def pulse_bell_chirped():
    """Same bell pulse with a Henry factor of 6."""
    return build_pulse(laser_overrides={"henry_alpha": 6.0})


@pytest.fixture(scope="session")
def pulse_spike_chirped():
    """9 mA bias: pulse distorted by the first relaxation spike, chirped."""
    return build_pulse(laser_overrides={"henry_alpha": 6.0},
                       pump_overrides={"bias": 9e-3})


@pytest.fixture(scope="session")
def pulse_linear_chirp():
    """No gain compression: chirp is linear across the pulse core."""
    return build_pulse(laser_overrides={"henry_alpha": 6.0,
                                        "gain_compression": 0.0})
