"""Fundamental physical constants (fixed CODATA/SI values)."""

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants used by the dynamics and interferometer models.

    These are fixed SI values; they are grouped in a record only so that the
    code never silently mixes sources.
    """

    reduced_planck: float = 1.054571817e-34   # J s
    electron_charge: float = 1.602176634e-19  # C, absolute value
    light_speed_vacuum: float = 299792458.0   # m / s

    def __post_init__(self):
        for name in ("reduced_planck", "electron_charge", "light_speed_vacuum"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"PhysicalConstants.{name} must be > 0")


CODATA = PhysicalConstants()
