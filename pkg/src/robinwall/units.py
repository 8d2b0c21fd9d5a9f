"""Translation between the model's dimensionless numbers and SI values.

The model measures length in the extrapolation-length magnitude and
energy in the matching kinetic scale hbar^2/(2 m L^2); the field unit
follows from requiring the potential slope to be one energy unit per
length unit.  For walls without an extrapolation length the length scale
is a free choice, with the reduced Compton length as the conventional
pick.  A gravitational variant replaces the charge by the mass, so the
field converts to an acceleration instead of an electric field.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.constants import c as _c
from scipy.constants import e as _e
from scipy.constants import hbar as _hbar

from .spectrum import DomainError

__all__ = ["UnitScale", "convert_units", "electron_scale"]

_KINDS = ("length", "energy", "field", "dipole")


@dataclass(frozen=True)
class UnitScale:
    """Unit system for one particle species and one length scale.

    Exactly one length source applies: an explicit ``lambda_abs`` in
    meters, or ``compton=True`` for the reduced Compton length of the
    particle.  ``gravity`` swaps the charge for the mass in the field and
    dipole units.
    """

    mass: float
    lambda_abs: float | None = None
    gravity: bool = False
    compton: bool = False

    def __post_init__(self):
        if not self.mass > 0.0:
            raise ValueError("mass must be positive (kilograms)")
        if self.lambda_abs is not None and not self.lambda_abs > 0.0:
            raise ValueError("lambda_abs must be positive (meters) when given")
        if self.compton and self.lambda_abs is not None:
            raise ValueError("give either lambda_abs or compton=True, not both")

    @property
    def length_unit(self) -> float:
        if self.compton:
            return _hbar / (self.mass * _c)
        if self.lambda_abs is not None:
            return self.lambda_abs
        raise DomainError(
            "no length scale chosen; set lambda_abs or compton=True"
        )

    @property
    def energy_unit(self) -> float:
        length = self.length_unit
        return _hbar ** 2 / (2.0 * self.mass * length ** 2)

    @property
    def field_unit(self) -> float:
        length = self.length_unit
        coupling = self.mass if self.gravity else _e
        return _hbar ** 2 / (2.0 * self.mass * coupling * length ** 3)

    @property
    def dipole_unit(self) -> float:
        coupling = self.mass if self.gravity else _e
        return coupling * self.length_unit


def electron_scale(lambda_abs: float | None = None, gravity: bool = False) -> UnitScale:
    """Electron units; Compton length unless an explicit scale is given."""
    from scipy.constants import m_e

    return UnitScale(mass=m_e, lambda_abs=lambda_abs, gravity=gravity,
                     compton=lambda_abs is None)


def convert_units(scale: UnitScale, direction: str, value: float, kind: str) -> float:
    """Move one number across the unit boundary.

    ``direction`` is "to_physical" (dimensionless number in, SI value
    out) or "to_dimensionless"; ``kind`` picks the unit among length,
    energy, field, and dipole.
    """
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    unit = getattr(scale, f"{kind}_unit")
    if direction == "to_physical":
        return float(value) * unit
    if direction == "to_dimensionless":
        return float(value) / unit
    raise ValueError(
        f"direction must be 'to_physical' or 'to_dimensionless', got {direction!r}"
    )
