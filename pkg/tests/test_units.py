"""Dimensionless-to-SI conversion layer."""

import math

import pytest
from scipy.constants import c, hbar, m_e

from robinwall.spectrum import DomainError
from robinwall.units import UnitScale, convert_units, electron_scale


def test_electron_defaults_to_compton_length():
    scale = electron_scale()
    assert math.isclose(scale.length_unit, hbar / (m_e * c), rel_tol=1e-15)


def test_electron_at_one_nanometer():
    scale = electron_scale(lambda_abs=1e-9)
    # Slope of one model energy unit per model length unit, for an
    # electron confined on the nanometer scale.
    assert math.isclose(scale.field_unit, 3.8100e7, rel_tol=1e-4)
    ev = scale.energy_unit / 1.602176634e-19
    assert math.isclose(ev, 0.038100, rel_tol=1e-4)


def test_roundtrip_is_identity():
    scale = electron_scale(lambda_abs=2.4e-9)
    for kind in ("length", "energy", "field", "dipole"):
        out = convert_units(scale, "to_physical", 1.7, kind)
        back = convert_units(scale, "to_dimensionless", out, kind)
        assert math.isclose(back, 1.7, rel_tol=1e-14)


def test_gravity_swaps_the_coupling():
    electric = electron_scale(lambda_abs=1e-9)
    weight = electron_scale(lambda_abs=1e-9, gravity=True)
    assert weight.field_unit != electric.field_unit
    assert math.isclose(weight.dipole_unit, m_e * 1e-9, rel_tol=1e-15)


def test_scale_validation():
    with pytest.raises(ValueError):
        UnitScale(mass=0.0)
    with pytest.raises(ValueError):
        UnitScale(mass=m_e, lambda_abs=-1.0)
    with pytest.raises(ValueError):
        UnitScale(mass=m_e, lambda_abs=1e-9, compton=True)
    with pytest.raises(DomainError):
        UnitScale(mass=m_e).length_unit
    with pytest.raises(ValueError):
        convert_units(electron_scale(), "to_physical", 1.0, "charge")
    with pytest.raises(ValueError):
        convert_units(electron_scale(), "sideways", 1.0, "length")
