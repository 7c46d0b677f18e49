import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bellcompton.kinematics import (
    DomainError,
    kev_to_mc2,
    scattered_energy,
    scattered_energy_bound,
)

energies = st.floats(min_value=1e-6, max_value=20.0)
angles = st.floats(min_value=0.0, max_value=math.pi)


def test_kev_to_mc2():
    assert kev_to_mc2(511.0) == 1.0
    assert kev_to_mc2(0.0) == 0.0
    assert round(kev_to_mc2(12.5), 4) == 0.0245
    assert kev_to_mc2(12.5) == 12.5 / 511.0


def test_kev_to_mc2_rejects_negative():
    with pytest.raises(DomainError):
        kev_to_mc2(-1.0)


def test_scattered_energy_examples():
    assert scattered_energy(1.0, math.pi / 2) == pytest.approx(0.5, abs=1e-15)
    for e in (0.0, 0.02, 1.0, 7.0):
        assert scattered_energy(e, 0.0) == e
    # frozen from a 40-digit evaluation: 0.024355 / 1.024355
    assert scattered_energy(0.024355, math.pi / 2) == pytest.approx(0.023775937053072421, rel=1e-14)
    assert abs(scattered_energy(0.024355, math.pi / 2) - 0.023776) < 1e-6


def test_scattered_energy_bound_examples():
    assert scattered_energy_bound(1.0, 0.0, math.pi / 2) == pytest.approx(0.5, abs=1e-15)
    got = scattered_energy_bound(12.5 / 511, 0.0547 / 511, math.pi / 2)
    assert got == pytest.approx(0.023775741228357576, rel=1e-14)
    assert abs(got - 0.023776) < 1e-6


@pytest.mark.parametrize("e_o,e_b", [(0.01, 0.02), (0.02, 0.02)])
def test_bound_forbidden(e_o, e_b):
    with pytest.raises(DomainError, match="kinematically forbidden"):
        scattered_energy_bound(e_o, e_b, 0.3)


def test_negative_e_max():
    with pytest.raises(DomainError):
        scattered_energy(-0.1, 1.0)


def test_vectorized():
    th = np.linspace(0, math.pi, 7)
    out = scattered_energy(0.5, th)
    assert out.shape == (7,)
    assert out[0] == 0.5


@given(energies)
def test_strictly_decreasing_in_theta(e):
    th = np.linspace(0.0, math.pi, 200)
    assert np.all(np.diff(scattered_energy(e, th)) < 0)


@given(energies, angles)
def test_bounded_by_e_max(e, theta):
    out = scattered_energy(e, theta)
    assert 0 < out <= e


@given(energies, angles)
def test_bound_with_zero_binding_is_free(e, theta):
    assert scattered_energy_bound(e, 0.0, theta) == scattered_energy(e, theta)
