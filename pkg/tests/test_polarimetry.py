import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import closed_form
from bellcompton.kinematics import DomainError
from bellcompton.polarimetry import (
    MINUS,
    PLUS,
    UNPOLARIZED,
    arm_intensity,
    kn_polarized_oracle,
    rotation_matrix,
    transition_matrix,
)

E_125 = 12.5 / 511
ENERGIES = (0.0196, 0.0245, 0.0294, 1.0)
inner_angles = st.floats(min_value=1e-3, max_value=math.pi - 1e-3)
energies = st.floats(min_value=1e-4, max_value=10.0)
azimuths = st.floats(min_value=-10.0, max_value=10.0)


def test_rotation_examples():
    np.testing.assert_array_equal(rotation_matrix(0.0), np.eye(4))
    np.testing.assert_allclose(rotation_matrix(math.pi / 2) @ np.array(PLUS), MINUS, atol=1e-15)
    np.testing.assert_allclose(rotation_matrix(math.pi / 4) @ np.array(PLUS), [1, 0, -1, 0], atol=1e-15)


@given(azimuths)
def test_rotation_is_proper_orthogonal(psi):
    m = rotation_matrix(psi)
    np.testing.assert_allclose(m @ m.T, np.eye(4), atol=1e-14)
    assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-14)
    assert m[0, 0] == 1.0 and m[3, 3] == 1.0
    assert not m[0, 1:].any() and not m[3, :3].any()


@given(azimuths, azimuths)
def test_rotation_group_law(a, b):
    np.testing.assert_allclose(rotation_matrix(a) @ rotation_matrix(b), rotation_matrix(a + b), atol=1e-14, rtol=0)


def test_transition_forward():
    for e in ENERGIES:
        assert arm_intensity(0.0, e, 0.0, UNPOLARIZED) == pytest.approx(1.0, rel=1e-15)


def test_transition_at_right_angle_511():
    t = transition_matrix(math.pi / 2, 1.0)
    assert t @ np.array(PLUS) @ [1, 0, 0, 0] == pytest.approx(0.3125, rel=1e-15)
    assert (t @ np.array(MINUS))[0] == pytest.approx(0.0625, rel=1e-14)


def test_transition_ratio_at_12p5_kev():
    t = transition_matrix(math.pi / 2, E_125)
    ratio = (t @ np.array(PLUS))[0] / (t @ np.array(MINUS))[0]
    # 40-digit evaluation of (k + 1/k) / (k + 1/k - 2) with k = 1 / (1 + 12.5/511)
    assert ratio == pytest.approx(3425.1088, rel=1e-9)


@given(inner_angles, energies)
def test_transition_block_structure(theta, e):
    t = transition_matrix(theta, e)
    assert t[0, 1] == t[1, 0]
    assert np.all(np.isfinite(t))
    off = t.copy()
    off[:2, :2] = 0
    np.fill_diagonal(off, 0)
    assert not off.any()


@pytest.mark.parametrize("theta,e", [(0.5, 0.0), (0.5, -1.0), (-0.1, 1.0), (3.2, 1.0)])
def test_transition_domain(theta, e):
    with pytest.raises(DomainError):
        transition_matrix(theta, e)


def test_transition_broadcasts():
    th = np.linspace(0, math.pi, 5)
    assert transition_matrix(th, 1.0).shape == (5, 4, 4)
    assert transition_matrix(th[:, None], np.array(ENERGIES)).shape == (5, 4, 4, 4)


def test_arm_intensity_examples():
    assert arm_intensity(math.pi / 2, 1.0, 0.0, PLUS) == pytest.approx(0.3125, rel=1e-14)
    assert arm_intensity(math.pi / 2, 1.0, math.pi / 2, PLUS) == pytest.approx(0.0625, rel=1e-14)


@given(inner_angles, energies, azimuths)
def test_unpolarized_ignores_azimuth(theta, e, psi):
    assert arm_intensity(theta, e, psi, UNPOLARIZED) == pytest.approx(
        arm_intensity(theta, e, 0.0, UNPOLARIZED), rel=1e-14
    )


@given(inner_angles, energies, azimuths)
def test_unpolarized_is_average_of_basis(theta, e, psi):
    mean = 0.5 * (arm_intensity(theta, e, psi, PLUS) + arm_intensity(theta, e, psi, MINUS))
    assert arm_intensity(theta, e, psi, UNPOLARIZED) == pytest.approx(mean, rel=1e-12)


@given(inner_angles, energies, azimuths)
def test_positivity(theta, e, psi):
    assert arm_intensity(theta, e, psi, PLUS) > 0
    assert arm_intensity(theta, e, psi, MINUS) > 0


@given(inner_angles, energies, azimuths)
def test_matches_closed_form_at_any_azimuth(theta, e, psi):
    assert arm_intensity(theta, e, psi, PLUS) == pytest.approx(
        closed_form.at_azimuth(theta, e, psi), rel=1e-12
    )


def test_oracle_examples():
    assert kn_polarized_oracle(math.pi / 2, 1.0, math.pi / 2) == pytest.approx(0.3125, rel=1e-15)
    assert kn_polarized_oracle(math.pi / 2, 1.0, 0.0) == pytest.approx(0.0625, rel=1e-14)
    for chi in (0.0, 0.4, math.pi / 2):
        assert kn_polarized_oracle(0.0, 1.0, chi) == 1.0


def test_oracle_equivalence_grid():
    theta = np.radians(np.arange(1, 180))
    for e in ENERGIES:
        np.testing.assert_allclose(
            arm_intensity(theta, e, 0.0, PLUS), kn_polarized_oracle(theta, e, math.pi / 2), rtol=1e-12
        )
        np.testing.assert_allclose(
            arm_intensity(theta, e, 0.0, MINUS), kn_polarized_oracle(theta, e, 0.0), rtol=1e-12
        )
