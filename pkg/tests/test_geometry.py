import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bellcompton.geometry import (
    ArrangementKind,
    DetectorAzimuths,
    PhaseMatching,
    arrangement_azimuths,
    relative_azimuth,
)
from bellcompton.kinematics import DomainError

deg = math.radians
phis = st.floats(min_value=-20.0, max_value=20.0)
deltas = st.floats(min_value=0.0, max_value=math.pi / 2)


@given(st.floats(min_value=0.0, max_value=math.pi), deltas)
def test_in_plane_idler_gives_signal_azimuth(phi_s, delta):
    eta = relative_azimuth(DetectorAzimuths(0.0, phi_s), PhaseMatching(delta))
    # arccos loses precision near 0 and pi; error ~ eps / sin(phi_s)
    assert eta == pytest.approx(phi_s, abs=1e-7)


def test_examples():
    assert math.degrees(relative_azimuth(DetectorAzimuths(deg(90), deg(90)), PhaseMatching(deg(78.38)))) == pytest.approx(78.38, abs=1e-10)
    for d in (0.0, 30.0, 81.53):
        eta = relative_azimuth(DetectorAzimuths(deg(90), 0.0), PhaseMatching(deg(d)))
        assert math.degrees(eta) == pytest.approx(90.0, abs=1e-12)


@given(phis, phis, deltas)
def test_swap_symmetry(a, b, delta):
    pm = PhaseMatching(delta)
    assert relative_azimuth(DetectorAzimuths(a, b), pm) == relative_azimuth(DetectorAzimuths(b, a), pm)


@given(phis, phis, deltas)
def test_range(a, b, delta):
    eta = relative_azimuth(DetectorAzimuths(a, b), PhaseMatching(delta))
    assert 0.0 <= eta <= math.pi


def test_clamps_rounding_overshoot():
    # cos(phi)**2 + sin(phi)**2 can land a hair above 1
    rng = np.random.default_rng(0)
    phi = rng.uniform(0, 2 * math.pi, 10_000)
    eta = relative_azimuth(DetectorAzimuths(phi, phi), PhaseMatching(0.0))
    assert not np.isnan(eta).any()
    assert np.all(eta < 1e-7)


def test_azimuths_reduced():
    d = DetectorAzimuths(-math.pi / 2, 5 * math.pi)
    assert d.phi_i == pytest.approx(1.5 * math.pi)
    assert d.phi_s == pytest.approx(math.pi)


@pytest.mark.parametrize("bad", [-0.01, math.pi / 2 + 0.01])
def test_phase_matching_bounds(bad):
    with pytest.raises(DomainError):
        PhaseMatching(bad)


@given(deltas)
def test_energy_arrangement_ignores_phase_matching(delta):
    eta_max, eta_min = arrangement_azimuths(ArrangementKind.ENERGY, PhaseMatching(delta))
    assert eta_max == pytest.approx(math.pi / 2, abs=1e-15)
    assert eta_min == 0.0


@pytest.mark.parametrize("d", [78.38, 81.53])
def test_phase_arrangement(d):
    eta_max, eta_min = arrangement_azimuths(ArrangementKind.PHASE, PhaseMatching(deg(d)))
    assert math.degrees(eta_max) == pytest.approx(90.0, abs=1e-12)
    assert math.degrees(eta_min) == pytest.approx(d, abs=1e-10)


def test_collinear_phase_arrangement_matches_energy():
    got = arrangement_azimuths(ArrangementKind.PHASE, PhaseMatching(0.0))
    want = arrangement_azimuths(ArrangementKind.ENERGY, PhaseMatching(0.0))
    np.testing.assert_allclose(got, want, atol=1e-15)
