"""Azimuthal ratio observables N_perp / N_par and their peak search.

Both photons scatter through the same polar angle ``theta``. The
scattering function is a common factor of numerator and denominator, so
every ratio here is built from Klein-Nishina arm intensities alone.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from bellcompton.bell_xsec import BellState
from bellcompton.geometry import PhaseMatching
from bellcompton.incoherent import PrecisionInput, ia_precision
from bellcompton.kinematics import DomainError
from bellcompton.polarimetry import MINUS, PLUS, arm_intensity

COARSE_STEP = math.radians(0.1)
REFINE_STEP = math.radians(0.001)


class StateFamily(enum.Enum):
    PSI = "Psi"
    PHI = "Phi"

    @classmethod
    def of(cls, state) -> "StateFamily":
        if isinstance(state, cls):
            return state
        if isinstance(state, BellState):
            return cls(state.family)
        return cls(str(state).strip().capitalize())


def _divide(num, den):
    # a vanishing denominator yields inf rather than an exception
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.true_divide(num, den)
    return float(out) if np.ndim(out) == 0 else out


def _oriented(num, den, family):
    if StateFamily.of(family) is StateFamily.PSI:
        return _divide(num, den)
    return _divide(den, num)


def _paired_sum(theta, e_oi, e_os, signal_offset, signal_state):
    total = 0.0
    for a in (0, 1):
        shift = a * np.pi / 2
        total = total + arm_intensity(theta, e_oi, shift, PLUS) * arm_intensity(
            theta, e_os, signal_offset + shift, signal_state
        )
    return total


def ratio_nd(theta, e_oi, e_os, family=StateFamily.PSI):
    """Energy-parameterized ratio sigma(eta=90 deg) / sigma(eta=0).

    Psi states give the large ratio; Phi states its reciprocal.
    """
    num = _paired_sum(theta, e_oi, e_os, 0.0, PLUS)
    den = _paired_sum(theta, e_oi, e_os, 0.0, MINUS)
    return _oriented(num, den, family)


def ratio_d(theta, e_o, family=StateFamily.PSI):
    """Degenerate-energy ratio ``(A**2 + B**2) / (2 A B)``.

    ``A`` and ``B`` are the arm intensities for polarization perpendicular
    and parallel to the scattering plane.
    """
    a = arm_intensity(theta, e_o, 0.0, PLUS)
    b = arm_intensity(theta, e_o, 0.0, MINUS)
    return _oriented(a * a + b * b, 2.0 * a * b, family)


def rho_nd(theta, e_oi, e_os, pm, family=StateFamily.PSI):
    """Ratio with the idler counter perpendicular to the trajectory plane.

    The parallel count is replaced by one at ``eta = delta_theta_is``.
    ``pm`` is a :class:`PhaseMatching` or a bare angle in radians.
    """
    delta = pm.delta_theta_is if isinstance(pm, PhaseMatching) else pm
    num = _paired_sum(theta, e_oi, e_os, 0.0, PLUS)
    den = _paired_sum(theta, e_oi, e_os, delta, MINUS)
    return _oriented(num, den, family)


@dataclass(frozen=True)
class RatioResult:
    theta: float
    value: float
    half_width: float

    @property
    def is_infinite(self):
        return np.isinf(self.value)


def ratio_with_band(theta, e_oi, e_os, e_b, family=StateFamily.PSI, pm=None) -> RatioResult:
    """Ratio plus the half width ``(sqrt(2)/2) * value * A`` of its IA band.

    Without ``pm`` this is the energy-parameterized ratio; with it, the
    phase-matching one.
    """
    if pm is None:
        value = ratio_nd(theta, e_oi, e_os, family)
    else:
        value = rho_nd(theta, e_oi, e_os, pm, family)
    a = ia_precision(PrecisionInput(e_oi, e_os, theta, theta, e_b))
    with np.errstate(invalid="ignore"):
        half = math.sqrt(2.0) / 2.0 * value * a
    half = np.where(np.asarray(a) == 0, 0.0, half)
    return RatioResult(theta, value, float(half) if half.ndim == 0 else half)


@dataclass(frozen=True)
class PeakReport:
    theta_star: float
    value_star: float
    grid_step: float


def _grid(lo, hi, step):
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def peak_scan(func, theta_min, theta_max, coarse_step=COARSE_STEP, refine_step=REFINE_STEP) -> PeakReport:
    """Locate the maximum of ``func(theta)`` on ``[theta_min, theta_max]``.

    A coarse grid brackets the peak; a fine grid spanning one coarse step
    either side of the coarse argmax refines it. ``func`` must accept an
    array of angles. Ties go to the smallest angle. The reported
    ``grid_step`` is the refine step, i.e. the resolution of ``theta_star``.
    """
    if coarse_step <= 0 or refine_step <= 0:
        raise DomainError("grid steps must be > 0")
    if not (0.0 <= theta_min < theta_max <= math.pi):
        raise DomainError(f"empty or invalid angle range [{theta_min}, {theta_max}]")

    coarse = _grid(theta_min, theta_max, coarse_step)
    coarse_vals = np.asarray(func(coarse), dtype=float)
    centre = coarse[int(np.argmax(coarse_vals))]

    lo = max(theta_min, centre - coarse_step)
    hi = min(theta_max, centre + coarse_step)
    fine = _grid(lo, hi, refine_step)
    thetas = np.concatenate([coarse, fine])
    values = np.concatenate([coarse_vals, np.asarray(func(fine), dtype=float)])
    order = np.argsort(thetas, kind="stable")
    thetas, values = thetas[order], values[order]
    best = int(np.argmax(values))
    return PeakReport(float(thetas[best]), float(values[best]), refine_step)
