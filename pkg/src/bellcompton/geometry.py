"""Detector geometry: relative azimuth of the two scattering planes."""

import enum
import math
from dataclasses import dataclass

import numpy as np

from bellcompton.kinematics import DomainError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DetectorAzimuths:
    """Azimuths of the idler and signal counters, reduced to [0, 2 pi)."""

    phi_i: float
    phi_s: float

    def __post_init__(self):
        object.__setattr__(self, "phi_i", np.mod(self.phi_i, TWO_PI))
        object.__setattr__(self, "phi_s", np.mod(self.phi_s, TWO_PI))


@dataclass(frozen=True)
class PhaseMatching:
    """Difference of the idler and signal phase-matching angles (radians)."""

    delta_theta_is: float

    def __post_init__(self):
        d = np.asarray(self.delta_theta_is, dtype=float)
        if np.any(~((d >= 0) & (d <= math.pi / 2))):
            raise DomainError(f"delta_theta_is must lie in [0, pi/2], got {self.delta_theta_is!r}")


class ArrangementKind(enum.Enum):
    # idler counter in the trajectory plane
    ENERGY = "energy"
    # idler counter at right angles to the trajectory plane
    PHASE = "phase"

    @property
    def idler_azimuth(self) -> float:
        return 0.0 if self is ArrangementKind.ENERGY else math.pi / 2


def relative_azimuth(d: DetectorAzimuths, pm: PhaseMatching):
    """Angle in [0, pi] between the idler and signal scattering planes.

    ``cos eta = cos phi_i cos phi_s + cos(delta) sin phi_i sin phi_s``, with
    the cosine clipped to [-1, 1] against rounding.
    """
    cos_eta = np.cos(d.phi_i) * np.cos(d.phi_s) + np.cos(pm.delta_theta_is) * (
        np.sin(d.phi_i) * np.sin(d.phi_s)
    )
    out = np.arccos(np.clip(cos_eta, -1.0, 1.0))
    return float(out) if np.ndim(out) == 0 else out


def arrangement_azimuths(kind: ArrangementKind, pm: PhaseMatching):
    """``(eta_max, eta_min)`` reached by the signal counter at 0 and 90 degrees.

    In the in-plane arrangement eta follows the signal azimuth directly, so
    eta_max comes from phi_s = 90 deg and eta_min from phi_s = 0. With the
    idler counter at right angles the roles swap and eta_min becomes the
    phase-matching difference.
    """
    phi_i = kind.idler_azimuth
    at_0 = relative_azimuth(DetectorAzimuths(phi_i, 0.0), pm)
    at_90 = relative_azimuth(DetectorAzimuths(phi_i, math.pi / 2), pm)
    if kind is ArrangementKind.ENERGY:
        return at_90, at_0
    return at_0, at_90
