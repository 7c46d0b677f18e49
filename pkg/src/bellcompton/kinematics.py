"""Photon energy bookkeeping and the Compton formula with a binding-energy cut.

All energies are dimensionless, in units of the electron rest energy
(511 keV). Angles are in radians.
"""

import numpy as np

ELECTRON_REST_ENERGY_KEV = 511.0
# helium K-shell
HELIUM_BINDING_ENERGY_KEV = 0.0547


class DomainError(ValueError):
    """An input lies outside the physical domain of a calculation."""


def kev_to_mc2(e_kev):
    """Convert an energy in keV to units of mc^2."""
    e = np.asarray(e_kev, dtype=float)
    if np.any(e < 0) or np.any(np.isnan(e)):
        raise DomainError(f"energy must be >= 0 keV, got {e_kev!r}")
    out = e / ELECTRON_REST_ENERGY_KEV
    return float(out) if out.ndim == 0 else out


def scattered_energy(e_max, theta):
    """Energy of a photon Compton scattered through ``theta``.

    Parameters
    ----------
    e_max : float or array_like
        Highest observable scattered energy, i.e. the incident energy for a
        free electron (mc^2 units).
    theta : float or array_like
        Polar scattering angle in radians.

    Returns
    -------
    float or numpy.ndarray
        ``e_max / (1 + e_max (1 - cos theta))``.
    """
    e_max = np.asarray(e_max, dtype=float)
    if np.any(e_max < 0):
        raise DomainError(f"e_max must be >= 0, got {e_max!r}")
    out = e_max / (1.0 + e_max * (1.0 - np.cos(theta)))
    return float(out) if np.ndim(out) == 0 else out


def scattered_energy_bound(e_o, e_b, theta):
    """Scattered energy off a bound electron.

    The binding energy caps the scattered energy at ``e_o - e_b``; the free
    Compton formula is then applied to that cap. Raises :class:`DomainError`
    when ``e_o <= e_b`` since no inelastic scattering is possible.
    """
    e_o = np.asarray(e_o, dtype=float)
    e_b = np.asarray(e_b, dtype=float)
    if np.any(e_b < 0):
        raise DomainError(f"binding energy must be >= 0, got {e_b!r}")
    if np.any(e_o <= e_b):
        raise DomainError(
            "kinematically forbidden: incident energy must exceed the binding energy"
        )
    return scattered_energy(e_o - e_b, theta)
