"""Stokes-vector algebra for single-photon Compton scattering.

Stokes vectors are ``(I, Q, U, V)`` in the linear basis. ``Q = +1`` is a
photon polarized perpendicular to the scattering plane ("vertical",
``PLUS``) and ``Q = -1`` one polarized inside it ("horizontal", ``MINUS``).
Every cross section here is in units of r0**2; r0 itself is never
multiplied in.

Matrix-valued functions broadcast over their angle/energy arguments and put
the 4x4 matrix in the last two axes, so ``transition_matrix(theta_grid, e)``
has shape ``theta_grid.shape + (4, 4)``.
"""

from typing import NamedTuple

import numpy as np

from bellcompton.kinematics import DomainError


class StokesVector(NamedTuple):
    i: float
    q: float
    u: float
    v: float


PLUS = StokesVector(1.0, 1.0, 0.0, 0.0)
MINUS = StokesVector(1.0, -1.0, 0.0, 0.0)
UNPOLARIZED = StokesVector(1.0, 0.0, 0.0, 0.0)

# polarization-insensitive counter: picks out the intensity component
DETECTOR = np.array([1.0, 0.0, 0.0, 0.0])


def rotation_matrix(psi):
    """Stokes rotation by azimuth ``psi`` (radians).

    ``I' = I``, ``Q' = Q cos 2psi + U sin 2psi``, ``U' = -Q sin 2psi + U cos 2psi``,
    ``V' = V``.
    """
    psi = np.asarray(psi, dtype=float)
    c = np.cos(2.0 * psi)
    s = np.sin(2.0 * psi)
    m = np.zeros(psi.shape + (4, 4))
    m[..., 0, 0] = 1.0
    m[..., 1, 1] = c
    m[..., 1, 2] = s
    m[..., 2, 1] = -s
    m[..., 2, 2] = c
    m[..., 3, 3] = 1.0
    return m


def _check_arm(theta, e_o):
    theta = np.asarray(theta, dtype=float)
    e_o = np.asarray(e_o, dtype=float)
    if np.any(~(e_o > 0)):
        raise DomainError(f"incident energy must be > 0, got {e_o!r}")
    if np.any(~((theta >= 0) & (theta <= np.pi))):
        raise DomainError(f"scattering angle must lie in [0, pi], got {theta!r}")
    return theta, e_o


def transition_matrix(theta, e_o):
    """Compton transition matrix T(theta; E_o) in r0**2 units.

    With ``k = 1 / (1 + E_o (1 - cos theta))`` the ratio of scattered to
    incident energy::

        (k**2 / 2) * [[k + 1/k - sin^2, sin^2,        0,         0              ],
                      [sin^2,           1 + cos^2,    0,         0              ],
                      [0,               0,            2 cos,     0              ],
                      [0,               0,            0,         (k + 1/k) cos  ]]

    The positive off-diagonal sign makes a photon polarized perpendicular
    to the scattering plane (``PLUS``) scatter more strongly.
    """
    theta, e_o = _check_arm(theta, e_o)
    cos_t = np.cos(theta)
    sin2 = np.sin(theta) ** 2
    k = 1.0 / (1.0 + e_o * (1.0 - cos_t))
    kk = k + 1.0 / k
    shape = np.broadcast_shapes(theta.shape, e_o.shape)
    t = np.zeros(shape + (4, 4))
    t[..., 0, 0] = kk - sin2
    t[..., 0, 1] = sin2
    t[..., 1, 0] = sin2
    t[..., 1, 1] = 1.0 + cos_t**2
    t[..., 2, 2] = 2.0 * cos_t
    t[..., 3, 3] = kk * cos_t
    return 0.5 * (k * k)[..., None, None] * t


def arm_intensity(theta, e_o, psi, s):
    """Counted intensity <I| T(theta; E_o) M(psi) |s> for one photon arm.

    Parameters
    ----------
    theta : float or array_like
        Polar scattering angle (radians).
    e_o : float or array_like
        Incident energy (mc^2 units).
    psi : float or array_like
        Azimuth of the scattering plane relative to the polarization frame.
    s : StokesVector or array_like of length 4
        Incident polarization.

    Returns
    -------
    float or numpy.ndarray
        Differential cross section in r0**2 units.
    """
    t = transition_matrix(theta, e_o)
    m = rotation_matrix(psi)
    out = np.einsum("j,...jk,...kl,l->...", DETECTOR, t, m, np.asarray(s, dtype=float))
    return float(out) if out.ndim == 0 else out


def kn_polarized_oracle(theta, e_o, pol_angle):
    """Textbook polarized Klein-Nishina cross section, r0**2 units.

    ``pol_angle`` is measured from the scattering plane: 0 for polarization
    in the plane, pi/2 for polarization perpendicular to it. Kept free of
    the matrix machinery so it can check :func:`arm_intensity`.
    """
    k = 1.0 / (1.0 + e_o * (1.0 - np.cos(theta)))
    return 0.5 * k**2 * (k + 1.0 / k - 2.0 * np.sin(theta) ** 2 * np.cos(pol_angle) ** 2)
