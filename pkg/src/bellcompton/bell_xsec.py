"""Double-differential Klein-Nishina cross sections for Bell-state pairs."""

import enum
from dataclasses import dataclass

import numpy as np

from bellcompton.kinematics import DomainError
from bellcompton.polarimetry import MINUS, PLUS, UNPOLARIZED, arm_intensity


class BellState(enum.Enum):
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"

    @property
    def family(self) -> str:
        """``"Psi"`` for cross-polarized states, ``"Phi"`` for parallel ones."""
        return "Psi" if self in (BellState.PSI_PLUS, BellState.PSI_MINUS) else "Phi"

    @property
    def signal_stokes(self):
        # the +/- phase never reaches the cross section; only the family does
        return MINUS if self.family == "Psi" else PLUS

    @classmethod
    def parse(cls, text: str) -> "BellState":
        """Accept ``PsiPlus``, ``psi+``, ``PSI_PLUS`` and similar spellings."""
        key = text.strip().lower().replace("_", "").replace("-", "minus").replace("+", "plus")
        for state in cls:
            if state.value.lower() == key:
                return state
        raise ValueError(f"unknown Bell state {text!r}; valid: {', '.join(s.value for s in cls)}")


@dataclass(frozen=True)
class JointKinematics:
    """Scattering configuration of an idler/signal pair.

    Fields may be scalars or mutually broadcastable arrays. ``eta`` is the
    angle between the two scattering planes; any finite value is accepted
    since only ``2 * eta`` enters.
    """

    theta_i: float
    theta_s: float
    eta: float
    e_oi: float
    e_os: float

    def __post_init__(self):
        for name in ("theta_i", "theta_s"):
            th = np.asarray(getattr(self, name), dtype=float)
            if np.any(~((th >= 0) & (th <= np.pi))):
                raise DomainError(f"{name} must lie in [0, pi]")
        for name in ("e_oi", "e_os"):
            if np.any(~(np.asarray(getattr(self, name), dtype=float) > 0)):
                raise DomainError(f"{name} must be > 0")
        if not np.all(np.isfinite(np.asarray(self.eta, dtype=float))):
            raise DomainError("eta must be finite")


def ddxsec_kn(state: BellState, jk: JointKinematics):
    """Klein-Nishina cross section d2sigma/dOmega_i dOmega_s in r0**4 units.

    Two-term sum over ``a`` in {0, 1}: the idler arm is analysed at
    ``M(a pi/2)|+>`` and the signal arm at ``M(eta + a pi/2)|s2>``, with
    ``|s2> = |->`` for Psi states and ``|+>`` for Phi states.
    """
    s2 = state.signal_stokes
    total = 0.0
    for a in (0, 1):
        shift = a * np.pi / 2
        idler = arm_intensity(jk.theta_i, jk.e_oi, shift, PLUS)
        signal = arm_intensity(jk.theta_s, jk.e_os, jk.eta + shift, s2)
        total = total + idler * signal
    return total / 8.0


def kn_product(jk: JointKinematics):
    """Half the product of the two unpolarized Klein-Nishina cross sections."""
    idler = arm_intensity(jk.theta_i, jk.e_oi, 0.0, UNPOLARIZED)
    signal = arm_intensity(jk.theta_s, jk.e_os, 0.0, UNPOLARIZED)
    # eta is irrelevant, but keep the result shaped like the other kinematics
    shape = np.broadcast_shapes(*(np.shape(getattr(jk, f)) for f in ("theta_i", "theta_s", "eta", "e_oi", "e_os")))
    out = np.broadcast_to(0.5 * idler * signal, shape)
    return float(out) if out.ndim == 0 else out.copy()
