"""Compton scattering of hard X-ray Bell-state photon pairs.

Cross sections, scattering-function corrections, impulse-approximation
precision bands and azimuthal ratios for the four linear-basis Bell states.
Energies are in units of mc^2 (511 keV) and angles in radians unless a
name says otherwise.
"""

from bellcompton.kinematics import (
    ELECTRON_REST_ENERGY_KEV,
    HELIUM_BINDING_ENERGY_KEV,
    DomainError,
    kev_to_mc2,
    scattered_energy,
    scattered_energy_bound,
)
from bellcompton.polarimetry import (
    MINUS,
    PLUS,
    UNPOLARIZED,
    StokesVector,
    arm_intensity,
    kn_polarized_oracle,
    rotation_matrix,
    transition_matrix,
)
from bellcompton.bell_xsec import BellState, JointKinematics, ddxsec_kn, kn_product
from bellcompton.incoherent import (
    PrecisionInput,
    ScatteringFunctionTable,
    TableParseError,
    evaluate_s,
    free_electron_table,
    ia_precision,
    incoherent_ddxsec,
    load_scattering_table,
    xsec_with_band,
)
from bellcompton.geometry import (
    ArrangementKind,
    DetectorAzimuths,
    PhaseMatching,
    arrangement_azimuths,
    relative_azimuth,
)
from bellcompton.ratios import (
    PeakReport,
    RatioResult,
    StateFamily,
    peak_scan,
    ratio_d,
    ratio_nd,
    ratio_with_band,
    rho_nd,
)

__version__ = "0.1.0"

__all__ = [
    "ELECTRON_REST_ENERGY_KEV",
    "HELIUM_BINDING_ENERGY_KEV",
    "MINUS",
    "PLUS",
    "UNPOLARIZED",
    "ArrangementKind",
    "BellState",
    "DetectorAzimuths",
    "DomainError",
    "JointKinematics",
    "PeakReport",
    "PhaseMatching",
    "PrecisionInput",
    "RatioResult",
    "ScatteringFunctionTable",
    "StateFamily",
    "StokesVector",
    "TableParseError",
    "arm_intensity",
    "arrangement_azimuths",
    "ddxsec_kn",
    "evaluate_s",
    "free_electron_table",
    "ia_precision",
    "incoherent_ddxsec",
    "kev_to_mc2",
    "kn_polarized_oracle",
    "kn_product",
    "load_scattering_table",
    "peak_scan",
    "ratio_d",
    "ratio_nd",
    "ratio_with_band",
    "relative_azimuth",
    "rho_nd",
    "rotation_matrix",
    "scattered_energy",
    "scattered_energy_bound",
    "transition_matrix",
    "xsec_with_band",
]
