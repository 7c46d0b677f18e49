"""Bound-electron corrections: scattering-function tables and IA precision.

The incoherent cross section is the Klein-Nishina one multiplied by a
per-arm scattering function ``S(x)``, looked up at the momentum-transfer
parameter ``x = sin(theta/2) E[keV] / 12.39842`` (inverse angstroms).
"""

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from bellcompton.bell_xsec import BellState, JointKinematics, ddxsec_kn
from bellcompton.kinematics import ELECTRON_REST_ENERGY_KEV, DomainError, scattered_energy_bound

# hc in keV * angstrom
HC_KEV_ANGSTROM = 12.39842
TABLE_HEADER = ("x_inv_angstrom", "s")


class TableParseError(ValueError):
    """A scattering-function file violates the expected format."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ScatteringFunctionTable:
    element_z: int
    x: np.ndarray
    s: np.ndarray
    name: str = ""

    @property
    def is_free_electron(self) -> bool:
        return bool(np.all(self.s == 1.0))

    def __len__(self):
        return len(self.x)


def load_scattering_table(source, element_z: int, name: str = "") -> ScatteringFunctionTable:
    """Parse a ``x_inv_angstrom,s`` CSV into a table.

    ``source`` is a binary or text stream. Rows must have strictly
    increasing ``x`` and nondecreasing ``s`` within ``[0, element_z]``;
    the first offending line is named in the :class:`TableParseError`.
    """
    if element_z < 1:
        raise DomainError(f"atomic number must be >= 1, got {element_z}")
    raw = source.read()
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TableParseError(1, f"not UTF-8: {exc}") from None
    rows = csv.reader(io.StringIO(raw))
    xs, ss = [], []
    header_seen = False
    for lineno, row in enumerate(rows, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if not header_seen:
            if tuple(cell.strip() for cell in row) != TABLE_HEADER:
                raise TableParseError(lineno, f"expected header {','.join(TABLE_HEADER)!r}")
            header_seen = True
            continue
        if len(row) != 2:
            raise TableParseError(lineno, f"expected 2 columns, got {len(row)}")
        try:
            x, s = float(row[0]), float(row[1])
        except ValueError:
            raise TableParseError(lineno, f"not a number: {','.join(row)!r}") from None
        if not (math.isfinite(x) and math.isfinite(s)):
            raise TableParseError(lineno, "non-finite value")
        if x < 0:
            raise TableParseError(lineno, f"x must be >= 0, got {x}")
        if not 0.0 <= s <= element_z:
            raise TableParseError(lineno, f"s={s} outside [0, Z={element_z}]")
        if xs and x <= xs[-1]:
            raise TableParseError(lineno, f"x not strictly increasing ({x} after {xs[-1]})")
        if ss and s < ss[-1]:
            raise TableParseError(lineno, f"s decreasing ({s} after {ss[-1]})")
        xs.append(x)
        ss.append(s)
    if not header_seen:
        raise TableParseError(1, "empty table")
    if not xs:
        raise TableParseError(1, "no data rows")
    return ScatteringFunctionTable(element_z, np.array(xs), np.array(ss), name)


def free_electron_table() -> ScatteringFunctionTable:
    """The bundled ``S == 1`` table: incoherent equals Klein-Nishina."""
    with resources.files("bellcompton").joinpath("data/free_electron.csv").open("rb") as fh:
        return load_scattering_table(fh, 1, name="free-electron")


def momentum_transfer(theta, e_o):
    """``sin(theta/2) E_o / hc`` in inverse angstroms, ``e_o`` in mc^2 units."""
    return np.sin(np.asarray(theta, dtype=float) / 2.0) * (np.asarray(e_o) * ELECTRON_REST_ENERGY_KEV) / HC_KEV_ANGSTROM


def evaluate_s(table: ScatteringFunctionTable, theta, e_o):
    """Linearly interpolated S; clamps to the end values outside the table."""
    out = np.interp(momentum_transfer(theta, e_o), table.x, table.s)
    return float(out) if np.ndim(out) == 0 else out


def incoherent_ddxsec(state: BellState, jk: JointKinematics, table: ScatteringFunctionTable):
    return (
        ddxsec_kn(state, jk)
        * evaluate_s(table, jk.theta_i, jk.e_oi)
        * evaluate_s(table, jk.theta_s, jk.e_os)
    )


@dataclass(frozen=True)
class PrecisionInput:
    e_oi: float
    e_os: float
    theta_i: float
    theta_s: float
    e_b: float

    def __post_init__(self):
        e_b = np.asarray(self.e_b, dtype=float)
        if np.any(e_b < 0):
            raise DomainError("binding energy must be >= 0")
        if np.any(np.asarray(self.e_oi) <= e_b) or np.any(np.asarray(self.e_os) <= e_b):
            raise DomainError(
                "kinematically forbidden: incident energy must exceed the binding energy"
            )


def ia_precision(p: PrecisionInput):
    """Fractional impulse-approximation precision of a two-arm cross section.

    Each arm contributes ``(E_b / (E_o - E))**2`` with ``E`` the scattered
    energy off the bound electron; the two add in quadrature.
    """
    e_i = scattered_energy_bound(p.e_oi, p.e_b, p.theta_i)
    e_s = scattered_energy_bound(p.e_os, p.e_b, p.theta_s)
    e_b2 = np.asarray(p.e_b, dtype=float) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        idler = np.where(e_b2 == 0, 0.0, e_b2 / (p.e_oi - e_i) ** 2)
        signal = np.where(e_b2 == 0, 0.0, e_b2 / (p.e_os - e_s) ** 2)
    out = np.sqrt(idler**2 + signal**2)
    return float(out) if out.ndim == 0 else out


def xsec_with_band(state: BellState, jk: JointKinematics, table: ScatteringFunctionTable, e_b):
    """Incoherent cross section and the half width of its IA precision band.

    Returns ``(central, half_width)`` with ``half_width = central * A / 2``.
    """
    central = incoherent_ddxsec(state, jk, table)
    a = ia_precision(PrecisionInput(jk.e_oi, jk.e_os, jk.theta_i, jk.theta_s, e_b))
    return central, 0.5 * central * a
