"""Run configuration shared by the CLI subcommands."""

import dataclasses
import json
import math
from dataclasses import dataclass
from typing import Optional

from bellcompton.bell_xsec import BellState
from bellcompton.geometry import ArrangementKind
from bellcompton.kinematics import HELIUM_BINDING_ENERGY_KEV


class ConfigError(ValueError):
    """Invalid configuration value; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class RunConfig:
    state: BellState = BellState.PSI_PLUS
    e_oi_kev: float = 12.5
    e_os_kev: float = 12.5
    e_b_kev: float = HELIUM_BINDING_ENERGY_KEV
    element_z: int = 2
    scattering_table_path: Optional[str] = None
    arrangement: ArrangementKind = ArrangementKind.ENERGY
    delta_theta_is_deg: float = 0.0
    theta_min_deg: float = 1.0
    theta_max_deg: float = 179.0
    theta_step_deg: float = 0.1
    output_format: str = "csv"
    output_path: str = "-"

    def validate(self) -> "RunConfig":
        for name in ("e_oi_kev", "e_os_kev", "e_b_kev", "delta_theta_is_deg",
                     "theta_min_deg", "theta_max_deg", "theta_step_deg"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(name, "must be finite")
        if self.e_oi_kev <= 0:
            raise ConfigError("e_oi_kev", "must be > 0")
        if self.e_os_kev <= 0:
            raise ConfigError("e_os_kev", "must be > 0")
        if self.e_b_kev < 0:
            raise ConfigError("e_b_kev", "must be >= 0")
        if self.e_b_kev >= min(self.e_oi_kev, self.e_os_kev):
            raise ConfigError("e_b_kev", "must be below both incident energies")
        if self.element_z < 1:
            raise ConfigError("element_z", "must be >= 1")
        if not 0.0 <= self.delta_theta_is_deg <= 90.0:
            raise ConfigError("delta_theta_is_deg", "must lie in [0, 90]")
        if not 0.0 <= self.theta_min_deg < self.theta_max_deg <= 180.0:
            raise ConfigError("theta_min_deg", "need 0 <= theta_min_deg < theta_max_deg <= 180")
        if self.theta_step_deg <= 0:
            raise ConfigError("theta_step_deg", "must be > 0")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("output_format", "must be 'csv' or 'json'")
        return self

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["state"] = self.state.value
        d["arrangement"] = self.arrangement.value
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name: f for f in dataclasses.fields(cls)}
        kwargs = {}
        for key, value in data.items():
            if key not in known:
                raise ConfigError(key, "unknown config field")
            kwargs[key] = _coerce(key, value)
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
        if not isinstance(data, dict):
            raise ConfigError("config", "must be a flat JSON object")
        return cls.from_dict(data)

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **{k: _coerce(k, v) for k, v in changes.items()})


_FLOATS = {"e_oi_kev", "e_os_kev", "e_b_kev", "delta_theta_is_deg",
           "theta_min_deg", "theta_max_deg", "theta_step_deg"}


def _coerce(key, value):
    try:
        if key == "state":
            return value if isinstance(value, BellState) else BellState.parse(value)
        if key == "arrangement":
            return value if isinstance(value, ArrangementKind) else ArrangementKind(value)
        if key in _FLOATS:
            if isinstance(value, bool):
                raise TypeError("boolean")
            return float(value)
        if key == "element_z":
            if isinstance(value, bool) or float(value) != int(value):
                raise TypeError("not an integer")
            return int(value)
        if key == "scattering_table_path":
            return None if value is None else str(value)
        return str(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, f"invalid value {value!r} ({exc})") from None
