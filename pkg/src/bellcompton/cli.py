"""Command-line front end.

    bellcompton xsec-scan  [flags]      cross sections at eta_max / eta_min
    bellcompton ratio-scan [flags]      azimuthal ratio vs theta
    bellcompton peak       [flags]      peak of the azimuthal ratio
    bellcompton figure NAME --out DIR   preset scans for the published figures

Flags override values from ``--config``. Angles are given in degrees and
energies in keV here; everything is converted once before the numerics.
"""

import argparse
import json
import math
import pathlib
import sys
from dataclasses import dataclass, field

import numpy as np

from bellcompton.bell_xsec import BellState, JointKinematics
from bellcompton.config import ConfigError, RunConfig
from bellcompton.geometry import ArrangementKind, PhaseMatching, arrangement_azimuths
from bellcompton.incoherent import (
    TableParseError,
    free_electron_table,
    load_scattering_table,
    xsec_with_band,
)
from bellcompton.kinematics import DomainError, kev_to_mc2
from bellcompton.ratios import StateFamily, peak_scan, ratio_nd, ratio_with_band, rho_nd

FIGURES = ("fig3a", "fig3b", "fig4a", "fig4b", "fig6")
REFINE_STEP_DEG = 0.001
FIGURE_STEP_DEG = 0.01


@dataclass
class Table:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)


def fmt(value) -> str:
    return format(float(value), ".9g")


def _json_number(value):
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(fmt(value))


def render(table: Table, output_format: str) -> str:
    if output_format == "json":
        payload = {
            "metadata": table.metadata,
            "columns": table.columns,
            "rows": [[_json_number(v) for v in row] for row in table.rows],
        }
        return json.dumps(payload, indent=1) + "\n"
    lines = [f"# {k}={_meta_str(v)}" for k, v in table.metadata.items()]
    lines.append(",".join(table.columns))
    lines.extend(",".join(fmt(v) for v in row) for row in table.rows)
    return "\n".join(lines) + "\n"


def _meta_str(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def theta_grid_deg(cfg: RunConfig) -> np.ndarray:
    n = int(math.floor((cfg.theta_max_deg - cfg.theta_min_deg) / cfg.theta_step_deg + 1e-9))
    return cfg.theta_min_deg + cfg.theta_step_deg * np.arange(n + 1)


def _load_table(cfg: RunConfig):
    if cfg.scattering_table_path is None:
        return free_electron_table()
    try:
        with open(cfg.scattering_table_path, "rb") as fh:
            return load_scattering_table(fh, cfg.element_z, name=cfg.scattering_table_path)
    except OSError as exc:
        raise ConfigError("scattering_table_path", f"cannot read: {exc.strerror}") from None
    except TableParseError as exc:
        raise ConfigError("scattering_table_path", str(exc)) from None


def _energies(cfg: RunConfig):
    return kev_to_mc2(cfg.e_oi_kev), kev_to_mc2(cfg.e_os_kev), kev_to_mc2(cfg.e_b_kev)


def _common_metadata(cfg: RunConfig) -> dict:
    return {
        "state": cfg.state.value,
        "arrangement": cfg.arrangement.value,
        "e_oi_kev": cfg.e_oi_kev,
        "e_os_kev": cfg.e_os_kev,
        "e_b_kev": cfg.e_b_kev,
        "delta_theta_is_deg": cfg.delta_theta_is_deg,
    }


def xsec_scan(cfg: RunConfig) -> Table:
    cfg.validate()
    table = _load_table(cfg)
    e_oi, e_os, e_b = _energies(cfg)
    pm = PhaseMatching(math.radians(cfg.delta_theta_is_deg))
    eta_max, eta_min = arrangement_azimuths(cfg.arrangement, pm)
    deg = theta_grid_deg(cfg)
    theta = np.radians(deg)
    cols = [deg]
    results = [
        xsec_with_band(cfg.state, JointKinematics(theta, theta, eta, e_oi, e_os), table, e_b)
        for eta in (eta_max, eta_min)
    ]
    cols += [results[0][0], results[1][0], results[0][1], results[1][1]]
    meta = _common_metadata(cfg)
    meta.update(
        units="r0^4",
        eta_max_deg=math.degrees(eta_max),
        eta_min_deg=math.degrees(eta_min),
        scattering_table=table.name,
        free_electron_table=table.is_free_electron,
    )
    return Table(
        ["theta_deg", "xsec_eta_max", "xsec_eta_min", "half_width_max", "half_width_min"],
        list(zip(*cols)),
        meta,
    )


def _ratio_function(cfg: RunConfig):
    e_oi, e_os, _ = _energies(cfg)
    family = StateFamily.of(cfg.state)
    if cfg.arrangement is ArrangementKind.ENERGY:
        return lambda th: ratio_nd(th, e_oi, e_os, family)
    delta = math.radians(cfg.delta_theta_is_deg)
    return lambda th: rho_nd(th, e_oi, e_os, delta, family)


def _band(cfg: RunConfig, theta):
    e_oi, e_os, e_b = _energies(cfg)
    pm = None if cfg.arrangement is ArrangementKind.ENERGY else math.radians(cfg.delta_theta_is_deg)
    return ratio_with_band(theta, e_oi, e_os, e_b, StateFamily.of(cfg.state), pm)


def ratio_scan(cfg: RunConfig) -> Table:
    cfg.validate()
    deg = theta_grid_deg(cfg)
    res = _band(cfg, np.radians(deg))
    meta = _common_metadata(cfg)
    meta["observable"] = "R" if cfg.arrangement is ArrangementKind.ENERGY else "rho"
    return Table(["theta_deg", "ratio", "half_width"], list(zip(deg, res.value, res.half_width)), meta)


def peak(cfg: RunConfig) -> dict:
    cfg.validate()
    rep = peak_scan(
        _ratio_function(cfg),
        math.radians(cfg.theta_min_deg),
        math.radians(cfg.theta_max_deg),
        coarse_step=math.radians(cfg.theta_step_deg),
        refine_step=math.radians(REFINE_STEP_DEG),
    )
    band = _band(cfg, rep.theta_star)
    return {
        "theta_star_deg": _json_number(math.degrees(rep.theta_star)),
        "value": _json_number(rep.value_star),
        "half_width": _json_number(band.half_width),
        "grid_step_deg": _json_number(math.degrees(rep.grid_step)),
    }


def _preset(**kw) -> RunConfig:
    base = dict(theta_min_deg=1.0, theta_max_deg=179.0, theta_step_deg=FIGURE_STEP_DEG)
    base.update(kw)
    return RunConfig().replace(**base).validate()


def figure_runs(name: str) -> list:
    """``(file, command, [configs])`` triples making up a figure preset."""
    psi, phi = BellState.PSI_PLUS, BellState.PHI_PLUS
    nd = dict(e_oi_kev=10.0, e_os_kev=15.0)
    if name == "fig3a":
        return [("fig3a_xsec.csv", "xsec-scan", [_preset(state=psi)])]
    if name == "fig3b":
        return [
            ("fig3b_xsec_psi.csv", "xsec-scan", [_preset(state=psi, **nd)]),
            ("fig3b_xsec_phi.csv", "xsec-scan", [_preset(state=phi, **nd)]),
        ]
    if name == "fig4a":
        return [("fig4a_ratio.csv", "ratio-scan", [_preset(state=psi)])]
    if name == "fig4b":
        return [
            ("fig4b_ratio_psi.csv", "ratio-scan", [_preset(state=psi, **nd)]),
            ("fig4b_ratio_phi.csv", "ratio-scan", [_preset(state=phi, **nd)]),
        ]
    if name == "fig6":
        cfgs = [
            _preset(state=phi, arrangement="phase", delta_theta_is_deg=d, **nd)
            for d in (78.38, 81.53)
        ]
        return [
            ("fig6a_ratio.csv", "ratio-scan", cfgs),
            ("fig6b_xsec.csv", "xsec-scan", [cfgs[0]]),
            ("fig6c_xsec.csv", "xsec-scan", [cfgs[1]]),
        ]
    raise ConfigError("figure", f"unknown figure {name!r}; valid: {', '.join(FIGURES)}")


FIGURE_NOTES = {
    "energies": "12.5 keV degenerate pair; 10 and 15 keV nondegenerate pair (E_oi=0.8*12.5, E_os=1.2*12.5 keV)",
    "phase_matching": "delta_theta_is of 78.38 and 81.53 deg for diamond down-conversion (Shwartz and Harris 2011)",
    "binding_energy": "helium K shell, 0.0547 keV",
    "scattering_function": "free-electron table (S=1); absolute cross sections carry no bound-electron suppression",
}


def _merge_ratio_tables(tables, cfgs) -> Table:
    cols = ["theta_deg"]
    for c in cfgs:
        tag = fmt(c.delta_theta_is_deg)
        cols += [f"ratio_dtheta_{tag}", f"half_width_dtheta_{tag}"]
    rows = [
        (parts[0][0],) + tuple(v for p in parts for v in p[1:])
        for parts in zip(*(t.rows for t in tables))
    ]
    meta = dict(tables[0].metadata)
    meta["delta_theta_is_deg"] = " ".join(fmt(c.delta_theta_is_deg) for c in cfgs)
    return Table(cols, rows, meta)


def figure(name: str, out_dir) -> list:
    """Write a figure preset's CSVs and its ``<name>.json`` sidecar into ``out_dir``."""
    runs = figure_runs(name)
    out = pathlib.Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError("output_path", f"cannot create directory: {exc.strerror}") from None
    written = []
    sidecar = {"figure": name, "notes": FIGURE_NOTES, "outputs": []}
    for filename, command, cfgs in runs:
        cfgs = [c.replace(output_path=filename, output_format="csv") for c in cfgs]
        tables = [COMMANDS[command](c) for c in cfgs]
        table = tables[0] if len(tables) == 1 else _merge_ratio_tables(tables, cfgs)
        _write(out / filename, render(table, "csv"))
        written.append(out / filename)
        sidecar["outputs"].append(
            {"file": filename, "command": command, "configs": [c.to_dict() for c in cfgs]}
        )
    _write(out / f"{name}.json", json.dumps(sidecar, indent=1, sort_keys=True) + "\n")
    written.append(out / f"{name}.json")
    return written


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


COMMANDS = {"xsec-scan": xsec_scan, "ratio-scan": ratio_scan}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error: usage: {message.replace(chr(10), ' ')}\n")


def _add_run_flags(p):
    p.add_argument("--config", help="JSON run configuration (flat object)")
    p.add_argument("--state", help="PsiPlus, PsiMinus, PhiPlus or PhiMinus (psi+, phi- ... also accepted)")
    p.add_argument("--e-oi-kev", type=float, dest="e_oi_kev")
    p.add_argument("--e-os-kev", type=float, dest="e_os_kev")
    p.add_argument("--e-b-kev", type=float, dest="e_b_kev")
    p.add_argument("--z", type=int, dest="element_z")
    p.add_argument("--s-table", dest="scattering_table_path", help="scattering-function CSV")
    p.add_argument("--arrangement", choices=[k.value for k in ArrangementKind])
    p.add_argument("--delta-theta-is-deg", type=float, dest="delta_theta_is_deg")
    p.add_argument("--theta-min-deg", type=float, dest="theta_min_deg")
    p.add_argument("--theta-max-deg", type=float, dest="theta_max_deg")
    p.add_argument("--theta-step-deg", type=float, dest="theta_step_deg")
    p.add_argument("--format", choices=["csv", "json"], dest="output_format")
    p.add_argument("--out", dest="output_path", help="output file ('-' for stdout)")


RUN_FIELDS = ("state", "e_oi_kev", "e_os_kev", "e_b_kev", "element_z", "scattering_table_path",
              "arrangement", "delta_theta_is_deg", "theta_min_deg", "theta_max_deg",
              "theta_step_deg", "output_format", "output_path")


def build_parser():
    parser = _Parser(prog="bellcompton", description="Compton scattering of hard X-ray Bell states")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (
        ("xsec-scan", "cross sections at eta_max and eta_min vs theta"),
        ("ratio-scan", "azimuthal ratio vs theta"),
        ("peak", "locate the peak of the azimuthal ratio"),
    ):
        _add_run_flags(sub.add_parser(name, help=help_))
    fig = sub.add_parser("figure", help="reproduce a figure's data")
    fig.add_argument("name", choices=FIGURES)
    fig.add_argument("--out", default=".", help="output directory")
    return parser


def config_from_args(args) -> RunConfig:
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = RunConfig.from_json(fh.read())
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc.strerror}") from None
    else:
        cfg = RunConfig()
    overrides = {k: getattr(args, k) for k in RUN_FIELDS if getattr(args, k) is not None}
    return cfg.replace(**overrides).validate()


def _emit(text, path):
    if path == "-":
        sys.stdout.write(text)
    else:
        try:
            _write(path, text)
        except OSError as exc:
            raise ConfigError("output_path", f"cannot write {path}: {exc.strerror}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "figure":
            for path in figure(args.name, args.out):
                print(path)
            return 0
        cfg = config_from_args(args)
        if args.command == "peak":
            _emit(json.dumps(peak(cfg)) + "\n", cfg.output_path)
        else:
            _emit(render(COMMANDS[args.command](cfg), cfg.output_format), cfg.output_path)
    except ConfigError as exc:
        print(f"error: field={exc.field}: {str(exc).split(': ', 1)[1]}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
