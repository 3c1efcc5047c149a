"""Command-line front end.

    omsim selection  [--config cfg | --orbit CCW --polarization TM]
    omsim spectrum   --config cfg [--out dir]
    omsim xcorr      --spectrum-a a.csv --spectrum-b b.csv
                     --offset-start-ghz A --offset-stop-ghz B --offset-step-ghz S
                     [--min-prominence P] [--out dir]
    omsim efficiency --config cfg [--improved all|stage,stage,...]
                     [--improved-pump-mw 20] [--out dir]
    omsim validate   --config cfg

Every command is deterministic: identical inputs produce byte-identical
outputs. Reports embed the configuration hash and tool version, never
timestamps. Exit codes: 0 success, 2 configuration error, 3 when --strict
turns runtime warnings into errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, assemble_scenario, load_config, sweep_grid
from .resonator import Polarization, export_ladder_csv
from .scattering import (
    IMPROVEMENT_STAGES,
    Orbit,
    channel_fluxes,
    conversion_efficiency,
    improvement_report,
    select_process,
    weak_coupling_check,
)
from .spectra import (
    SweepDirection,
    correlation_peaks,
    cross_correlation,
    read_spectrum_csv,
    sweep,
    write_correlation_csv,
    write_spectrum_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STRICT_WARNINGS = 3


def _report_skeleton(command: str, source_hash: str) -> dict:
    return {
        "tool": {"name": "omsim", "version": __version__},
        "command": command,
        "config_sha256": source_hash,
    }


def _write_report(report: dict, out_dir: Path, name: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return path


def _collect_warnings(recorded) -> list[str]:
    """Deduplicated warning messages, in first-appearance order."""
    seen: list[str] = []
    for item in recorded:
        message = str(item.message)
        if message not in seen:
            seen.append(message)
    return seen


def _scenario_inputs(parsed, scenario, family_id) -> dict:
    drive = parsed.drive
    return {
        "orbit": scenario.orbit.value,
        "input_polarization": scenario.input_polarization.value,
        "laser_frequency_Hz": scenario.laser_frequency,
        "optical_input_flux_per_s": scenario.input_flux,
        "optical_power_W": drive.optical_power,
        "microwave_flux_per_s": scenario.microwave.flux,
        "microwave_frequency_Hz": scenario.microwave.frequency,
        "coupling_g_rad_per_s": scenario.coupling_g,
        "coupling_g_source": drive.coupling_g_source,
        "spin_orbit_imperfection": scenario.spin_orbit_imperfection,
        "selected_family_id": family_id,
        "te_mode_Hz": scenario.te_mode.frequency,
        "tm_mode_Hz": scenario.tm_mode.frequency,
        "kittel_frequency_Hz": scenario.kittel.frequency,
        "kittel_gamma_Hz": scenario.kittel.gamma,
        "kittel_kappa_Hz": scenario.kittel.kappa,
    }


def cmd_selection(args) -> int:
    if args.config:
        parsed = load_config(args.config)
        orbit = parsed.drive.orbit
        polarization = parsed.drive.input_polarization
    else:
        if not (args.orbit and args.polarization):
            raise ConfigError("selection", "give --config or both --orbit and --polarization")
        orbit = Orbit(args.orbit.upper())
        polarization = Polarization(args.polarization.upper())
    rows = []
    for row_orbit in (Orbit.CCW, Orbit.CW):
        for row_pol in (Polarization.TM, Polarization.TE):
            outcome = select_process(row_orbit, row_pol)
            marker = "  <-- selected" if (row_orbit, row_pol) == (orbit, polarization) else ""
            rows.append(
                f"{row_orbit.value:<5} {row_pol.value:<6} "
                f"{outcome.intracavity_polarization:<7} "
                f"{outcome.magnon_change:+d}      "
                f"{outcome.sideband.value:<5} {outcome.output_polarization.value}{marker}"
            )
    print("orbit input  cavity  magnon  side  output")
    for row in rows:
        print(row)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    parsed = load_config(args.config)
    if not parsed.ladder.modes:
        raise ConfigError("resonator.families", "spectrum needs a nonempty mode ladder")
    grid = sweep_grid(parsed)
    out_dir = Path(args.out) if args.out else Path(parsed.output_directory)
    with warnings.catch_warnings(record=True) as recorded:
        warnings.simplefilter("always")
        te_tm = sweep(parsed.ladder, parsed.kittel, grid, SweepDirection.TE_TO_TM)
        tm_te = sweep(parsed.ladder, parsed.kittel, grid, SweepDirection.TM_TO_TE)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {
        "te_to_tm_csv": out_dir / "spectrum_te_to_tm.csv",
        "tm_to_te_csv": out_dir / "spectrum_tm_to_te.csv",
        "ladder_csv": out_dir / "ladder.csv",
    }
    write_spectrum_csv(te_tm, files["te_to_tm_csv"])
    write_spectrum_csv(tm_te, files["tm_to_te_csv"])
    export_ladder_csv(parsed.ladder, files["ladder_csv"])
    report = _report_skeleton("spectrum", parsed.sha256)
    report["inputs"] = {
        "kittel_frequency_Hz": parsed.kittel.frequency,
        "n_modes": len(parsed.ladder.modes),
        "fsr_Hz": parsed.ladder.fsr,
        "grid_start_Hz": grid[0],
        "grid_stop_Hz": grid[-1],
        "grid_points": len(grid),
    }
    report["outputs"] = {key: path.name for key, path in files.items()}
    report["warnings"] = _collect_warnings(recorded)
    report_path = _write_report(report, out_dir, "spectrum_report.json")
    print(f"wrote {', '.join(str(p) for p in files.values())} and {report_path}")
    return _exit_code(report, args)


def cmd_xcorr(args) -> int:
    spectrum_a = read_spectrum_csv(args.spectrum_a)
    spectrum_b = read_spectrum_csv(args.spectrum_b)
    start = args.offset_start_ghz * 1e9
    stop = args.offset_stop_ghz * 1e9
    step = args.offset_step_ghz * 1e9
    if not step > 0 or not stop > start:
        raise ConfigError("xcorr.offsets", "need offset stop > start and step > 0")
    count = int(np.floor((stop - start) / step)) + 1
    offsets = start + step * np.arange(count)
    with warnings.catch_warnings(record=True) as recorded:
        warnings.simplefilter("always")
        curve = cross_correlation(spectrum_a, spectrum_b, offsets)
        peaks = correlation_peaks(curve, args.min_prominence)
    out_dir = Path(args.out) if args.out else Path("out")
    out_dir.mkdir(parents=True, exist_ok=True)
    curve_path = out_dir / "correlation.csv"
    write_correlation_csv(curve, curve_path)
    digest = hashlib.sha256(
        Path(args.spectrum_a).read_bytes() + Path(args.spectrum_b).read_bytes()
    ).hexdigest()
    peak_values = np.interp(peaks, curve.offsets, curve.values) if len(peaks) else np.array([])
    report = _report_skeleton("xcorr", digest)
    report["inputs"] = {
        "spectrum_a": Path(args.spectrum_a).name,
        "spectrum_b": Path(args.spectrum_b).name,
        "offset_start_Hz": start,
        "offset_stop_Hz": stop,
        "offset_step_Hz": step,
        "min_prominence": args.min_prominence,
    }
    report["outputs"] = {
        "correlation_csv": curve_path.name,
        "peaks": [
            {"offset_Hz": float(off), "R": float(val)}
            for off, val in zip(peaks, peak_values)
        ],
    }
    report["warnings"] = _collect_warnings(recorded)
    report_path = _write_report(report, out_dir, "xcorr_report.json")
    print(f"wrote {curve_path} and {report_path}")
    return _exit_code(report, args)


def _parse_improved(value: str) -> tuple[str, ...]:
    if value == "all":
        return IMPROVEMENT_STAGES
    stages = tuple(part.strip().replace("-", "_") for part in value.split(",") if part.strip())
    if not stages:
        raise ConfigError("efficiency.improved", "empty stage list")
    for stage in stages:
        if stage not in IMPROVEMENT_STAGES:
            raise ConfigError(
                "efficiency.improved",
                f"unknown stage {stage!r}; known: {', '.join(IMPROVEMENT_STAGES)}",
            )
    return stages


def cmd_efficiency(args) -> int:
    parsed = load_config(args.config)
    scenario, family_id = assemble_scenario(parsed)
    with warnings.catch_warnings(record=True) as recorded:
        warnings.simplefilter("always")
        fluxes = channel_fluxes(scenario)
        eta = conversion_efficiency(scenario)
        weak = weak_coupling_check(scenario)
        improved = None
        if args.improved:
            stages = _parse_improved(args.improved)
            improved = improvement_report(
                scenario,
                stages,
                improved_pump_power=args.improved_pump_mw * 1e-3,
                baseline_pump_power=parsed.drive.optical_power,
            )
    report = _report_skeleton("efficiency", parsed.sha256)
    report["inputs"] = _scenario_inputs(parsed, scenario, family_id)
    report["outputs"] = {
        "efficiency": eta,
        "weak_coupling": {"ok": weak.ok, "margin": weak.margin},
        "fluxes_per_s": {
            "allowed": fluxes.allowed,
            "forbidden": fluxes.forbidden,
        },
        "process": {
            "magnon_change": fluxes.allowed_process.magnon_change,
            "sideband": fluxes.allowed_process.sideband.value,
            "output_polarization": fluxes.allowed_process.output_polarization.value,
            "intracavity_polarization": fluxes.allowed_process.intracavity_polarization,
        },
    }
    if improved is not None:
        report["outputs"]["improvement"] = {
            "baseline_efficiency": improved.baseline_efficiency,
            "multipliers": improved.multipliers,
            "improved_efficiency": improved.improved_efficiency,
        }
    report["warnings"] = _collect_warnings(recorded)
    out_dir = Path(args.out) if args.out else Path(parsed.output_directory)
    report_path = _write_report(report, out_dir, "efficiency_report.json")
    print(f"wrote {report_path}")
    print(f"efficiency = {eta:.6e} (weak-coupling margin {weak.margin:.3e})")
    if improved is not None:
        print(f"improved efficiency = {improved.improved_efficiency:.6e}")
    return _exit_code(report, args)


def cmd_validate(args) -> int:
    with warnings.catch_warnings(record=True) as recorded:
        warnings.simplefilter("always")
        parsed = load_config(args.config)
    print(f"config OK (sha256 {parsed.sha256[:12]}, "
          f"{len(parsed.ladder.modes)} modes, material notes: "
          f"{parsed.material.notes or 'none'})")
    for message in _collect_warnings(recorded):
        print(f"warning: {message}")
    if args.strict and recorded:
        return EXIT_STRICT_WARNINGS
    return EXIT_OK


def _exit_code(report: dict, args) -> int:
    if args.strict and report.get("warnings"):
        print("error: warnings escalated by --strict", file=sys.stderr)
        return EXIT_STRICT_WARNINGS
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omsim",
        description="Whispering-gallery optomagnonics calculator",
    )
    parser.add_argument("--strict", action="store_true",
                        help="treat runtime warnings as errors (exit 3)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_sel = sub.add_parser("selection", help="print the scattering selection-rule table")
    p_sel.add_argument("--config")
    p_sel.add_argument("--orbit", choices=["CCW", "CW", "ccw", "cw"])
    p_sel.add_argument("--polarization", choices=["TE", "TM", "te", "tm"])
    p_sel.set_defaults(func=cmd_selection)

    p_spec = sub.add_parser("spectrum", help="sweep the scattering strength over laser frequency")
    p_spec.add_argument("--config", required=True)
    p_spec.add_argument("--out")
    p_spec.set_defaults(func=cmd_spectrum)

    p_x = sub.add_parser("xcorr", help="cross-correlate two sweep spectra")
    p_x.add_argument("--spectrum-a", required=True)
    p_x.add_argument("--spectrum-b", required=True)
    p_x.add_argument("--offset-start-ghz", type=float, required=True)
    p_x.add_argument("--offset-stop-ghz", type=float, required=True)
    p_x.add_argument("--offset-step-ghz", type=float, required=True)
    p_x.add_argument("--min-prominence", type=float, default=0.05)
    p_x.add_argument("--out")
    p_x.set_defaults(func=cmd_xcorr)

    p_eff = sub.add_parser("efficiency", help="microwave-to-optical conversion report")
    p_eff.add_argument("--config", required=True)
    p_eff.add_argument("--improved", metavar="STAGES",
                       help="'all' or comma-separated stages: "
                            + ", ".join(s.replace("_", "-") for s in IMPROVEMENT_STAGES))
    p_eff.add_argument("--improved-pump-mw", type=float, default=20.0)
    p_eff.add_argument("--out")
    p_eff.set_defaults(func=cmd_efficiency)

    p_val = sub.add_parser("validate", help="check a configuration file")
    p_val.add_argument("--config", required=True)
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error at {exc.path}: {exc.message}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
