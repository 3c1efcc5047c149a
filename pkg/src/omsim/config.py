"""Scenario configuration files: strict JSON parsing and object assembly.

Configs are JSON with nested blocks (resonator, material, kittel, drive,
and optionally sweep and output). Parsing is strict: unknown keys and
missing required keys are rejected with the exact key path. Every numeric
key carries its unit as a suffix (``diameter_um``, ``power_dbm``, ...);
there are no bare numbers with implicit units.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .constants import PLANCK, TWO_PI
from .instrument import dbm_to_watts, photon_flux
from .magnonics import (
    MATERIAL_PRESETS,
    KittelMode,
    MagnetMaterial,
    SampleGeometry,
    coupling_g_theory,
)
from .resonator import (
    LadderFamily,
    ModeLadder,
    Polarization,
    ResonatorSpec,
    build_ladder,
    gb_split,
)
from .scattering import MicrowaveDrive, Orbit, ScatteringScenario
from .spectra import default_sweep_step


class ConfigError(Exception):
    """A configuration defect, annotated with the offending key path."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def _check_keys(block: dict, path: str, required: set[str], optional: set[str] = frozenset()):
    if not isinstance(block, dict):
        raise ConfigError(path, f"expected an object, got {type(block).__name__}")
    unknown = set(block) - required - set(optional)
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"{path}.{key}", "unknown key")
    missing = required - set(block)
    if missing:
        key = sorted(missing)[0]
        raise ConfigError(f"{path}.{key}", "required key missing")


def _number(block: dict, key: str, path: str, *, positive=False, nonnegative=False) -> float:
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}", f"expected a number, got {value!r}")
    value = float(value)
    if positive and not value > 0:
        raise ConfigError(f"{path}.{key}", f"must be positive, got {value}")
    if nonnegative and value < 0:
        raise ConfigError(f"{path}.{key}", f"must be nonnegative, got {value}")
    return value


def _string(block: dict, key: str, path: str) -> str:
    value = block[key]
    if not isinstance(value, str):
        raise ConfigError(f"{path}.{key}", f"expected a string, got {value!r}")
    return value


def _integer(block: dict, key: str, path: str, minimum: int) -> int:
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key}", f"expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{path}.{key}", f"must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class DriveSettings:
    orbit: Orbit
    input_polarization: Polarization
    laser_frequency: float
    optical_flux: float
    optical_power: float | None
    microwave: MicrowaveDrive
    coupling_g: float
    coupling_g_source: str
    spin_orbit_imperfection: float


@dataclass(frozen=True)
class SweepSettings:
    start: float
    stop: float
    step: float | None
    points_per_linewidth: float


@dataclass(frozen=True)
class ParsedConfig:
    """A validated configuration with all domain objects assembled."""

    raw: dict
    sha256: str
    resonator: ResonatorSpec
    families: tuple[LadderFamily, ...]
    n_fsr_copies: int
    anchor_frequency: float
    ladder: ModeLadder
    material: MagnetMaterial
    sample: SampleGeometry
    kittel: KittelMode
    drive: DriveSettings
    sweep: SweepSettings | None
    output_directory: str


def _build_resonator(block: dict):
    path = "resonator"
    _check_keys(
        block, path,
        required={"diameter_um", "refractive_index", "anchor_frequency_ghz", "families"},
        optional={"observed_fsr_ghz", "n_fsr_copies"},
    )
    diameter = _number(block, "diameter_um", path, positive=True) * 1e-6
    index = _number(block, "refractive_index", path)
    if not index > 1:
        raise ConfigError(f"{path}.refractive_index", f"must exceed 1, got {index}")
    override = None
    if "observed_fsr_ghz" in block:
        override = _number(block, "observed_fsr_ghz", path, positive=True) * 1e9
    try:
        spec = ResonatorSpec(diameter, index, override)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None
    anchor = _number(block, "anchor_frequency_ghz", path, positive=True) * 1e9
    n_copies = _integer(block, "n_fsr_copies", path, 1) if "n_fsr_copies" in block else 1

    raw_families = block["families"]
    if not isinstance(raw_families, list):
        raise ConfigError(f"{path}.families", "expected a list")
    split = gb_split(spec)
    families = []
    for i, fam in enumerate(raw_families):
        fpath = f"{path}.families[{i}]"
        _check_keys(
            fam, fpath,
            required={"weight", "offset_ghz", "te_kappa_ghz", "tm_kappa_ghz"},
            optional={"intrinsic_q", "te_gamma_ghz", "tm_gamma_ghz"},
        )
        weight = _number(fam, "weight", fpath, nonnegative=True)
        offset = _number(fam, "offset_ghz", fpath) * 1e9
        kappa_te = _number(fam, "te_kappa_ghz", fpath, nonnegative=True) * 1e9
        kappa_tm = _number(fam, "tm_kappa_ghz", fpath, nonnegative=True) * 1e9
        has_q = "intrinsic_q" in fam
        has_gammas = "te_gamma_ghz" in fam or "tm_gamma_ghz" in fam
        if has_q == has_gammas:
            raise ConfigError(
                fpath, "give either intrinsic_q or explicit te_gamma_ghz/tm_gamma_ghz"
            )
        if has_q:
            q = _number(fam, "intrinsic_q", fpath, positive=True)
            te_frequency = anchor + offset
            gamma_te = te_frequency / q
            gamma_tm = (te_frequency + split) / q
        else:
            if "te_gamma_ghz" not in fam or "tm_gamma_ghz" not in fam:
                raise ConfigError(fpath, "explicit linewidths need both te_gamma_ghz and tm_gamma_ghz")
            gamma_te = _number(fam, "te_gamma_ghz", fpath, nonnegative=True) * 1e9
            gamma_tm = _number(fam, "tm_gamma_ghz", fpath, nonnegative=True) * 1e9
        families.append(LadderFamily(weight, offset, gamma_te, kappa_te, gamma_tm, kappa_tm))
    return spec, tuple(families), n_copies, anchor


def _build_material(block: dict) -> MagnetMaterial:
    path = "material"
    _check_keys(
        block, path,
        required=set(),
        optional={"preset", "verdet_rad_per_cm", "spin_density_per_m3", "refractive_index",
                  "relative_permittivity", "absorption_per_cm", "lande_g"},
    )
    fields: dict = {}
    if "preset" in block:
        name = _string(block, "preset", path)
        if name not in MATERIAL_PRESETS:
            raise ConfigError(f"{path}.preset", f"unknown preset {name!r}; "
                              f"known: {sorted(MATERIAL_PRESETS)}")
        base = MATERIAL_PRESETS[name]()
        fields = {
            "verdet": base.verdet,
            "spin_density": base.spin_density,
            "refractive_index": base.refractive_index,
            "relative_permittivity": base.relative_permittivity,
            "absorption": base.absorption,
            "lande_g": base.lande_g,
            "notes": base.notes,
        }
    if "verdet_rad_per_cm" in block:
        fields["verdet"] = _number(block, "verdet_rad_per_cm", path, positive=True) * 100.0
    if "spin_density_per_m3" in block:
        fields["spin_density"] = _number(block, "spin_density_per_m3", path, positive=True)
    if "refractive_index" in block:
        fields["refractive_index"] = _number(block, "refractive_index", path, positive=True)
    if "relative_permittivity" in block:
        fields["relative_permittivity"] = _number(block, "relative_permittivity", path, positive=True)
    if "absorption_per_cm" in block:
        fields["absorption"] = _number(block, "absorption_per_cm", path, positive=True) * 100.0
    if "lande_g" in block:
        fields["lande_g"] = _number(block, "lande_g", path, positive=True)
    for required_field in ("verdet", "spin_density", "refractive_index"):
        if required_field not in fields:
            raise ConfigError(path, f"no preset given and {required_field} not specified")
    try:
        return MagnetMaterial(**fields)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None


def _build_kittel(block: dict) -> KittelMode:
    path = "kittel"
    _check_keys(
        block, path,
        required={"frequency_ghz"},
        optional={"loaded_q", "gamma_mhz", "kappa_mhz"},
    )
    frequency = _number(block, "frequency_ghz", path, positive=True) * 1e9
    has_q = "loaded_q" in block
    has_rates = "gamma_mhz" in block or "kappa_mhz" in block
    if has_q == has_rates:
        raise ConfigError(path, "give either loaded_q (critical coupling) or "
                          "explicit gamma_mhz and kappa_mhz")
    try:
        if has_q:
            return KittelMode.from_loaded_q(frequency, _number(block, "loaded_q", path, positive=True))
        if "gamma_mhz" not in block or "kappa_mhz" not in block:
            raise ConfigError(path, "explicit rates need both gamma_mhz and kappa_mhz")
        gamma = _number(block, "gamma_mhz", path, nonnegative=True) * 1e6
        kappa = _number(block, "kappa_mhz", path, nonnegative=True) * 1e6
        return KittelMode(frequency, gamma, kappa)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None


def _build_drive(block: dict, material: MagnetMaterial, sample: SampleGeometry,
                 kittel: KittelMode) -> DriveSettings:
    path = "drive"
    _check_keys(
        block, path,
        required={"orbit", "input_polarization", "laser_frequency_ghz"},
        optional={"optical_power_mw", "optical_flux_per_s", "microwave_power_dbm",
                  "microwave_flux_per_s", "microwave_frequency_ghz", "coupling_g_hz",
                  "coupling_g_theory", "spin_orbit_imperfection"},
    )
    orbit_name = _string(block, "orbit", path).upper()
    try:
        orbit = Orbit(orbit_name)
    except ValueError:
        raise ConfigError(f"{path}.orbit", f"expected CCW or CW, got {orbit_name!r}") from None
    pol_name = _string(block, "input_polarization", path).upper()
    try:
        polarization = Polarization(pol_name)
    except ValueError:
        raise ConfigError(f"{path}.input_polarization",
                          f"expected TE or TM, got {pol_name!r}") from None
    laser = _number(block, "laser_frequency_ghz", path, positive=True) * 1e9

    power = None
    if "optical_power_mw" in block:
        power = _number(block, "optical_power_mw", path, positive=True) * 1e-3
    if "optical_flux_per_s" in block:
        flux = _number(block, "optical_flux_per_s", path, nonnegative=True)
    elif power is not None:
        flux = photon_flux(power, laser)
    else:
        raise ConfigError(path, "give optical_power_mw or optical_flux_per_s")

    mw_frequency = kittel.frequency
    if "microwave_frequency_ghz" in block:
        mw_frequency = _number(block, "microwave_frequency_ghz", path, positive=True) * 1e9
    if "microwave_flux_per_s" in block:
        microwave = MicrowaveDrive(_number(block, "microwave_flux_per_s", path, nonnegative=True),
                                   mw_frequency)
    elif "microwave_power_dbm" in block:
        dbm = _number(block, "microwave_power_dbm", path)
        microwave = MicrowaveDrive.from_power(dbm_to_watts(dbm), mw_frequency)
    else:
        raise ConfigError(path, "give microwave_power_dbm or microwave_flux_per_s")

    wants_theory = bool(block.get("coupling_g_theory", False))
    has_explicit = "coupling_g_hz" in block
    if wants_theory == has_explicit:
        raise ConfigError(path, "give exactly one of coupling_g_hz or coupling_g_theory")
    if has_explicit:
        coupling_g = TWO_PI * _number(block, "coupling_g_hz", path, nonnegative=True)
        source = "explicit"
    else:
        coupling_g = coupling_g_theory(material, sample)
        source = "theory"

    epsilon = 0.0
    if "spin_orbit_imperfection" in block:
        epsilon = _number(block, "spin_orbit_imperfection", path, nonnegative=True)
        if epsilon > 1.0:
            raise ConfigError(f"{path}.spin_orbit_imperfection", f"must be <= 1, got {epsilon}")

    return DriveSettings(orbit, polarization, laser, flux, power, microwave,
                         coupling_g, source, epsilon)


def _build_sweep(block: dict) -> SweepSettings:
    path = "sweep"
    _check_keys(block, path, required={"start_ghz", "stop_ghz"},
                optional={"step_ghz", "points_per_linewidth"})
    start = _number(block, "start_ghz", path, positive=True) * 1e9
    stop = _number(block, "stop_ghz", path, positive=True) * 1e9
    if not stop > start:
        raise ConfigError(f"{path}.stop_ghz", "sweep stop must exceed start (empty grid)")
    step = None
    if "step_ghz" in block:
        step = _number(block, "step_ghz", path, positive=True) * 1e9
    ppl = 20.0
    if "points_per_linewidth" in block:
        ppl = _number(block, "points_per_linewidth", path, positive=True)
    return SweepSettings(start, stop, step, ppl)


def parse_config(raw: dict) -> ParsedConfig:
    """Validate a configuration dict and assemble the domain objects."""
    path = "config"
    _check_keys(raw, path, required={"resonator", "material", "kittel", "drive"},
                optional={"sweep", "output"})
    spec, families, n_copies, anchor = _build_resonator(raw["resonator"])
    ladder = build_ladder(spec, list(families), n_copies, anchor)
    material = _build_material(raw["material"])
    sample = SampleGeometry.sphere(spec.diameter)
    kittel = _build_kittel(raw["kittel"])
    drive = _build_drive(raw["drive"], material, sample, kittel)
    sweep = _build_sweep(raw["sweep"]) if "sweep" in raw else None
    output_directory = "out"
    if "output" in raw:
        _check_keys(raw["output"], "output", required=set(), optional={"directory"})
        if "directory" in raw["output"]:
            output_directory = _string(raw["output"], "directory", "output")
    digest = hashlib.sha256(
        json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    return ParsedConfig(raw, digest, spec, families, n_copies, anchor, ladder,
                        material, sample, kittel, drive, sweep, output_directory)


def load_config(config_path) -> ParsedConfig:
    """Read and validate a JSON configuration file."""
    try:
        with open(config_path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {config_path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {config_path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return parse_config(raw)


def select_mode_pair(ladder: ModeLadder, pump_polarization: Polarization, laser_frequency: float):
    """The complete TE/TM family whose pump mode lies closest to the laser.

    Returns (family_id, te_mode, tm_mode); deterministic tie-break on the
    family id.
    """
    best = None
    families = ladder.families()
    for family_id in sorted(families):
        members = families[family_id]
        if Polarization.TE not in members or Polarization.TM not in members:
            continue
        pump = members[pump_polarization]
        distance = abs(pump.frequency - laser_frequency)
        if best is None or distance < best[0]:
            best = (distance, family_id, members[Polarization.TE], members[Polarization.TM])
    if best is None:
        raise ConfigError("resonator.families",
                          "no complete TE/TM family available for the scattering scenario")
    return best[1], best[2], best[3]


def assemble_scenario(parsed: ParsedConfig):
    """Build the ScatteringScenario from a parsed configuration.

    Returns (scenario, family_id of the selected mode pair).
    """
    drive = parsed.drive
    family_id, te_mode, tm_mode = select_mode_pair(
        parsed.ladder, drive.input_polarization, drive.laser_frequency
    )
    scenario = ScatteringScenario(
        orbit=drive.orbit,
        input_polarization=drive.input_polarization,
        input_flux=drive.optical_flux,
        laser_frequency=drive.laser_frequency,
        te_mode=te_mode,
        tm_mode=tm_mode,
        kittel=parsed.kittel,
        coupling_g=drive.coupling_g,
        microwave=drive.microwave,
        spin_orbit_imperfection=drive.spin_orbit_imperfection,
    )
    return scenario, family_id


def sweep_grid(parsed: ParsedConfig) -> np.ndarray:
    """Laser-frequency grid from the sweep block (default step: Gamma_min/20)."""
    if parsed.sweep is None:
        raise ConfigError("sweep", "required block missing")
    settings = parsed.sweep
    step = settings.step
    if step is None:
        if not parsed.ladder.modes:
            raise ConfigError("sweep", "cannot derive a default step from an empty ladder")
        step = default_sweep_step(parsed.ladder, settings.points_per_linewidth)
    count = int(math.floor((settings.stop - settings.start) / step)) + 1
    if count < 2:
        raise ConfigError("sweep", "grid has fewer than 2 points")
    return settings.start + step * np.arange(count)
