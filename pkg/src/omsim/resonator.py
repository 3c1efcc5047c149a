"""Optical mode structure of a whispering-gallery-mode (WGM) sphere.

Synthesizes the quantities a scattering calculation needs from the sphere
geometry: free spectral range, the TE/TM frequency split caused by
geometrical birefringence, parametric mode ladders, and per-mode Lorentzian
densities of states.

The TE/TM split follows the large-sphere asymptotics of the characteristic
equation for dielectric spheres (Schiller & Byer, Opt. Lett. 16, 1138):
TM resonances sit *above* TE resonances with the same mode indices.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .constants import SPEED_OF_LIGHT


class Polarization(str, Enum):
    TE = "TE"
    TM = "TM"


class EmptyLadderWarning(UserWarning):
    """A ladder was synthesized from an empty family list."""


@dataclass(frozen=True)
class ResonatorSpec:
    """Geometry and index of a dielectric WGM sphere.

    Attributes
    ----------
    diameter : float
        Sphere diameter [m].
    refractive_index : float
        Bulk refractive index at the operating wavelength; must exceed 1
        for total internal reflection (and for the birefringence square
        root to be real).
    observed_fsr_override : float, optional
        Measured free spectral range [Hz]. When set it replaces the
        large-sphere estimate in ladder synthesis; the estimate and the
        measured value typically differ at the few-percent level.
    """

    diameter: float
    refractive_index: float
    observed_fsr_override: float | None = None

    def __post_init__(self):
        if not self.diameter > 0:
            raise ValueError(f"diameter must be positive, got {self.diameter}")
        if not self.refractive_index > 1:
            raise ValueError(
                f"refractive index must exceed 1, got {self.refractive_index}"
            )
        if self.observed_fsr_override is not None and not self.observed_fsr_override > 0:
            raise ValueError(
                f"FSR override must be positive, got {self.observed_fsr_override}"
            )


@dataclass(frozen=True)
class OpticalMode:
    """One WGM resonance.

    Attributes
    ----------
    family_id : int
        Label of the (radial, polar) mode family the resonance belongs to.
    polarization : Polarization
        TE or TM.
    frequency : float
        Center frequency [Hz].
    gamma : float
        Intrinsic decay rate [Hz, FWHM].
    kappa : float
        External coupling rate [Hz, FWHM].
    weight : float
        Dimensionless contribution coefficient used in ladder sums.
    """

    family_id: int
    polarization: Polarization
    frequency: float
    gamma: float
    kappa: float
    weight: float = 1.0

    def __post_init__(self):
        if self.gamma < 0 or self.kappa < 0:
            raise ValueError("decay rates must be nonnegative")
        if not self.gamma + self.kappa > 0:
            raise ValueError("gamma + kappa must be positive (zero-linewidth mode)")
        if not self.frequency > 0:
            raise ValueError(f"mode frequency must be positive, got {self.frequency}")
        if self.weight < 0:
            raise ValueError(f"mode weight must be nonnegative, got {self.weight}")

    @property
    def total_linewidth(self) -> float:
        """Loaded linewidth Gamma = gamma + kappa [Hz, FWHM]."""
        return self.gamma + self.kappa


@dataclass(frozen=True)
class LadderFamily:
    """Per-family parameters for ladder synthesis.

    ``offset`` places the family's TE mode relative to the ladder anchor
    [Hz]; linewidths are FWHM rates [Hz] shared by all FSR copies.
    """

    weight: float
    offset: float
    gamma_te: float
    kappa_te: float
    gamma_tm: float
    kappa_tm: float


@dataclass(frozen=True)
class ModeLadder:
    """A set of WGM resonances plus the FSR used to synthesize them."""

    modes: tuple[OpticalMode, ...]
    fsr: float

    def __post_init__(self):
        if not self.fsr > 0:
            raise ValueError(f"fsr must be positive, got {self.fsr}")
        seen = set()
        for mode in self.modes:
            key = (mode.family_id, mode.polarization)
            if key in seen:
                raise ValueError(
                    f"duplicate mode for family {mode.family_id} "
                    f"polarization {mode.polarization.value}"
                )
            seen.add(key)

    def families(self) -> dict[int, dict[Polarization, OpticalMode]]:
        """Group modes by family id."""
        out: dict[int, dict[Polarization, OpticalMode]] = {}
        for mode in self.modes:
            out.setdefault(mode.family_id, {})[mode.polarization] = mode
        return out


def gb_split(spec: ResonatorSpec) -> float:
    """TM-above-TE frequency split from geometrical birefringence [Hz].

    Large-sphere limit:  (c / (pi * n * D)) * sqrt(1 - 1/n^2).
    Monotonically decreasing in the diameter; -> c/(pi*n*D) as n -> inf.
    """
    n = spec.refractive_index
    return (SPEED_OF_LIGHT / (math.pi * n * spec.diameter)) * math.sqrt(1.0 - 1.0 / n**2)


def analytic_fsr(spec: ResonatorSpec) -> float:
    """Free spectral range [Hz]: the override if present, else c/(pi*n*D).

    The estimate treats the orbit as a circumference of optical path
    length pi*n*D, valid for large azimuthal order.
    """
    if spec.observed_fsr_override is not None:
        return spec.observed_fsr_override
    return SPEED_OF_LIGHT / (math.pi * spec.refractive_index * spec.diameter)


def build_ladder(
    spec: ResonatorSpec,
    families: list[LadderFamily],
    n_fsr_copies: int = 1,
    anchor_frequency: float = 0.0,
) -> ModeLadder:
    """Synthesize a mode ladder from per-family parameters.

    For each family and each FSR copy ``k`` the ladder gets a TE mode at
    ``anchor_frequency + offset + k*fsr`` and a TM mode one birefringence
    split above it. Weights and linewidths are copied per family. Family
    ids are assigned uniquely per (family, copy) pair so that TE/TM
    partners can be matched unambiguously.
    """
    if n_fsr_copies < 1:
        raise ValueError(f"n_fsr_copies must be >= 1, got {n_fsr_copies}")
    if not anchor_frequency > 0:
        raise ValueError(f"anchor_frequency must be positive, got {anchor_frequency}")
    fsr = analytic_fsr(spec)
    if not families:
        warnings.warn("building a ladder from an empty family list", EmptyLadderWarning)
        return ModeLadder((), fsr)
    split = gb_split(spec)
    modes = []
    family_id = 0
    for k in range(n_fsr_copies):
        for fam in families:
            te_frequency = anchor_frequency + fam.offset + k * fsr
            modes.append(
                OpticalMode(family_id, Polarization.TE, te_frequency,
                            fam.gamma_te, fam.kappa_te, fam.weight)
            )
            modes.append(
                OpticalMode(family_id, Polarization.TM, te_frequency + split,
                            fam.gamma_tm, fam.kappa_tm, fam.weight)
            )
            family_id += 1
    return ModeLadder(tuple(modes), fsr)


def lorentzian_dos(mode, omega: float) -> float:
    """Lorentzian density of states of a resonance at frequency omega [1/Hz].

        rho(omega) = kappa / ((Omega - omega)^2 + (Gamma/2)^2)

    with Gamma = gamma + kappa. Strictly positive, symmetric about the
    center, peak value kappa/(Gamma/2)^2 on resonance, and full integral
    2*pi*kappa/Gamma. Works for any object exposing ``frequency``,
    ``gamma`` and ``kappa`` attributes (optical modes and the Kittel
    mode alike); a zero total linewidth is rejected at construction time
    by those types.
    """
    delta = mode.frequency - omega
    half_width = 0.5 * (mode.gamma + mode.kappa)
    return mode.kappa / (delta * delta + half_width * half_width)


LADDER_CSV_HEADER = ["family_id", "polarization", "frequency_Hz", "gamma_Hz", "kappa_Hz", "weight"]


def export_ladder_csv(ladder: ModeLadder, path) -> None:
    """Write one CSV row per mode (see LADDER_CSV_HEADER for columns)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(LADDER_CSV_HEADER)
        for mode in ladder.modes:
            writer.writerow([
                mode.family_id,
                mode.polarization.value,
                repr(float(mode.frequency)),
                repr(float(mode.gamma)),
                repr(float(mode.kappa)),
                repr(float(mode.weight)),
            ])
