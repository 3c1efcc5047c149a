"""Magnetic material constants, the Kittel mode, and the optomagnonic coupling.

The single-magnon coupling rate is computed from first principles out of the
Faraday response of the material: the off-diagonal magneto-optic permittivity
(Stancil & Prabhakar, *Spin Waves*, ch. 6) translated into a three-wave
coupling between two optical modes and the uniform-precession magnon mode.
Two algebraically equivalent routes are provided and kept as a mutual
consistency check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import (
    BOHR_MAGNETON,
    HBAR,
    SPEED_OF_LIGHT,
    TWO_PI,
    VACUUM_PERMITTIVITY,
)


@dataclass(frozen=True)
class MagnetMaterial:
    """Optical and magnetic constants of a transparent ferromagnet.

    Attributes
    ----------
    verdet : float
        Verdet constant [rad/m] (note: tables often quote rad/cm).
    spin_density : float
        Density of Bohr-magneton spins [1/m^3].
    refractive_index : float
        Refractive index at the operating wavelength.
    relative_permittivity : float, optional
        Defaults to refractive_index**2.
    absorption : float, optional
        Optical absorption coefficient [1/m]; required only for
        absorption-limited quality-factor estimates.
    lande_g : float
        Electronic g-factor entering M_z = g_s * mu_B * n_spin.
    notes : str
        Free-form provenance remarks (e.g. the wavelength a tabulated
        Verdet constant refers to).
    """

    verdet: float
    spin_density: float
    refractive_index: float
    relative_permittivity: float | None = None
    absorption: float | None = None
    lande_g: float = 2.0
    notes: str = ""

    def __post_init__(self):
        for name in ("verdet", "spin_density", "refractive_index", "lande_g"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.relative_permittivity is None:
            object.__setattr__(self, "relative_permittivity", self.refractive_index**2)
        if not self.relative_permittivity >= 1:
            raise ValueError(
                f"relative permittivity must be >= 1, got {self.relative_permittivity}"
            )
        if self.absorption is not None and not self.absorption > 0:
            raise ValueError(f"absorption must be positive, got {self.absorption}")


def yig() -> MagnetMaterial:
    """Yttrium iron garnet at telecom wavelengths (1.5 um band)."""
    return MagnetMaterial(
        verdet=3.77e2,            # 3.77 rad/cm
        spin_density=2.1e28,
        refractive_index=2.19,
        absorption=3.0,           # 0.03 /cm at room temperature
        lande_g=2.0,
        notes="Verdet constant as tabulated for the 1.5 um band; exact "
              "calibration wavelength not recorded with the value.",
    )


MATERIAL_PRESETS = {"YIG": yig}


@dataclass(frozen=True)
class SampleGeometry:
    """Volume of the magnetic sample plus its shape provenance."""

    volume: float
    shape: str = "custom"
    dimensions: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.volume > 0:
            raise ValueError(f"volume must be positive, got {self.volume}")
        if self.shape == "sphere":
            (diameter,) = self.dimensions
            nominal = (4.0 * math.pi / 3.0) * (diameter / 2.0) ** 3
            if abs(self.volume - nominal) > 1e-6 * nominal:
                raise ValueError(
                    f"sphere volume {self.volume} inconsistent with diameter {diameter}"
                )

    @classmethod
    def sphere(cls, diameter: float) -> "SampleGeometry":
        if not diameter > 0:
            raise ValueError(f"diameter must be positive, got {diameter}")
        return cls((4.0 * math.pi / 3.0) * (diameter / 2.0) ** 3, "sphere", (diameter,))

    @classmethod
    def disk(cls, diameter: float, thickness: float) -> "SampleGeometry":
        if not (diameter > 0 and thickness > 0):
            raise ValueError("disk dimensions must be positive")
        return cls(math.pi * (diameter / 2.0) ** 2 * thickness, "disk", (diameter, thickness))


@dataclass(frozen=True)
class KittelMode:
    """Uniform-precession magnon mode (zero wavevector).

    frequency : center frequency [Hz]
    gamma : intrinsic decay rate [Hz, FWHM]
    kappa : external (drive-port) coupling rate [Hz, FWHM]
    """

    frequency: float
    gamma: float
    kappa: float

    def __post_init__(self):
        if not self.frequency > 0:
            raise ValueError(f"frequency must be positive, got {self.frequency}")
        if self.gamma < 0 or self.kappa < 0:
            raise ValueError("decay rates must be nonnegative")
        if not self.gamma + self.kappa > 0:
            raise ValueError("gamma + kappa must be positive")

    @property
    def total_linewidth(self) -> float:
        return self.gamma + self.kappa

    @classmethod
    def from_loaded_q(cls, frequency: float, loaded_q: float) -> "KittelMode":
        """Critically coupled mode from a measured (loaded) quality factor.

        The loaded linewidth is frequency/Q; critical coupling splits it
        evenly between intrinsic loss and the drive port.
        """
        if not loaded_q > 0:
            raise ValueError(f"loaded_q must be positive, got {loaded_q}")
        total = frequency / loaded_q
        return cls(frequency, total / 2.0, total / 2.0)


def magnetization_mz(material: MagnetMaterial) -> float:
    """Saturation magnetization M_z = g_s * mu_B * n_spin [J/(T m^3) = A/m]."""
    return material.lande_g * BOHR_MAGNETON * material.spin_density


def verdet_to_f(material: MagnetMaterial, vacuum_wavevector: float) -> float:
    """Magneto-optic coefficient of the permittivity tensor per unit M.

    In a saturated ferromagnet the off-diagonal permittivity is
    +/- i*f*M, with  f = (2*sqrt(eps_r) / (k0 * M_z)) * Verdet;
    dimensionless after multiplication by a magnetization [A/m].
    """
    if not vacuum_wavevector > 0:
        raise ValueError(f"vacuum wavevector must be positive, got {vacuum_wavevector}")
    mz = magnetization_mz(material)
    return (2.0 * math.sqrt(material.relative_permittivity) / (vacuum_wavevector * mz)) * material.verdet


def coupling_g_theory(material: MagnetMaterial, sample: SampleGeometry) -> float:
    """Single-magnon optomagnonic coupling rate [rad/s].

        g = Verdet * (c/n) * sqrt(2 / N_spin),   N_spin = n_spin * V.

    This is the Faraday rotation rate produced by the zero-point
    fluctuation of the uniform magnon mode; it scales as 1/sqrt(V).
    Report g/(2*pi) when a Hz value is wanted.
    """
    n_spins = material.spin_density * sample.volume
    speed_in_material = SPEED_OF_LIGHT / material.refractive_index
    return material.verdet * speed_in_material * math.sqrt(2.0 / n_spins)


def coupling_g_from_permittivity(
    material: MagnetMaterial,
    sample: SampleGeometry,
    vacuum_wavelength: float,
    mode_volume: float = 1e-12,
) -> float:
    """Coupling rate rebuilt from the permittivity-tensor route [rad/s].

    Assembles the three-wave coupling out of the interaction energy density
    -i*eps0*f*M_y*E_out*conj(E_in): zero-point field amplitudes
    sqrt(hbar*Omega / (2*eps0*eps_r*V_mode)) for each optical mode and
    sqrt(2*g_s*mu_B*M_z / V) for the transverse magnetization, integrated
    over the mode volume. The optical mode volume cancels exactly, so
    ``mode_volume`` is arbitrary; the argument exists to make the
    cancellation testable. Algebraically identical to
    :func:`coupling_g_theory`; kept as an independent consistency check.
    """
    if not vacuum_wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {vacuum_wavelength}")
    k0 = TWO_PI / vacuum_wavelength
    optical_angular_frequency = k0 * SPEED_OF_LIGHT
    mz = magnetization_mz(material)
    f = verdet_to_f(material, k0)
    eps_r = material.relative_permittivity
    magnon_amplitude = math.sqrt(2.0 * material.lande_g * BOHR_MAGNETON * mz / sample.volume)
    photon_amplitude_sq = HBAR * optical_angular_frequency / (
        2.0 * VACUUM_PERMITTIVITY * eps_r * mode_volume
    )
    return VACUUM_PERMITTIVITY * f * mode_volume * magnon_amplitude * photon_amplitude_sq / HBAR


def kittel_frequency_estimate(field: float, gyromagnetic_ratio: float = 28.0e9) -> float:
    """Kittel-mode frequency estimate gamma_gyro * B [Hz].

    A linear-in-field estimate only (shape anisotropy ignored); a measured
    mode frequency in the configuration overrides it.
    """
    if field < 0:
        raise ValueError(f"field must be nonnegative, got {field}")
    return gyromagnetic_ratio * field


def absorption_limited_q(material: MagnetMaterial, wavelength: float) -> float:
    """Ceiling on the optical Q set by bulk absorption: 2*pi*n / (alpha*lambda)."""
    if material.absorption is None:
        raise ValueError("material has no absorption coefficient recorded")
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    return TWO_PI * material.refractive_index / (material.absorption * wavelength)
