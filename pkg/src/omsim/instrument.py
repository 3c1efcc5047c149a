"""Measurement-chain bookkeeping: heterodyne sideband placement, shot-noise
SNR, and power/flux/dB conversions.

The heterodyne local oscillator is offset from the carrier (150 MHz by
default, set by an acousto-optic modulator), so the red and blue sidebands
of a magnon line at f_m land at f_m + offset and f_m - offset on the
spectrum analyzer and can be read out separately. With a shot-noise-limited
local oscillator the power SNR of a sideband of photon flux n_s in a
resolution bandwidth B is n_s / (2 B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import PLANCK


@dataclass(frozen=True)
class HeterodyneSetup:
    """Local-oscillator offset [Hz], resolution bandwidth [Hz], LO flux [1/s]."""

    lo_offset: float = 150e6
    resolution_bandwidth: float = 1.0
    lo_flux: float = 1e16

    def __post_init__(self):
        for name in ("lo_offset", "resolution_bandwidth", "lo_flux"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class PowerPoint:
    """An optical or microwave power [W] at a carrier frequency [Hz]."""

    power: float
    carrier_frequency: float

    def __post_init__(self):
        if not self.power > 0:
            raise ValueError(f"power must be positive, got {self.power}")
        if not self.carrier_frequency > 0:
            raise ValueError(f"carrier frequency must be positive, got {self.carrier_frequency}")

    @property
    def photon_flux(self) -> float:
        return photon_flux(self.power, self.carrier_frequency)


def photon_flux(power: float, frequency: float) -> float:
    """Photon flux P / (h * f) [1/s]; linear in power, inverse in frequency."""
    if not frequency > 0:
        raise ValueError(f"frequency must be positive, got {frequency}")
    return power / (PLANCK * frequency)


def sideband_observation_frequencies(setup: HeterodyneSetup, magnon_frequency: float) -> dict[str, float]:
    """Analyzer frequencies where the two sidebands appear, keyed red/blue.

    The red sideband beats with the LO at magnon_frequency + lo_offset, the
    blue one at magnon_frequency - lo_offset; the magnon frequency must
    exceed the offset or the blue sideband aliases through zero.
    """
    if not magnon_frequency > setup.lo_offset:
        raise ValueError(
            f"magnon frequency {magnon_frequency} must exceed the LO offset "
            f"{setup.lo_offset} (aliasing)"
        )
    return {
        "red_at": magnon_frequency + setup.lo_offset,
        "blue_at": magnon_frequency - setup.lo_offset,
    }


def snr_from_sideband_flux(sideband_flux: float, resolution_bandwidth: float) -> float:
    """Shot-noise-referenced SNR [dB] of a sideband of the given flux [1/s].

    SNR_linear = (n_s / B) / 2 per resolution bin; returns 10*log10 of it,
    -inf for zero flux.
    """
    if sideband_flux < 0:
        raise ValueError(f"flux must be nonnegative, got {sideband_flux}")
    if not resolution_bandwidth > 0:
        raise ValueError(f"resolution bandwidth must be positive, got {resolution_bandwidth}")
    if sideband_flux == 0.0:
        return -math.inf
    return 10.0 * math.log10(sideband_flux / (2.0 * resolution_bandwidth))


def sideband_flux_from_snr(snr_db: float, resolution_bandwidth: float) -> float:
    """Exact inverse of :func:`snr_from_sideband_flux`."""
    if not resolution_bandwidth > 0:
        raise ValueError(f"resolution bandwidth must be positive, got {resolution_bandwidth}")
    if snr_db == -math.inf:
        return 0.0
    return 2.0 * resolution_bandwidth * 10.0 ** (snr_db / 10.0)


def dbm_to_watts(dbm: float) -> float:
    """0 dBm = 1 mW exactly."""
    return 1e-3 * 10.0 ** (dbm / 10.0)


def watts_to_dbm(watts: float) -> float:
    if not watts > 0:
        raise ValueError(f"power must be positive, got {watts}")
    return 10.0 * math.log10(watts / 1e-3)
