"""Laser-frequency sweep spectra and their cross-correlation.

The polarization-converting scattering strength of a mode ladder is a sum
over mode families of products of two Lorentzian densities of states, one
evaluated at the laser frequency and one at the magnon-shifted sideband:

    I_TE->TM(w) = sum_i C_i * rho_TE_i(w) * rho_TM_i(w + w_mag)
    I_TM->TE(w) = sum_i C_i * rho_TM_i(w) * rho_TE_i(w - w_mag)

so that I_TE->TM(w) = I_TM->TE(w + w_mag) identically. Only TE/TM partners
of the same family pair up (orbital angular momentum is conserved in the
scattering). Spectra carry arbitrary units; the cross-correlation is
normalized scale-free.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.signal import find_peaks

from . import kernels
from .magnonics import KittelMode
from .resonator import ModeLadder, OpticalMode, Polarization, lorentzian_dos


class SweepDirection(str, Enum):
    TE_TO_TM = "TE->TM"
    TM_TO_TE = "TM->TE"


class IncompleteFamilyWarning(UserWarning):
    """A ladder family lacks one polarization and contributes nothing."""


R_TOLERANCE = 1e-9  # numerical slack allowed above the Cauchy-Schwarz bound


@dataclass(frozen=True)
class ScatteringSpectrum:
    """Scattering strength sampled on a strictly increasing frequency grid."""

    frequencies: np.ndarray
    values: np.ndarray
    direction: SweepDirection | None = None

    def __post_init__(self):
        freqs = np.ascontiguousarray(self.frequencies, dtype=np.float64)
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if freqs.ndim != 1 or vals.ndim != 1 or len(freqs) != len(vals):
            raise ValueError("frequency grid and values must be 1-d and equal length")
        if len(freqs) < 2:
            raise ValueError("spectrum needs at least two samples")
        if not np.all(np.diff(freqs) > 0):
            raise ValueError("frequency grid must be strictly increasing")
        if np.any(vals < 0):
            raise ValueError("spectrum values must be nonnegative")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class CorrelationCurve:
    """Normalized cross-correlation R(offset), R in [0, 1]."""

    offsets: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        offs = np.ascontiguousarray(self.offsets, dtype=np.float64)
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if offs.ndim != 1 or vals.ndim != 1 or len(offs) != len(vals):
            raise ValueError("offsets and values must be 1-d and equal length")
        if not np.all(np.diff(offs) > 0):
            raise ValueError("offsets must be strictly increasing")
        if np.any(vals < -R_TOLERANCE) or np.any(vals > 1.0 + R_TOLERANCE):
            raise ValueError("correlation values outside [0, 1] beyond tolerance")
        object.__setattr__(self, "offsets", offs)
        object.__setattr__(self, "values", np.clip(vals, 0.0, 1.0))


def _family_pairs(ladder: ModeLadder) -> list[tuple[float, OpticalMode, OpticalMode]]:
    """(weight, TE mode, TM mode) per complete family, in family-id order.

    Families missing a polarization contribute zero and trigger a warning.
    The family weight is taken from the TE entry (ladder synthesis writes
    the same weight on both partners).
    """
    pairs = []
    families = ladder.families()
    for family_id in sorted(families):
        members = families[family_id]
        te = members.get(Polarization.TE)
        tm = members.get(Polarization.TM)
        if te is None or tm is None:
            warnings.warn(
                f"family {family_id} lacks {'TE' if te is None else 'TM'}; "
                "it contributes no scattering strength",
                IncompleteFamilyWarning,
            )
            continue
        pairs.append((te.weight, te, tm))
    return pairs


def strength_te_to_tm(ladder: ModeLadder, kittel: KittelMode, omega: float) -> float:
    """Scattering strength for TE input at frequency omega (arbitrary units)."""
    total = 0.0
    for weight, te, tm in _family_pairs(ladder):
        total += weight * lorentzian_dos(te, omega) * lorentzian_dos(tm, omega + kittel.frequency)
    return total


def strength_tm_to_te(ladder: ModeLadder, kittel: KittelMode, omega: float) -> float:
    """Scattering strength for TM input at frequency omega (arbitrary units)."""
    total = 0.0
    for weight, te, tm in _family_pairs(ladder):
        total += weight * lorentzian_dos(tm, omega) * lorentzian_dos(te, omega - kittel.frequency)
    return total


def sweep(
    ladder: ModeLadder,
    kittel: KittelMode,
    grid,
    direction: SweepDirection = SweepDirection.TM_TO_TE,
) -> ScatteringSpectrum:
    """Evaluate the chosen strength function on a laser-frequency grid."""
    grid = np.ascontiguousarray(grid, dtype=np.float64)
    pairs = _family_pairs(ladder)
    if not pairs:
        return ScatteringSpectrum(grid, np.zeros_like(grid), direction)
    weights = np.array([w for w, _, _ in pairs])

    def dos_arrays(modes):
        kap = np.array([m.kappa for m in modes])
        cen = np.array([m.frequency for m in modes])
        hw2 = np.array([(0.5 * (m.gamma + m.kappa)) ** 2 for m in modes])
        return kap, cen, hw2

    te_arrays = dos_arrays([te for _, te, _ in pairs])
    tm_arrays = dos_arrays([tm for _, _, tm in pairs])
    if direction is SweepDirection.TE_TO_TM:
        (kin, cin, hin), (kout, cout, hout) = te_arrays, tm_arrays
        shift = kittel.frequency
    else:
        (kin, cin, hin), (kout, cout, hout) = tm_arrays, te_arrays
        shift = -kittel.frequency
    values = kernels.ladder_sweep(grid, weights, kin, cin, hin, kout, cout, hout, shift)
    return ScatteringSpectrum(grid, values, direction)


def default_sweep_step(ladder: ModeLadder, points_per_linewidth: float = 20.0) -> float:
    """Grid step resolving the narrowest mode with the requested density."""
    if not ladder.modes:
        raise ValueError("cannot derive a sweep step from an empty ladder")
    narrowest = min(mode.total_linewidth for mode in ladder.modes)
    return narrowest / points_per_linewidth


def cross_correlation(
    spectrum_a: ScatteringSpectrum,
    spectrum_b: ScatteringSpectrum,
    offsets,
    min_overlap: int = 10,
) -> CorrelationCurve:
    """Normalized sliding cross-correlation of two spectra.

        R(O) = (integral sqrt(I_A(w) I_B(w+O)) dw)^2
               / (integral I_A(w) dw * integral I_B(w+O) dw)

    All three integrals run over the overlap window of the two grids at
    each offset (trapezoid rule on spectrum A's grid, spectrum B linearly
    interpolated), so R is invariant under rescaling either spectrum and
    bounded by 1 through the Cauchy-Schwarz inequality. R(O) = 1 exactly
    when I_A is proportional to the shifted I_B on the window. Offsets
    whose overlap covers fewer than ``min_overlap`` grid points are
    rejected.
    """
    offsets = np.ascontiguousarray(offsets, dtype=np.float64)
    if offsets.ndim != 1 or len(offsets) == 0:
        raise ValueError("offsets must be a nonempty 1-d array")
    if len(offsets) > 1 and not np.all(np.diff(offsets) > 0):
        raise ValueError("offsets must be strictly increasing")
    ga, va = spectrum_a.frequencies, spectrum_a.values
    gb, vb = spectrum_b.frequencies, spectrum_b.values
    lo = np.searchsorted(ga, gb[0] - offsets, side="left").astype(np.intp)
    hi = (np.searchsorted(ga, gb[-1] - offsets, side="right") - 1).astype(np.intp)
    counts = hi - lo + 1
    if np.any(counts < min_overlap):
        bad = offsets[np.argmin(counts)]
        raise ValueError(
            f"insufficient overlap at offset {bad} Hz: "
            f"{int(counts.min())} grid points < required {min_overlap}"
        )
    num, den_a, den_b = kernels.xcorr_accumulate(ga, va, gb, vb, offsets, lo, hi)
    denominator = den_a * den_b
    values = np.zeros_like(num)
    nonzero = denominator > 0
    values[nonzero] = num[nonzero] ** 2 / denominator[nonzero]
    return CorrelationCurve(offsets, values)


def correlation_peaks(curve: CorrelationCurve, min_prominence: float = 0.05) -> np.ndarray:
    """Offsets of local maxima with at least the given prominence.

    Returned sorted by descending R (ties broken by offset) so the
    dominant correlation lag comes first.
    """
    idx, _ = find_peaks(curve.values, prominence=min_prominence)
    if len(idx) == 0:
        return np.empty(0)
    order = np.lexsort((curve.offsets[idx], -curve.values[idx]))
    return curve.offsets[idx][order]


SPECTRUM_CSV_HEADER = "frequency_Hz,value"
CORRELATION_CSV_HEADER = "offset_Hz,R"


def write_spectrum_csv(spectrum: ScatteringSpectrum, path) -> None:
    """Two-column CSV with a one-line header; floats via repr (round-trip)."""
    with open(path, "w") as fh:
        fh.write(SPECTRUM_CSV_HEADER + "\n")
        for freq, val in zip(spectrum.frequencies, spectrum.values):
            fh.write(f"{float(freq)!r},{float(val)!r}\n")


def read_spectrum_csv(path, direction: SweepDirection | None = None) -> ScatteringSpectrum:
    """Parse a two-column spectrum CSV, reporting the line of any defect."""
    freqs, vals = [], []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if lineno == 1:
                if line != SPECTRUM_CSV_HEADER:
                    raise ValueError(
                        f"{path}:{lineno}: expected header {SPECTRUM_CSV_HEADER!r}, got {line!r}"
                    )
                continue
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 comma-separated fields")
            try:
                freqs.append(float(parts[0]))
                vals.append(float(parts[1]))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
    try:
        return ScatteringSpectrum(np.array(freqs), np.array(vals), direction)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def write_correlation_csv(curve: CorrelationCurve, path) -> None:
    with open(path, "w") as fh:
        fh.write(CORRELATION_CSV_HEADER + "\n")
        for off, val in zip(curve.offsets, curve.values):
            fh.write(f"{float(off)!r},{float(val)!r}\n")
