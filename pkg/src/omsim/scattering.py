"""Magnon-induced Brillouin scattering between TE and TM whispering-gallery modes.

Physics summary. Photons circulating in a given direction carry a definite
spin: for the counterclockwise (CCW) orbit the TM mode is sigma+ polarized
and the TE mode is pi polarized; for the clockwise (CW) orbit the TM mode is
sigma-. A uniform-precession magnon under out-of-plane magnetization carries
one unit of spin angular momentum, so polarization-converting scattering must
create or annihilate exactly one magnon, and energy conservation ties magnon
creation to the red sideband (w - w_mag) and annihilation to the blue one
(w + w_mag). With the magnetization along +z this yields the selection table
implemented by :func:`select_process`. The zero-wavevector magnon transfers no
linear momentum, so there is no back-scattered output channel at all.

Steady-state sideband fluxes follow from input-output theory with the
converted mode adiabatically eliminated:

    red  (magnon +1):  n_out = g^2 rho_out(w - w_d) rho_in(w) rho_m(w_d)
                               * n_in * (n_MW + 1)
    blue (magnon -1):  n_out = g^2 rho_in(w) rho_out(w + w_d) rho_m(w_d)
                               * n_in * n_MW

where the rho are Lorentzian densities of states per angular frequency
(seconds), w is the laser frequency, w_d the microwave drive frequency, and
n_MW the microwave drive photon flux. The "+1" is the spontaneous channel:
magnon creation survives without any microwave drive. All rates inside these
formulas are angular; the module converts from the package-wide Hz convention
in exactly one place (:func:`angular_dos`).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from enum import Enum

from .constants import PLANCK, TWO_PI
from .magnonics import KittelMode
from .resonator import OpticalMode, Polarization, lorentzian_dos


class Orbit(str, Enum):
    CCW = "CCW"
    CW = "CW"


class Sideband(str, Enum):
    RED = "red"
    BLUE = "blue"


class WeakCouplingWarning(UserWarning):
    """The adiabatic-elimination flux formulas are outside their regime."""


WEAK_COUPLING_THRESHOLD = 1e-2

# Projected conversion-efficiency gains for the standard upgrade path:
# matching the TE-TM split to the magnon frequency, polishing the resonator
# to its absorption-limited quality factor, and thinning the sample to a
# micron-scale disk. Order-of-magnitude engineering numbers.
IMPROVEMENT_GAINS = {
    "triple_resonance": 7000.0,
    "q_limit": 3500.0,
    "disk_volume": 90.0,
}
IMPROVEMENT_STAGES = (*IMPROVEMENT_GAINS, "pump_power")


@dataclass(frozen=True)
class MicrowaveDrive:
    """Microwave tone feeding the magnon mode: photon flux [1/s] at a frequency [Hz]."""

    flux: float
    frequency: float

    def __post_init__(self):
        if self.flux < 0:
            raise ValueError(f"drive flux must be nonnegative, got {self.flux}")
        if not self.frequency > 0:
            raise ValueError(f"drive frequency must be positive, got {self.frequency}")

    @classmethod
    def from_power(cls, power: float, frequency: float) -> "MicrowaveDrive":
        """Build from a power [W]; flux = P / (h * frequency)."""
        if power < 0:
            raise ValueError(f"power must be nonnegative, got {power}")
        return cls(power / (PLANCK * frequency), frequency)


@dataclass(frozen=True)
class ProcessOutcome:
    """What one scattering channel does.

    ``amplitude_weight`` is 1 for the spin-allowed channel and epsilon (the
    spin-orbit imperfection) for the nominally forbidden one; fluxes scale
    with its square.
    """

    magnon_change: int
    sideband: Sideband
    output_polarization: Polarization
    intracavity_polarization: str
    amplitude_weight: float = 1.0

    def __post_init__(self):
        if self.magnon_change not in (-1, +1):
            raise ValueError(f"magnon_change must be +-1, got {self.magnon_change}")
        if (self.magnon_change == +1) != (self.sideband is Sideband.RED):
            raise ValueError("magnon creation pairs with the red sideband only")


_SELECTION_TABLE = {
    (Orbit.CCW, Polarization.TM): (+1, Sideband.RED, Polarization.TE, "sigma+"),
    (Orbit.CCW, Polarization.TE): (-1, Sideband.BLUE, Polarization.TM, "pi"),
    (Orbit.CW, Polarization.TM): (-1, Sideband.BLUE, Polarization.TE, "sigma-"),
    (Orbit.CW, Polarization.TE): (+1, Sideband.RED, Polarization.TM, "pi"),
}


def select_process(orbit: Orbit, input_polarization: Polarization) -> ProcessOutcome:
    """Spin-allowed scattering channel for an orbit/polarization combination.

    Convention: magnetization along +z, perpendicular to the orbit plane,
    with CCW circulation mapping TM to sigma+ polarization.
    """
    change, sideband, out_pol, cavity_pol = _SELECTION_TABLE[(Orbit(orbit), Polarization(input_polarization))]
    return ProcessOutcome(change, sideband, out_pol, cavity_pol, 1.0)


def forbidden_process(orbit: Orbit, input_polarization: Polarization, epsilon: float) -> ProcessOutcome:
    """The opposite-sideband channel, reachable only via spin-orbit imperfection."""
    allowed = select_process(orbit, input_polarization)
    flipped = Sideband.BLUE if allowed.sideband is Sideband.RED else Sideband.RED
    return ProcessOutcome(
        -allowed.magnon_change,
        flipped,
        allowed.output_polarization,
        allowed.intracavity_polarization,
        epsilon,
    )


@dataclass(frozen=True)
class ScatteringScenario:
    """Everything a steady-state flux evaluation needs.

    ``input_flux`` is the photon flux [1/s] arriving in the input
    polarization at the laser frequency; ``coupling_g`` is the single-magnon
    coupling rate in rad/s; ``spin_orbit_imperfection`` is the amplitude
    admixture (0 = ideal chirality) feeding the forbidden channel.
    """

    orbit: Orbit
    input_polarization: Polarization
    input_flux: float
    laser_frequency: float
    te_mode: OpticalMode
    tm_mode: OpticalMode
    kittel: KittelMode
    coupling_g: float
    microwave: MicrowaveDrive
    spin_orbit_imperfection: float = 0.0

    def __post_init__(self):
        if self.input_flux < 0:
            raise ValueError(f"input flux must be nonnegative, got {self.input_flux}")
        if not self.laser_frequency > 0:
            raise ValueError(f"laser frequency must be positive, got {self.laser_frequency}")
        if self.coupling_g < 0:
            raise ValueError(f"coupling rate must be nonnegative, got {self.coupling_g}")
        if not 0.0 <= self.spin_orbit_imperfection <= 1.0:
            raise ValueError(
                f"spin-orbit imperfection must lie in [0, 1], got {self.spin_orbit_imperfection}"
            )
        if self.te_mode.polarization is not Polarization.TE:
            raise ValueError("te_mode must be TE polarized")
        if self.tm_mode.polarization is not Polarization.TM:
            raise ValueError("tm_mode must be TM polarized")

    def mode(self, polarization: Polarization) -> OpticalMode:
        return self.te_mode if Polarization(polarization) is Polarization.TE else self.tm_mode


def angular_dos(mode, omega: float) -> float:
    """Density of states per angular frequency [s] at ordinary frequency omega [Hz].

    The single Hz -> rad/s conversion layer: equals the Hz-level Lorentzian
    divided by 2*pi.
    """
    return lorentzian_dos(mode, omega) / TWO_PI


def intracavity_photon_number(mode, input_flux: float, omega: float) -> float:
    """Steady-state photon number of a driven mode.

        n = n_in * kappa_ang / (Delta_ang^2 + (Gamma_ang/2)^2)
          = n_in * angular_dos(mode, omega)

    Dimensionless; maximal on resonance, where critical coupling gives
    n = 2 * n_in / Gamma_ang = n_in / (pi * Gamma).
    """
    if input_flux < 0:
        raise ValueError(f"input flux must be nonnegative, got {input_flux}")
    return input_flux * angular_dos(mode, omega)


def _stimulated_rate(scenario: ScatteringScenario, process: ProcessOutcome) -> float:
    """Sideband flux per unit drive occupation [1/s]: g^2 rho rho rho_m n_in."""
    pump = scenario.mode(scenario.input_polarization)
    out = scenario.mode(process.output_polarization)
    laser = scenario.laser_frequency
    drive = scenario.microwave
    if process.sideband is Sideband.RED:
        sideband_frequency = laser - drive.frequency
    else:
        sideband_frequency = laser + drive.frequency
    g = scenario.coupling_g
    return (
        g * g
        * angular_dos(out, sideband_frequency)
        * angular_dos(pump, laser)
        * angular_dos(scenario.kittel, drive.frequency)
        * scenario.input_flux
        * process.amplitude_weight**2
    )


def _channel_flux(scenario: ScatteringScenario, process: ProcessOutcome) -> float:
    """Scattered photon flux [1/s] of one channel, per the module formulas.

    The red (magnon-creating) channel carries the spontaneous "+1" on top
    of the drive flux; the blue channel is purely stimulated.
    """
    occupation = scenario.microwave.flux
    if process.sideband is Sideband.RED:
        occupation += 1.0
    return _stimulated_rate(scenario, process) * occupation


def _warn_if_strong(scenario: ScatteringScenario) -> None:
    report = weak_coupling_check(scenario)
    if not report.ok:
        warnings.warn(
            f"weak-coupling margin {report.margin:.3e} exceeds "
            f"{WEAK_COUPLING_THRESHOLD:.0e}; adiabatic-elimination fluxes are unreliable",
            WeakCouplingWarning,
        )


def scattered_flux_red(scenario: ScatteringScenario) -> float:
    """Red-sideband (magnon-creating) flux with the TM mode pumped [1/s].

    Evaluates g^2 rho_TE(w - w_d) rho_TM(w) rho_m(w_d) n_in (n_MW + 1):
    the channel driven by TM input on the CCW orbit. The spontaneous "+1"
    keeps the flux finite with the microwave drive off.
    """
    process = ProcessOutcome(+1, Sideband.RED, Polarization.TE, "sigma+")
    pumped = replace(scenario, input_polarization=Polarization.TM)
    _warn_if_strong(pumped)
    return _channel_flux(pumped, process)


def scattered_flux_blue(scenario: ScatteringScenario) -> float:
    """Blue-sideband (magnon-annihilating) flux with the TE mode pumped [1/s].

    Evaluates g^2 rho_TE(w) rho_TM(w + w_d) rho_m(w_d) n_in n_MW: the
    channel driven by TE input on the CCW orbit. Strictly stimulated;
    zero without the microwave drive.
    """
    process = ProcessOutcome(-1, Sideband.BLUE, Polarization.TM, "pi")
    pumped = replace(scenario, input_polarization=Polarization.TE)
    _warn_if_strong(pumped)
    return _channel_flux(pumped, process)


@dataclass(frozen=True)
class ChannelFluxes:
    """Spin-allowed and imperfection-leaked fluxes of one scenario [1/s]."""

    allowed: float
    forbidden: float
    allowed_process: ProcessOutcome
    forbidden_process: ProcessOutcome


def channel_fluxes(scenario: ScatteringScenario) -> ChannelFluxes:
    """Fluxes of the allowed channel and of the forbidden (opposite) sideband.

    The forbidden channel is evaluated with its own sideband placement and
    drive occupation and carries the imperfection amplitude epsilon, i.e.
    a factor epsilon^2 in flux. epsilon = 0 makes it exactly zero.
    """
    _warn_if_strong(scenario)
    allowed = select_process(scenario.orbit, scenario.input_polarization)
    forbidden = forbidden_process(
        scenario.orbit, scenario.input_polarization, scenario.spin_orbit_imperfection
    )
    return ChannelFluxes(
        allowed=_channel_flux(scenario, allowed),
        forbidden=_channel_flux(scenario, forbidden),
        allowed_process=allowed,
        forbidden_process=forbidden,
    )


def nonreciprocity_ratio_db(
    scenario: ScatteringScenario, reference_orbit: Orbit = Orbit.CCW
) -> float:
    """Orbit contrast of the beat signal, in dB.

    Both circulation directions are evaluated at identical drive and the
    flux reaching the sideband selected by ``reference_orbit`` (the one its
    spin-allowed channel emits) is compared:

        10 * log10( flux_CCW / flux_CW ).

    For the reference orbit that flux is the allowed channel; for the
    opposite orbit the same sideband is only reachable through the
    spin-orbit imperfection, so the ideal model (epsilon = 0) gives +inf dB.
    Swapping the magnetization sign exchanges the orbit roles; rerun with
    ``reference_orbit`` flipped to model it, which negates the dB value.
    """
    reference = select_process(reference_orbit, scenario.input_polarization)

    def flux_in_reference_sideband(orbit: Orbit) -> float:
        fluxes = channel_fluxes(replace(scenario, orbit=orbit))
        if fluxes.allowed_process.sideband is reference.sideband:
            return fluxes.allowed
        return fluxes.forbidden

    numerator = flux_in_reference_sideband(Orbit.CCW)
    denominator = flux_in_reference_sideband(Orbit.CW)
    if denominator == 0.0 and numerator == 0.0:
        raise ValueError("both orbits scatter zero flux; ratio undefined")
    if denominator == 0.0:
        return math.inf
    if numerator == 0.0:
        return -math.inf
    return 10.0 * math.log10(numerator / denominator)


def conversion_efficiency(scenario: ScatteringScenario) -> float:
    """Microwave-to-optical photon conversion efficiency (dimensionless).

    Ratio of the stimulated sideband photon flux of the allowed channel to
    the microwave input flux; the drive flux cancels, leaving

        eta = g^2 rho_out(w -/+ w_d) rho_in(w) rho_m(w_d) n_in.

    Meaningful (and bounded by 1) in the weak-coupling regime; a value
    above 1 with the regime violated is flagged, not clamped.
    """
    if not scenario.microwave.flux > 0:
        raise ValueError("conversion efficiency needs a nonzero microwave drive")
    process = select_process(scenario.orbit, scenario.input_polarization)
    eta = _stimulated_rate(scenario, process)
    report = weak_coupling_check(scenario)
    if not report.ok:
        warnings.warn(
            f"conversion efficiency {eta:.3e} computed outside the weak-coupling "
            f"regime (margin {report.margin:.3e})",
            WeakCouplingWarning,
        )
    return eta


@dataclass(frozen=True)
class WeakCouplingReport:
    ok: bool
    margin: float


def weak_coupling_check(scenario: ScatteringScenario) -> WeakCouplingReport:
    """Validity margin of the adiabatic elimination.

        margin = g^2 * n_pump / (Gamma_pump_ang * Gamma_m_ang)

    with n_pump the intracavity photon number of the driven mode; ``ok``
    when the margin is below 1e-2.
    """
    pump = scenario.mode(scenario.input_polarization)
    n_pump = intracavity_photon_number(pump, scenario.input_flux, scenario.laser_frequency)
    gamma_pump = TWO_PI * pump.total_linewidth
    gamma_magnon = TWO_PI * scenario.kittel.total_linewidth
    margin = scenario.coupling_g**2 * n_pump / (gamma_pump * gamma_magnon)
    return WeakCouplingReport(ok=margin < WEAK_COUPLING_THRESHOLD, margin=margin)


def g_exp_from_sideband(measured_flux: float, scenario: ScatteringScenario) -> float:
    """Coupling rate [rad/s] inferred from a measured sideband flux.

    Inverts the allowed-channel flux formula at the scenario's operating
    point (the scenario's own ``coupling_g`` is ignored):

        g = sqrt( flux / (rho rho rho_m * n_in * occupation) )

    where the occupation is n_MW + 1 on the red channel and n_MW on the
    blue one, making the inversion exact against the forward formulas.
    """
    if measured_flux < 0:
        raise ValueError(f"measured flux must be nonnegative, got {measured_flux}")
    if measured_flux == 0.0:
        return 0.0
    probe = replace(scenario, coupling_g=1.0)
    process = select_process(scenario.orbit, scenario.input_polarization)
    denominator = _channel_flux(probe, process)
    if denominator <= 0:
        raise ValueError(
            "operating point scatters no flux (check input flux, drive and couplings)"
        )
    return math.sqrt(measured_flux / denominator)


@dataclass(frozen=True)
class LinearSteadyState:
    """Solution of the driven two-mode linear system.

    ``sideband_amplitude`` is the steady-state creation-operator amplitude
    of the converted optical mode, ``magnon_amplitude`` the annihilation
    amplitude of the magnon mode, ``output_flux`` the photon flux leaving
    through the converted mode's port [1/s].
    """

    sideband_amplitude: complex
    magnon_amplitude: complex
    output_flux: float


def full_linear_steady_state(scenario: ScatteringScenario) -> LinearSteadyState:
    """Exact steady state of the magnon-creating channel, without elimination.

    With the pump mode replaced by its classical steady-state amplitude,
    the converted mode's creation operator a_out^dag and the magnon
    annihilation operator b obey a closed pair of linear equations driven
    through the magnon port (drive amplitude sqrt(kappa_m) * B_in with
    |B_in|^2 = n_MW):

        0 = (+i*D_out - G_out/2) a_dag + i*g*sqrt(n_pump) b
        0 = (-i*D_m   - G_m/2)   b     - i*g*sqrt(n_pump) a_dag - sqrt(kappa_m) B_in

    (all rates angular; D_out is evaluated at the sideband frequency
    w - w_d, D_m at the drive frequency). The 2x2 solve keeps the
    g^2*n_pump self-energy that the adiabatic elimination drops, so it
    serves as the exactness oracle for :func:`scattered_flux_red`: the two
    agree as the weak-coupling margin vanishes.

    Only scenarios whose allowed channel is magnon-creating — (CCW, TM)
    and (CW, TE) — are described by these equations; others are rejected.
    """
    process = select_process(scenario.orbit, scenario.input_polarization)
    if process.sideband is not Sideband.RED:
        raise ValueError(
            "full_linear_steady_state models the magnon-creating channel; "
            f"({scenario.orbit.value}, {scenario.input_polarization.value}) input "
            "scatters to the blue sideband"
        )
    pump = scenario.mode(scenario.input_polarization)
    out = scenario.mode(process.output_polarization)
    drive = scenario.microwave
    n_pump = intracavity_photon_number(pump, scenario.input_flux, scenario.laser_frequency)
    sideband_frequency = scenario.laser_frequency - drive.frequency

    delta_out = TWO_PI * (out.frequency - sideband_frequency)
    delta_m = TWO_PI * (scenario.kittel.frequency - drive.frequency)
    gamma_out = TWO_PI * out.total_linewidth
    gamma_m = TWO_PI * scenario.kittel.total_linewidth
    kappa_out = TWO_PI * out.kappa
    kappa_m = TWO_PI * scenario.kittel.kappa
    pump_coupling = scenario.coupling_g * math.sqrt(n_pump)

    m00 = 1j * delta_out - gamma_out / 2.0
    m01 = 1j * pump_coupling
    m10 = -1j * pump_coupling
    m11 = -1j * delta_m - gamma_m / 2.0
    determinant = m00 * m11 - m01 * m10
    if determinant == 0:
        raise ValueError("singular steady-state system (zero determinant)")
    source = math.sqrt(kappa_m) * math.sqrt(drive.flux)
    a_dag = -m01 * source / determinant
    b = m00 * source / determinant
    output_flux = kappa_out * abs(a_dag) ** 2
    return LinearSteadyState(a_dag, b, output_flux)


@dataclass(frozen=True)
class ImprovementReport:
    """Staged conversion-efficiency projection."""

    baseline_efficiency: float
    multipliers: dict[str, float]
    improved_efficiency: float


def improvement_report(
    scenario: ScatteringScenario,
    stages: tuple[str, ...] = IMPROVEMENT_STAGES,
    improved_pump_power: float = 0.02,
    baseline_pump_power: float | None = None,
) -> ImprovementReport:
    """Project the conversion efficiency through the standard upgrade path.

    Applies the staged gain factors of IMPROVEMENT_GAINS plus a pump-power
    ratio to the scenario's computed baseline efficiency. When the baseline
    optical power is not given it is inferred from the input photon flux.
    The product is an order-of-magnitude projection: the staged gains are
    engineering estimates, not re-derived operating points.
    """
    baseline = conversion_efficiency(scenario)
    multipliers: dict[str, float] = {}
    for stage in stages:
        if stage == "pump_power":
            power = baseline_pump_power
            if power is None:
                power = scenario.input_flux * PLANCK * scenario.laser_frequency
            if not power > 0:
                raise ValueError("baseline pump power must be positive")
            multipliers[stage] = improved_pump_power / power
        elif stage in IMPROVEMENT_GAINS:
            multipliers[stage] = IMPROVEMENT_GAINS[stage]
        else:
            raise ValueError(f"unknown improvement stage {stage!r}")
    improved = baseline
    for gain in multipliers.values():
        improved *= gain
    return ImprovementReport(baseline, multipliers, improved)
