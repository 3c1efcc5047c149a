"""Shared builders for the test suite."""

from __future__ import annotations

import math

import numpy as np
import pytest

from omsim.magnonics import KittelMode
from omsim.resonator import ModeLadder, OpticalMode, Polarization
from omsim.scattering import MicrowaveDrive, Orbit, ScatteringScenario

TWO_PI = 2.0 * math.pi


def yig_sphere_scenario(
    epsilon: float = 0.1,
    g_hz: float = 5.0,
    orbit: Orbit = Orbit.CCW,
    input_polarization: Polarization = Polarization.TM,
    split: float = 50e9,
) -> ScatteringScenario:
    """The benchmark YIG-sphere operating point used across the suite.

    Laser 3 GHz below the TM resonance, TE/TM split of 50 GHz, intrinsic
    Q 1e5, external couplings 0.4 GHz, critically coupled 6.81 GHz magnon
    mode with loaded Q 3000, 3e15 photons/s optical input, 1 mW microwave.
    """
    laser = 193130e9
    tm_frequency = laser + 3e9
    te_frequency = tm_frequency - split
    tm = OpticalMode(0, Polarization.TM, tm_frequency, tm_frequency / 1e5, 0.4e9)
    te = OpticalMode(0, Polarization.TE, te_frequency, te_frequency / 1e5, 0.4e9)
    kittel = KittelMode.from_loaded_q(6.81e9, 3000.0)
    microwave = MicrowaveDrive.from_power(1e-3, 6.81e9)
    return ScatteringScenario(
        orbit=orbit,
        input_polarization=input_polarization,
        input_flux=3e15,
        laser_frequency=laser,
        te_mode=te,
        tm_mode=tm,
        kittel=kittel,
        coupling_g=TWO_PI * g_hz,
        microwave=microwave,
        spin_orbit_imperfection=epsilon,
    )


def random_ladder(rng: np.random.Generator, n_families: int = 4) -> ModeLadder:
    """A hand-built ladder at the ~2 GHz scale (keeps float noise far below
    the 1e-12 tolerances of the analytic identities)."""
    modes = []
    for i in range(n_families):
        anchor = rng.uniform(1.5e9, 2.5e9)
        split = rng.uniform(0.2e9, 0.6e9)
        weight = rng.uniform(0.2, 2.0)
        modes.append(
            OpticalMode(i, Polarization.TE, anchor,
                        rng.uniform(0.05e9, 0.2e9), rng.uniform(0.02e9, 0.1e9), weight)
        )
        modes.append(
            OpticalMode(i, Polarization.TM, anchor + split,
                        rng.uniform(0.05e9, 0.2e9), rng.uniform(0.02e9, 0.1e9), weight)
        )
    return ModeLadder(tuple(modes), fsr=1e9)


def random_kittel(rng: np.random.Generator) -> KittelMode:
    return KittelMode(
        frequency=rng.uniform(0.05e9, 0.3e9),
        gamma=rng.uniform(1e6, 5e6),
        kappa=rng.uniform(1e6, 5e6),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
