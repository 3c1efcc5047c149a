"""Physical constants shared across the package.

Unit conventions used throughout omsim:

* every stored frequency, detuning and decay rate is an ordinary frequency
  in Hz (FWHM convention for linewidths);
* angular quantities (rad/s) appear only inside formulas that need them,
  via the single TWO_PI layer;
* photon fluxes are photons per second, powers in W, lengths in m.
"""

import math

from scipy.constants import epsilon_0 as VACUUM_PERMITTIVITY
from scipy.constants import h as PLANCK
from scipy.constants import hbar as HBAR
from scipy.constants import physical_constants

TWO_PI = 2.0 * math.pi

SPEED_OF_LIGHT = 3.0e8  # vacuum speed of light [m/s]

BOHR_MAGNETON = physical_constants["Bohr magneton"][0]  # [J/T]

__all__ = [
    "TWO_PI",
    "SPEED_OF_LIGHT",
    "PLANCK",
    "HBAR",
    "VACUUM_PERMITTIVITY",
    "BOHR_MAGNETON",
]
