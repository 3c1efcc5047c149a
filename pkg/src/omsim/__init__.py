"""omsim: whispering-gallery-mode optomagnonics calculator.

Selection rules and steady-state sideband fluxes for magnon-induced
Brillouin scattering in a magnetic WGM resonator, plus sweep spectra,
cross-correlation analysis and microwave-to-optical conversion budgets.
"""

__version__ = "0.1.0"

from .magnonics import KittelMode, MagnetMaterial, SampleGeometry, yig
from .resonator import (
    LadderFamily,
    ModeLadder,
    OpticalMode,
    Polarization,
    ResonatorSpec,
    analytic_fsr,
    build_ladder,
    gb_split,
    lorentzian_dos,
)
from .scattering import (
    MicrowaveDrive,
    Orbit,
    ProcessOutcome,
    ScatteringScenario,
    Sideband,
    select_process,
)

__all__ = [
    "__version__",
    "KittelMode",
    "MagnetMaterial",
    "SampleGeometry",
    "yig",
    "LadderFamily",
    "ModeLadder",
    "OpticalMode",
    "Polarization",
    "ResonatorSpec",
    "analytic_fsr",
    "build_ladder",
    "gb_split",
    "lorentzian_dos",
    "MicrowaveDrive",
    "Orbit",
    "ProcessOutcome",
    "ScatteringScenario",
    "Sideband",
    "select_process",
]
