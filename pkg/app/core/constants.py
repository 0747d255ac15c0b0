"""
Physical constants (CODATA, via scipy.constants) and the unit bridges between
the μeV energy convention (ħ = 1) and SI.
"""

from pydantic import BaseModel, ConfigDict
import scipy.constants as sc

# ħ in μeV·ps: (J·s) / (J per μeV) * (ps per s)
HBAR_UEV_PS: float = sc.hbar / (sc.electron_volt * 1e-6) * 1e12

# Joules per μeV
JOULE_PER_UEV: float = sc.electron_volt * 1e-6

# C·m per Debye (1 D = 1e-21 / c  C·m)
DEBYE_TO_SI: float = 1e-21 / sc.c


class PhysicalConstants(BaseModel):
    """Fixed CODATA values consumed by the geometry and params services."""

    model_config = ConfigDict(frozen=True)

    hbar_ueV_ps: float = HBAR_UEV_PS
    hbar_J_s: float = sc.hbar
    c: float = sc.c
    epsilon0: float = sc.epsilon_0
    debye_to_SI: float = DEBYE_TO_SI
    electron_volt: float = sc.electron_volt


CONSTANTS = PhysicalConstants()
