"""
GeometryService - cavity loss rates and QD-cavity coupling from geometry.

Formulas are evaluated in SI and returned as ħ·rate in μeV:
    κ    = (π c d² / 8V) · (1 - √(R_l R_r)) / √(R_l R_r)
    κ_in = (π c d² / 4V) · α
    g    = √(M² ω_QD / 2 ε₀ ħ V)
"""

import logging
import math

from app.core.constants import CONSTANTS, JOULE_PER_UEV
from app.models.geometry import CavityGeometry

logger = logging.getLogger(__name__)

UM = 1e-6
UM3 = 1e-18

# Below this reflectivity the good-cavity κ formula is suspect
LOW_REFLECTIVITY = 0.5


class GeometryError(Exception):
    """Base exception for geometry service errors."""
    pass


class UnphysicalGeometryError(GeometryError):
    """Raised when the internal loss exceeds the total loss."""
    pass


def _to_ueV(angular_rate: float) -> float:
    """ħ·ω (ω in s⁻¹) expressed in μeV."""
    return CONSTANTS.hbar_J_s * angular_rate / JOULE_PER_UEV


class GeometryService:
    def _mode_prefactor(self, geometry: CavityGeometry) -> float:
        """π c d² / V in s⁻¹."""
        d = geometry.d * UM
        V = geometry.V * UM3
        return math.pi * CONSTANTS.c * d**2 / V

    def total_loss(self, geometry: CavityGeometry) -> float:
        """Total cavity loss ħκ in μeV (0 for perfect mirrors)."""
        if min(geometry.R_l, geometry.R_r) < LOW_REFLECTIVITY:
            logger.warning(
                "Mirror reflectivity below %.2f (R_l=%g, R_r=%g): "
                "the good-cavity loss formula may not apply",
                LOW_REFLECTIVITY, geometry.R_l, geometry.R_r,
            )
        root = math.sqrt(geometry.R_l * geometry.R_r)
        kappa = self._mode_prefactor(geometry) / 8.0 * (1.0 - root) / root
        return _to_ueV(kappa)

    def internal_loss(self, geometry: CavityGeometry) -> float:
        """Internal (absorption / leaky-mode) loss ħκ_in in μeV."""
        kappa_in = self._mode_prefactor(geometry) / 4.0 * geometry.alpha
        return _to_ueV(kappa_in)

    def external_loss(self, geometry: CavityGeometry) -> float:
        """Out-coupling loss κ_out = κ - κ_in; errors when κ_in > κ."""
        total = self.total_loss(geometry)
        internal = self.internal_loss(geometry)
        if internal > total:
            raise UnphysicalGeometryError(
                f"internal loss {internal:.6g} ueV exceeds total loss {total:.6g} ueV "
                f"(alpha={geometry.alpha})"
            )
        return total - internal

    def coupling_strength(self, geometry: CavityGeometry) -> float:
        """QD-cavity coupling ħg in μeV."""
        dipole = geometry.M * CONSTANTS.debye_to_SI
        omega = geometry.omega_qd * CONSTANTS.electron_volt / CONSTANTS.hbar_J_s
        V = geometry.V * UM3
        g = math.sqrt(dipole**2 * omega / (2.0 * CONSTANTS.epsilon0 * CONSTANTS.hbar_J_s * V))
        return _to_ueV(g)
