"""
Params service - validation of the parameter bundle and the μeV ↔ ps⁻¹ bridge.
"""

from app.core.constants import CONSTANTS
from app.models.geometry import CavityGeometry
from app.models.params import InvalidParametersError, SystemParams
from app.services.geometry_service import GeometryService


class ParamsError(Exception):
    """Base exception for parameter handling errors."""
    pass


def validate(params: SystemParams) -> SystemParams:
    """
    Return the bundle unchanged when every invariant holds.

    Instances built with model_copy(update=...) skip pydantic validation,
    so sweeps run every derived bundle through here.
    """
    params.check_invariants()
    return params


def rate_to_inverse_time(energy_ueV: float) -> float:
    """Convert an energy-rate in μeV to an inverse time in ps⁻¹ (e / ħ)."""
    if energy_ueV < 0:
        raise ParamsError(f"rate must be non-negative, got {energy_ueV}")
    return energy_ueV / CONSTANTS.hbar_ueV_ps


def inverse_time_to_rate(rate_per_ps: float) -> float:
    return rate_per_ps * CONSTANTS.hbar_ueV_ps


def system_from_geometry(geometry: CavityGeometry, base: SystemParams) -> SystemParams:
    """Replace g, κ_in and κ_out of `base` by the values the cavity geometry implies."""
    service = GeometryService()
    derived = base.model_copy(update={
        "g": service.coupling_strength(geometry),
        "kappa_in": service.internal_loss(geometry),
        "kappa_out": service.external_loss(geometry),
    })
    return validate(derived)


__all__ = [
    "ParamsError",
    "InvalidParametersError",
    "validate",
    "rate_to_inverse_time",
    "inverse_time_to_rate",
    "system_from_geometry",
]
