"""
SystemParams - the rate-model parameter bundle.

All rates are energies in μeV with ħ = 1. κ is never stored: it is always
κ_in + κ_out.
"""

import math

from pydantic import BaseModel, ConfigDict, ValidationInfo, model_validator

# Validation context flag: accept γ = 0 and κ = 0 (closed systems for the
# master-equation engine). The rate formulas divide by both.
ALLOW_LOSSLESS = "allow_lossless"

PARAM_FIELDS = ("g", "gamma", "gamma_star", "kappa_in", "kappa_out", "delta", "pump")


class InvalidParametersError(ValueError):
    """Raised when a parameter bundle violates one of its invariants."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


class SystemParams(BaseModel):
    """QD-cavity parameters: coupling, losses, dephasing, detuning and pump."""

    model_config = ConfigDict(frozen=True)

    g: float  # coupling strength
    gamma: float  # QD spontaneous emission γ
    gamma_star: float = 0.0  # pure dephasing γ*
    kappa_in: float = 0.0  # cavity internal loss
    kappa_out: float = 0.0  # cavity external (useful) loss
    delta: float = 0.0  # ω_QD - ω_c, signed
    pump: float = 0.0  # incoherent pump P

    @classmethod
    def lossless_allowed(cls, **fields: float) -> "SystemParams":
        """Build a bundle where γ and κ may be zero (Lindblad-only use)."""
        return cls.model_validate(fields, context={ALLOW_LOSSLESS: True})

    @property
    def kappa(self) -> float:
        return self.kappa_in + self.kappa_out

    @property
    def total_decoherence(self) -> float:
        """Γ = P + γ + γ* + κ, the coherence-decay sum entering R."""
        return self.pump + self.gamma + self.gamma_star + self.kappa

    def check_invariants(self, allow_lossless: bool = False) -> None:
        """Raise InvalidParametersError naming the first violated invariant."""
        for name in PARAM_FIELDS:
            if not math.isfinite(getattr(self, name)):
                raise InvalidParametersError(name, f"{name} must be a finite number")
        if not self.g >= 0:
            raise InvalidParametersError("g", "g must be non-negative")
        if allow_lossless:
            if not self.gamma >= 0:
                raise InvalidParametersError("gamma", "gamma must be non-negative")
        elif not self.gamma > 0:
            raise InvalidParametersError("gamma", "gamma must be positive")
        for name in ("gamma_star", "kappa_in", "kappa_out", "pump"):
            if not getattr(self, name) >= 0:
                raise InvalidParametersError(name, f"{name} must be non-negative")
        if not allow_lossless and not self.kappa > 0:
            raise InvalidParametersError("kappa", "kappa = kappa_in + kappa_out must be positive")

    @model_validator(mode="after")
    def _validate(self, info: ValidationInfo) -> "SystemParams":
        allow = bool(info.context and info.context.get(ALLOW_LOSSLESS))
        self.check_invariants(allow_lossless=allow)
        return self
