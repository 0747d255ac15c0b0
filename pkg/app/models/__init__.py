from .params import SystemParams, InvalidParametersError
from .geometry import CavityGeometry
from .dephasing import DephasingSample, DephasingTable
from .lindblad import (
    HilbertConfig,
    DensityMatrix,
    DensityDiagnostics,
    OperatorSet,
    Trajectory,
    ExpectationSeries,
    SteadyStateObservables,
    RateModelComparison,
    InvalidDensityMatrixError,
)
from .rates import RateSolution, OptimalDephasing, QualityFactors
from .sweep import SweepRange, SweepSpec, SweepResult
from .validation import CheckResult

__all__ = [
    "SystemParams",
    "InvalidParametersError",
    "CavityGeometry",
    "DephasingSample",
    "DephasingTable",
    "HilbertConfig",
    "DensityMatrix",
    "DensityDiagnostics",
    "OperatorSet",
    "Trajectory",
    "ExpectationSeries",
    "SteadyStateObservables",
    "RateModelComparison",
    "InvalidDensityMatrixError",
    "RateSolution",
    "OptimalDephasing",
    "QualityFactors",
    "SweepRange",
    "SweepSpec",
    "SweepResult",
    "CheckResult",
]
