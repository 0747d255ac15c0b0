"""
Pytest fixtures and configuration for all tests.

Reference device used throughout: g = 50 μeV, γ = 0.02g, κ = 5g with
κ_in = 5 μeV, γ* from the built-in InGaAs table.
"""

from pathlib import Path
from typing import Callable

import pytest

from app.core.config import Settings
from app.models.dephasing import DephasingTable
from app.models.lindblad import HilbertConfig
from app.models.params import SystemParams
from app.services.dephasing_service import DephasingService

G = 50.0


@pytest.fixture
def settings() -> Settings:
    """Default runtime settings, independent of the local .env."""
    return Settings(_env_file=None)


@pytest.fixture
def ingaas_table() -> DephasingTable:
    return DephasingService().builtin_ingaas()


@pytest.fixture
def hilbert() -> HilbertConfig:
    return HilbertConfig(n_max=5)


@pytest.fixture
def reference_params(ingaas_table) -> Callable[..., SystemParams]:
    """
    Factory for the reference device.

    reference_params(delta_over_g=10, T=100) -> δ = 500 μeV, γ* = 220 μeV.
    """
    service = DephasingService()

    def build(
        delta_over_g: float = 0.0,
        T: float = 100.0,
        gamma_over_g: float = 0.02,
        pump_over_g: float = 0.0,
    ) -> SystemParams:
        return SystemParams(
            g=G,
            gamma=gamma_over_g * G,
            gamma_star=service.gamma_star_at(ingaas_table, T),
            kappa_in=5.0,
            kappa_out=5.0 * G - 5.0,
            delta=delta_over_g * G,
            pump=pump_over_g * G,
        )

    return build


@pytest.fixture
def write_ini(tmp_path) -> Callable[[str, str], Path]:
    """Write INI text into tmp_path and return its path."""

    def write(text: str, name: str = "problem.ini") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
