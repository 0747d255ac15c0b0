"""
Fixtures for integration tests (the qdcav CLI end to end)
"""

from pathlib import Path

import pytest

from app.core.config import get_settings

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch, tmp_path):
    """
    Run every CLI call from tmp_path with default settings.

    get_settings() is cached; clear it so a local .env never leaks in.
    """
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def config_path():
    """Path of one of the shipped configs/*.ini files."""

    def resolve(name: str) -> Path:
        return CONFIGS / name

    return resolve
