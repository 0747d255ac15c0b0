"""
Configuración de runtime cargada desde variables de entorno (.env)

Todo lo que varía entre una máquina y otra (tolerancias, logging, paralelismo)
va aquí. Los parámetros físicos del problema van en el archivo INI (ver
app/repositories/config_repository.py).
"""

from functools import lru_cache
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging
    log_level: str = "INFO"  # DEBUG | INFO | WARNING | ERROR

    # ==================== Integrador de Lindblad ====================
    default_n_max: int = 5  # Truncación del espacio de Fock (n = 0..n_max)
    ode_rtol: float = 1e-8  # Tolerancia relativa del Runge-Kutta 4(5)
    ode_atol: float = 1e-10  # Tolerancia absoluta
    trace_drift_limit: float = 1e-6  # Si |Tr ρ - 1| supera esto, se aborta la integración

    # ==================== Barridos ====================
    csv_precision: int = 17  # Dígitos significativos en los CSV (17 = round-trip exacto)
    sweep_workers: int = 1  # > 1 evalúa los puntos del barrido en un thread pool

    # Por encima de este R/κ ya no estamos en el régimen de Purcell ("bad cavity")
    bad_cavity_ratio_limit: float = 0.1

    # Energía de transición del QD para los factores de calidad cuando no hay [geometry]
    default_omega_qd_ev: float = 1.3

    class Config:
        env_file = ".env"  # Lee desde el archivo .env
        env_file_encoding = "utf-8"
        env_prefix = "QDCAV_"
        extra = "ignore"  # Ignora campos extras del .env que no estén en el modelo


@lru_cache()
def get_settings() -> Settings:
    """Retorna la instancia de configuración (cacheada para no releerla)"""
    return Settings()
