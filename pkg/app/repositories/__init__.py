# Repositories layer - file persistence (CSV tables). config_repository depends on
# the dephasing service, import it directly from its module.
from .dephasing_repository import DephasingTableError, DephasingTableRepository
from .results_repository import ResultsError, ResultsRepository

__all__ = [
    "DephasingTableError",
    "DephasingTableRepository",
    "ResultsError",
    "ResultsRepository",
]
