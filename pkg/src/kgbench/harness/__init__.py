"""Reference solutions, error sweeps, limit study, 2D demo and emission."""

from .reference import ReferenceSolution, make_reference
from .sweep import ErrorTable, SweepSpec, diagonal_sweep, fit_rates, run_sweep, run_table
from .tables import TABLES, get_table

__all__ = ["ReferenceSolution", "make_reference", "ErrorTable", "SweepSpec", "diagonal_sweep",
           "fit_rates", "run_sweep", "run_table", "TABLES", "get_table"]
