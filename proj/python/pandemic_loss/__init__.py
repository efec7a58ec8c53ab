"""Epidemic intervention loss model, path optimizer and generational debt ledger."""

from ._core import (
    CapacityError,
    Error,
    InfeasibleError,
    IntegrationError,
    Scenario,
    ScheduleError,
    ValidationError,
    __version__,
    combined_loss,
    compare_financing,
    deviation_check,
    economic_summary,
    frontier,
    lambda_sweep,
    optimize,
    peak_stats,
    run_cli,
    run_ledger,
    simulate,
    wartime_no_capital_demo,
)

__all__ = [
    "CapacityError",
    "Error",
    "InfeasibleError",
    "IntegrationError",
    "Scenario",
    "ScheduleError",
    "ValidationError",
    "__version__",
    "combined_loss",
    "compare_financing",
    "deviation_check",
    "economic_summary",
    "frontier",
    "lambda_sweep",
    "optimize",
    "peak_stats",
    "run_cli",
    "run_ledger",
    "simulate",
    "wartime_no_capital_demo",
]
