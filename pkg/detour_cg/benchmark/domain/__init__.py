from .entities import DEFAULT_SEEDS, DEFAULT_STABILIZATIONS, BenchConfig, RunOutcome, SummaryRow
from .exceptions import BenchmarkError, EmptySummaryError, ObjectiveMismatchError
from .service import (
    SUMMARY_COLUMNS,
    BenchmarkService,
    check_objectives,
    emit_summary,
    summary_table,
)
