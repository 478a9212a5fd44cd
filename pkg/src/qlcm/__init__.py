"""q-gamma function family and certification of its log-complete-monotonicity bounds."""

from qlcm.core import (
    DEFAULT_CONFIG,
    ConvergenceError,
    DomainError,
    EvalConfig,
    EvaluationError,
    PreconditionError,
    QContext,
    SeriesResult,
    make_qcontext,
    sum_series,
)

__version__ = "0.1.0"
