"""Example corpus, error metrics and convergence studies."""

from src.validation.compare import (
    InvariantComparison,
    LocalSpacingReport,
    compare_invariants,
    local_spacing_report,
    spacing_tail_ratio,
)
from src.validation.examples import (
    EXAMPLES,
    CircleExample,
    DropletExample,
    ExampleCurve,
    PeakonsExample,
    get_example,
    make_example,
)
from src.validation.study import (
    STUDY_KINDS,
    ErrorRow,
    ErrorTable,
    StudyParams,
    fitted_slope,
    reference_invariants,
    run_study,
)

__all__ = [
    "EXAMPLES",
    "STUDY_KINDS",
    "CircleExample",
    "DropletExample",
    "ErrorRow",
    "ErrorTable",
    "ExampleCurve",
    "InvariantComparison",
    "LocalSpacingReport",
    "PeakonsExample",
    "StudyParams",
    "compare_invariants",
    "fitted_slope",
    "get_example",
    "local_spacing_report",
    "make_example",
    "reference_invariants",
    "run_study",
    "spacing_tail_ratio",
]
