"""Model-fidelity evaluation toolkit.

Mean/variance fidelity scores and rankings (:mod:`fidelity.metrics`),
scenario validity ranges (:mod:`fidelity.scenario`), polynomial surrogates
(:mod:`fidelity.surrogate`), a toy gradeability Monte Carlo
(:mod:`fidelity.gradeability`) and cost-aware variant selection
(:mod:`fidelity.variants`).
"""

__version__ = "0.1.0"

from .errors import DegenerateError, FidelityError, NotMonotoneError
from .metrics import (
    FidelityScore,
    ModelRecord,
    Ranking,
    SampleSummary,
    accuracy_component,
    fidelity_score,
    predictor_information,
    rank_absolute,
    rank_relative,
    summarize,
    variability_component,
)

__all__ = [
    "DegenerateError",
    "FidelityError",
    "NotMonotoneError",
    "FidelityScore",
    "ModelRecord",
    "Ranking",
    "SampleSummary",
    "accuracy_component",
    "fidelity_score",
    "predictor_information",
    "rank_absolute",
    "rank_relative",
    "summarize",
    "variability_component",
]
