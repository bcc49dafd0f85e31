"""Domain entities."""

from .claims import (
    CLAIM_DESCRIPTIONS,
    ChangepointScan,
    ClaimReport,
    ClaimVerdict,
    Decision,
    ThresholdMode,
)
from .forensics import (
    AllowanceVerdict,
    ForensicsReport,
    SensitivityEntry,
    TailEstimate,
    Verdict,
)
from .regression import CurveSample, FitDivergence, InflectionPoint, RegressionFit
from .simulation import (
    CalibrationResult,
    DichotomyExperiment,
    GeneratorSpec,
    PowerRow,
    PowerTable,
    PredictorDistribution,
    PredictorKind,
    Shape,
    ShapeParams,
)

__all__ = [
    "CLAIM_DESCRIPTIONS",
    "AllowanceVerdict",
    "CalibrationResult",
    "ChangepointScan",
    "ClaimReport",
    "ClaimVerdict",
    "CurveSample",
    "Decision",
    "DichotomyExperiment",
    "FitDivergence",
    "ForensicsReport",
    "GeneratorSpec",
    "InflectionPoint",
    "PowerRow",
    "PowerTable",
    "PredictorDistribution",
    "PredictorKind",
    "RegressionFit",
    "SensitivityEntry",
    "Shape",
    "ShapeParams",
    "TailEstimate",
    "ThresholdMode",
    "Verdict",
]
