"""Report Data Transfer Objects.

Every report is an AnalysisReport envelope whose ``results`` carry a ``kind``
discriminator. Non-finite floats (an unbounded steepness ratio, say) are
written as ``null`` so every report is strict JSON.
"""

from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from app.domain.entities import (
    CalibrationResult,
    ClaimReport,
    Decision,
    PowerTable,
    Shape,
    ThresholdMode,
    Verdict,
)
from app.domain.value_objects import XKind

SCHEMA_VERSION = "1.0"


class ReportModel(BaseModel):
    model_config = ConfigDict(
        from_attributes=True,
        frozen=True,
        ser_json_inf_nan="null",
    )


class SummaryStatsDTO(ReportModel):
    label: str = ""
    n1: int = Field(..., ge=2, description="Flourishing group size")
    n2: int = Field(..., ge=2, description="Nonflourishing group size")
    mean1: float = Field(..., ge=0, description="Flourishing group mean ratio")
    mean2: float = Field(..., ge=0, description="Nonflourishing group mean ratio")
    t_stat: float = Field(..., description="Reported pooled t-statistic")


class TailEstimateDTO(ReportModel):
    mu: float
    sigma: float
    threshold: float
    fraction_above: float
    fraction_below: float


class AllowanceVerdictDTO(ReportModel):
    allowance: float
    verdict: Verdict


class ForensicsReportDTO(ReportModel):
    input: SummaryStatsDTO
    implied_sd: float | None
    support_bound: float | None
    tail: TailEstimateDTO | None = Field(
        ..., description="Nonflourishers above the threshold (normal approximation)"
    )
    flourishing_tail: TailEstimateDTO | None
    upper_tail: TailEstimateDTO | None
    recomputed_p_one_tailed: float
    recomputed_p_two_tailed: float
    degrees_of_freedom: int
    rounds_down_to_alpha: bool
    means_flank_threshold: bool
    impurity_allowance: float
    verdict: Verdict
    verdicts_by_allowance: tuple[AllowanceVerdictDTO, ...]
    assumptions: tuple[str, ...]
    diagnostics: tuple[str, ...]


class SensitivityEntryDTO(ReportModel):
    sd_ratio: float
    sd_flourishing: float | None
    sd_nonflourishing: float | None
    support_bound: float | None
    tail: TailEstimateDTO | None
    feasible: bool
    note: str = ""


class AuditDTO(ReportModel):
    report: ForensicsReportDTO
    sensitivity: tuple[SensitivityEntryDTO, ...]


class ForensicsResults(ReportModel):
    kind: Literal["forensics"] = "forensics"
    audits: tuple[AuditDTO, ...]


class RegressionFitDTO(ReportModel):
    degree: int
    coeffs: tuple[float, ...] = Field(..., description="b0..bd in the raw predictor basis")
    std_errors: tuple[float, ...]
    t_stats: tuple[float, ...]
    p_values: tuple[float, ...] = Field(..., description="Two-tailed")
    r_squared: float
    n: int
    resid_var: float
    df_resid: int
    rss: float
    x_kind: XKind
    x_min: float
    x_max: float


class FitDivergenceDTO(ReportModel):
    band_low: float
    band_high: float
    at_x: float
    max_abs_difference: float
    relative_difference: float


class ParameterizationFitsDTO(ReportModel):
    x_kind: XKind
    n_loaded: int
    n_excluded: int
    linear: RegressionFitDTO
    quadratic: RegressionFitDTO
    divergence: FitDivergenceDTO


class FitResults(ReportModel):
    kind: Literal["fit"] = "fit"
    fits: tuple[ParameterizationFitsDTO, ...]
    notes: tuple[str, ...] = ()


class ClaimVerdictDTO(ReportModel):
    claim_id: int = Field(..., ge=1, le=8)
    description: str
    statistic: float | None
    p_value: float | None
    decision: Decision
    procedure: str
    details: str = ""


class ChangepointScanDTO(ReportModel):
    candidate_x: tuple[float, ...]
    best_x: float
    improvement_stat: float
    p_value: float
    rss_single: float
    rss_segmented: float
    permutations: int
    left_line: tuple[float, float]
    right_line: tuple[float, float]
    n: int


class ClaimReportDTO(ReportModel):
    verdicts: tuple[ClaimVerdictDTO, ...]
    x_kind: XKind
    n: int
    threshold: float
    window: tuple[float, float]
    threshold_mode: ThresholdMode
    dichotomized: bool
    scan: ChangepointScanDTO | None
    seed: int
    alternate_x_kind: XKind | None = None
    alternate_nonlinearity: ClaimVerdictDTO | None = None

    @classmethod
    def from_domain(cls, report: ClaimReport) -> "ClaimReportDTO":
        return cls.model_validate(report)


class ClaimsResults(ReportModel):
    kind: Literal["claims"] = "claims"
    primary: ClaimReportDTO
    upper: ClaimReportDTO | None = None
    excluded_rows: int = 0


class CalibrationDTO(ReportModel):
    reference: str
    intercept: float
    slope: float
    target_means: tuple[float, float]
    achieved_means: tuple[float, float]
    target_flourishing_share: float
    achieved_flourishing_share: float
    converged: bool

    @classmethod
    def from_domain(cls, result: CalibrationResult, reference: str) -> "CalibrationDTO":
        return cls(
            reference=reference,
            intercept=result.spec.params.intercept,
            slope=result.spec.params.slope,
            target_means=result.target_means,
            achieved_means=result.achieved_means,
            target_flourishing_share=result.target_flourishing_share,
            achieved_flourishing_share=result.achieved_flourishing_share,
            converged=result.converged,
        )


class PowerRowDTO(ReportModel):
    shape: Shape
    label: str
    replications: int
    dichotomized_t_rate: float
    quadratic_rate: float
    changepoint_rate: float
    degenerate_splits: int


class PowerResults(ReportModel):
    kind: Literal["simulate"] = "simulate"
    rows: tuple[PowerRowDTO, ...]
    replications: int
    alpha: float
    threshold_y: float
    master_seed: int
    permutations: int
    calibration: CalibrationDTO | None = None
    notes: tuple[str, ...] = ()

    @classmethod
    def from_domain(cls, table: PowerTable, reference: str = "step") -> "PowerResults":
        return cls(
            rows=tuple(PowerRowDTO.model_validate(row) for row in table.rows),
            replications=table.replications,
            alpha=table.alpha,
            threshold_y=table.threshold_y,
            master_seed=table.master_seed,
            permutations=table.permutations,
            calibration=(
                CalibrationDTO.from_domain(table.calibration, reference)
                if table.calibration is not None
                else None
            ),
            notes=table.notes,
        )


Results = Annotated[
    ForensicsResults | FitResults | ClaimsResults | PowerResults,
    Field(discriminator="kind"),
]


class TabularOutput(ReportModel):
    """Rows for CSV/TSV emission; ``float_format`` applies to float cells."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str | float | int | bool | None, ...], ...]
    float_format: str | None = None


class AnalysisOutcome(ReportModel):
    """What a use case hands back to the presentation layer."""

    input_digest: str
    results: Results
    tables: dict[str, TabularOutput] = Field(default_factory=dict)


class AnalysisReport(ReportModel):
    """Versioned envelope; identical inputs and parameters give identical bytes."""

    schema_version: str = SCHEMA_VERSION
    tool_version: str
    command: str
    input_digest: str = Field(..., description="SHA-256 of the input bytes")
    parameters: dict[str, Any] = Field(..., description="Effective configuration")
    results: Results

    @classmethod
    def from_outcome(
        cls,
        outcome: AnalysisOutcome,
        command: str,
        parameters: dict[str, Any],
        tool_version: str,
    ) -> "AnalysisReport":
        return cls(
            tool_version=tool_version,
            command=command,
            input_digest=outcome.input_digest,
            parameters=parameters,
            results=outcome.results,
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"
