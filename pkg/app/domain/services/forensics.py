"""Internal-consistency audit of published two-group summary statistics."""

import logging
import math
from dataclasses import dataclass

from app.domain.entities.forensics import (
    AllowanceVerdict,
    ForensicsReport,
    SensitivityEntry,
    TailEstimate,
    Verdict,
)
from app.domain.exceptions import (
    DegenerateStatisticsError,
    InconsistentSummaryError,
    ValidationError,
)
from app.domain.services.special_functions import (
    rounds_down_to_alpha,
    student_t_sf,
    student_t_sf_two_tailed,
)
from app.domain.services.two_sample import (
    pooled_sd_from_t,
    support_lower_bound,
    tail_fraction_above,
)
from app.domain.value_objects import SummaryStats

logger = logging.getLogger(__name__)

ASSUMPTIONS = (
    "flourishing and nonflourishing groups share one standard deviation "
    "(pooled-variance t-test)",
    "tail shares use a normal approximation although positivity ratios are "
    "nonnegative",
    "degrees of freedom follow the pooled-variance convention n1 + n2 - 2",
)


@dataclass(frozen=True)
class ForensicsPolicy:
    threshold: float = 2.9013
    upper_threshold: float = 11.6346
    impurity_allowance: float = 0.10
    allowance_grid: tuple[float, ...] = (0.05, 0.10, 0.20)
    alpha: float = 0.05

    def __post_init__(self) -> None:
        allowances = (self.impurity_allowance, *self.allowance_grid)
        if not all(0.0 <= a <= 1.0 for a in allowances):
            raise ValidationError("impurity allowances must lie in [0, 1]")


def classify(
    tail: TailEstimate, flourishing_tail: TailEstimate | None, allowance: float
) -> Verdict:
    """Inconsistent when either group puts more than ``allowance`` on the
    wrong side of the threshold."""
    misplaced = tail.fraction_above
    if flourishing_tail is not None:
        misplaced = max(misplaced, flourishing_tail.fraction_below)
    return Verdict.INCONSISTENT if misplaced > allowance else Verdict.CONSISTENT


def _significance_notes(stats: SummaryStats, p_one: float, p_two: float, alpha: float) -> list[str]:
    notes = [
        f"t({stats.degrees_of_freedom}) = {stats.t_stat:.6g}: one-tailed p = {p_one:.4f}, "
        f"two-tailed p = {p_two:.4f}"
    ]
    if rounds_down_to_alpha(p_one, alpha):
        notes.append(
            f"one-tailed p = {p_one:.4f} exceeds alpha = {alpha:.6g} yet rounds to "
            f"{round(p_one, 2):.2f}"
        )
    return notes


def audit(stats: SummaryStats, policy: ForensicsPolicy | None = None) -> ForensicsReport:
    """Reverse-engineer the pooled SD and test the tipping-point reading."""
    policy = policy or ForensicsPolicy()
    df = stats.degrees_of_freedom
    p_one = student_t_sf(abs(stats.t_stat), df)
    p_two = student_t_sf_two_tailed(stats.t_stat, df)
    flank = stats.mean2 < policy.threshold <= stats.mean1
    diagnostics = _significance_notes(stats, p_one, p_two, policy.alpha)
    if flank:
        diagnostics.append(
            "group means flank the threshold; flanking means do not bear on the "
            "tipping-point hypothesis"
        )

    try:
        implied_sd = pooled_sd_from_t(stats)
    except (DegenerateStatisticsError, InconsistentSummaryError) as exc:
        logger.warning(
            "Audit is indeterminate",
            extra={"label": stats.label, "reason": str(exc)},
        )
        return ForensicsReport(
            input=stats,
            implied_sd=None,
            support_bound=None,
            tail=None,
            flourishing_tail=None,
            upper_tail=None,
            recomputed_p_one_tailed=p_one,
            recomputed_p_two_tailed=p_two,
            degrees_of_freedom=df,
            rounds_down_to_alpha=rounds_down_to_alpha(p_one, policy.alpha),
            means_flank_threshold=flank,
            impurity_allowance=policy.impurity_allowance,
            verdict=Verdict.INDETERMINATE,
            verdicts_by_allowance=tuple(
                AllowanceVerdict(a, Verdict.INDETERMINATE) for a in policy.allowance_grid
            ),
            assumptions=ASSUMPTIONS,
            diagnostics=(str(exc), *diagnostics),
        )

    support_bound: float | None
    if stats.mean2 > 0:
        support_bound = support_lower_bound(stats.mean2, implied_sd)
    else:
        support_bound = None
        diagnostics.append("nonflourishing mean is zero; no support bound")
    tail = tail_fraction_above(stats.mean2, implied_sd, policy.threshold)
    flourishing_tail = tail_fraction_above(stats.mean1, implied_sd, policy.threshold)
    upper_tail = tail_fraction_above(stats.mean2, implied_sd, policy.upper_threshold)

    verdict = classify(tail, flourishing_tail, policy.impurity_allowance)
    logger.debug(
        "Audited summary statistics",
        extra={"label": stats.label, "implied_sd": implied_sd, "verdict": str(verdict)},
    )
    return ForensicsReport(
        input=stats,
        implied_sd=implied_sd,
        support_bound=support_bound,
        tail=tail,
        flourishing_tail=flourishing_tail,
        upper_tail=upper_tail,
        recomputed_p_one_tailed=p_one,
        recomputed_p_two_tailed=p_two,
        degrees_of_freedom=df,
        rounds_down_to_alpha=rounds_down_to_alpha(p_one, policy.alpha),
        means_flank_threshold=flank,
        impurity_allowance=policy.impurity_allowance,
        verdict=verdict,
        verdicts_by_allowance=tuple(
            AllowanceVerdict(a, classify(tail, flourishing_tail, a))
            for a in policy.allowance_grid
        ),
        assumptions=ASSUMPTIONS,
        diagnostics=tuple(diagnostics),
    )


def equal_variance_sensitivity(
    stats: SummaryStats,
    ratio_grid: tuple[float, ...] = (0.5, 1.0, 1.5, 2.0),
    threshold: float = 2.9013,
) -> list[SensitivityEntry]:
    """Relax the equal-SD assumption.

    For an assumed ratio rho = sd1 / sd2 the pooled identity
    s**2 * (n1 + n2 - 2) = (n1 - 1) * sd1**2 + (n2 - 1) * sd2**2
    fixes both group SDs.
    """
    for rho in ratio_grid:
        if not rho > 0:
            raise ValidationError(f"SD ratios must be positive, got {rho}")
    try:
        s = pooled_sd_from_t(stats)
    except (DegenerateStatisticsError, InconsistentSummaryError) as exc:
        return [
            SensitivityEntry(rho, None, None, None, None, feasible=False, note=str(exc))
            for rho in ratio_grid
        ]

    entries = []
    dof = float(stats.degrees_of_freedom)
    for rho in ratio_grid:
        try:
            scale = math.sqrt(dof / ((stats.n1 - 1) * rho * rho + (stats.n2 - 1)))
            sd2 = s * scale
            sd1 = rho * sd2
            if not (math.isfinite(sd1) and sd1 > 0 and math.isfinite(sd2) and sd2 > 0):
                raise ValidationError("implied group SDs are not positive and finite")
            tail = tail_fraction_above(stats.mean2, sd2, threshold)
            bound = support_lower_bound(stats.mean2, sd2) if stats.mean2 > 0 else None
        except (ValidationError, OverflowError, ZeroDivisionError) as exc:
            entries.append(
                SensitivityEntry(rho, None, None, None, None, feasible=False, note=str(exc))
            )
            continue
        entries.append(
            SensitivityEntry(
                sd_ratio=rho,
                sd_flourishing=sd1,
                sd_nonflourishing=sd2,
                support_bound=bound,
                tail=tail,
                feasible=True,
            )
        )
    return entries
