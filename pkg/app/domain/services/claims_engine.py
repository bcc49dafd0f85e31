"""Evaluate a scatter dataset against the ladder of tipping-point claims.

Claims 1-3 rest on the changepoint scan, 4-5 on a cubic fit, 6 on a
quadratic fit and scenarios 7-8 on the Pearson correlation. Stronger claims
imply weaker ones, so a supported rung also marks the rungs it implies.
"""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from app.domain.entities.claims import (
    CLAIM_DESCRIPTIONS,
    ChangepointScan,
    ClaimReport,
    ClaimVerdict,
    Decision,
    ThresholdMode,
)
from app.domain.exceptions import (
    SampleSizeError,
    SingularFitError,
    UndefinedCorrelationError,
    ValidationError,
)
from app.domain.services.changepoint import local_jump, scan_changepoint
from app.domain.services.regression import (
    fit_polynomial,
    fraction_to_ratio,
    inflection_point,
    ratio_to_fraction,
)
from app.domain.services.smoothing import steepness
from app.domain.services.special_functions import student_t_sf_two_tailed
from app.domain.value_objects import ScatterData, XKind

logger = logging.getLogger(__name__)

SCAN_PROCEDURE = "segmented-line permutation scan with local jump check"
STEEPNESS_PROCEDURE = "local-linear steepness ratio gated by the changepoint scan"
CUBIC_PROCEDURE = "cubic-term t-test with inflection location"
QUADRATIC_PROCEDURE = "quadratic-term t-test"
CORRELATION_PROCEDURE = "Pearson correlation t-test"

MIN_NONLINEARITY_POINTS = 10
MIN_INFLECTION_POINTS = 15
MIN_CORRELATION_POINTS = 4
JUMP_WINDOW_SHARE = 0.05

# ladder implications: supported key => supported values
_IMPLIES = {1: (3,), 2: (3,), 4: (5,), 5: (6,)}


@dataclass(frozen=True)
class ClaimsPolicy:
    alpha: float = 0.05
    threshold: float = 2.9013
    threshold_tolerance: float = 0.1
    window_center: float = 3.0
    window_halfwidth: float = 1.0
    threshold_mode: ThresholdMode = ThresholdMode.EXACT
    trim: float = 0.1
    permutations: int = 999
    steepness_factor: float = 4.0
    smoother_span: float = 0.3
    jump_window: int = 5
    min_jump_fraction: float = 0.5
    inflection_floor: float = 1e-3
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValidationError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.threshold_tolerance < 0 or self.window_halfwidth <= 0:
            raise ValidationError("tolerance must be nonnegative and the window nonempty")

    @property
    def window(self) -> tuple[float, float]:
        return (
            self.window_center - self.window_halfwidth,
            self.window_center + self.window_halfwidth,
        )

    def in_window(self, x: float) -> bool:
        low, high = self.window
        return low <= x <= high

    def centered_on(self, threshold: float) -> "ClaimsPolicy":
        """Same battery around another threshold, e.g. the upper one."""
        return replace(self, threshold=threshold, window_center=threshold)


def _verdict(
    claim_id: int,
    supported: bool,
    statistic: float | None,
    p_value: float,
    procedure: str,
    details: str,
) -> ClaimVerdict:
    return ClaimVerdict(
        claim_id=claim_id,
        description=CLAIM_DESCRIPTIONS[claim_id],
        statistic=statistic,
        p_value=p_value,
        decision=Decision.SUPPORTED if supported else Decision.NOT_SUPPORTED,
        procedure=procedure,
        details=details,
    )


def is_dichotomized(data: ScatterData) -> bool:
    """Outcomes collapsed to classes that carry no within-class variation.

    A single outcome value always counts; two values count when their
    predictor ranges overlap, as a questionnaire cut would leave them.
    """
    levels = np.unique(data.y)
    if levels.size == 1:
        return True
    if levels.size != 2:
        return False
    low = data.x[data.y == levels[0]]
    high = data.x[data.y == levels[1]]
    return bool(low.max() >= high.min() and high.max() >= low.min())


def test_nonlinearity(data: ScatterData, alpha: float = 0.05) -> ClaimVerdict:
    """Claim 6 from the significance of the quadratic coefficient."""
    if data.n < MIN_NONLINEARITY_POINTS:
        raise SampleSizeError(
            f"nonlinearity test needs at least {MIN_NONLINEARITY_POINTS} points, got {data.n}"
        )
    fit = fit_polynomial(data, 2)
    p_value = fit.p_values[2]
    return _verdict(
        6,
        p_value < alpha,
        fit.t_stats[2],
        p_value,
        QUADRATIC_PROCEDURE,
        f"b2 = {fit.coeffs[2]:.6g} +/- {fit.std_errors[2]:.6g} "
        f"(x_kind={data.x_kind}, n={data.n})",
    )


def test_inflection(
    data: ScatterData,
    alpha: float = 0.05,
    window: tuple[float, float] = (2.0, 4.0),
    floor_factor: float = 1e-3,
) -> tuple[ClaimVerdict, ClaimVerdict]:
    """Claims 4 and 5 from a cubic fit."""
    if data.n < MIN_INFLECTION_POINTS:
        raise SampleSizeError(
            f"inflection test needs at least {MIN_INFLECTION_POINTS} points, got {data.n}"
        )
    fit = fit_polynomial(data, 3)
    p_value = fit.p_values[3]
    point = inflection_point(fit, floor_factor)
    significant = p_value < alpha
    interior = point is not None and point.within_range
    if point is None:
        where = "cubic term below the numerical floor; no inflection"
    else:
        side = "inside" if point.within_range else "outside"
        where = f"inflection at x = {point.x:.6g} ({side} the observed range)"
    details = f"b3 = {fit.coeffs[3]:.6g} +/- {fit.std_errors[3]:.6g}; {where}"

    claim5 = _verdict(
        5, significant and interior, fit.t_stats[3], p_value, CUBIC_PROCEDURE, details
    )
    near = point is not None and window[0] <= point.x <= window[1]
    claim4 = _verdict(
        4,
        claim5.supported and near,
        fit.t_stats[3],
        p_value,
        CUBIC_PROCEDURE,
        f"{details}; window [{window[0]:.6g}, {window[1]:.6g}]",
    )
    return claim4, claim5


def pearson(data: ScatterData) -> tuple[float, float, float]:
    """(r, t, two-tailed p) for the Pearson correlation."""
    if data.n < MIN_CORRELATION_POINTS:
        raise SampleSizeError(
            f"correlation test needs at least {MIN_CORRELATION_POINTS} points, got {data.n}"
        )
    if np.ptp(data.x) == 0 or np.ptp(data.y) == 0:
        raise UndefinedCorrelationError("a column has zero variance")
    r = float(np.corrcoef(data.x, data.y)[0, 1])
    r = max(-1.0, min(1.0, r))
    if abs(r) >= 1.0:
        return r, math.copysign(math.inf, r), 0.0
    t_stat = r * math.sqrt((data.n - 2) / (1.0 - r * r))
    return r, t_stat, student_t_sf_two_tailed(t_stat, data.n - 2)


def _quadratic_supported(data: ScatterData, alpha: float) -> bool:
    """Claim-6 outcome, False when the quadratic cannot be fitted at all."""
    try:
        return test_nonlinearity(data, alpha).supported
    except (SampleSizeError, SingularFitError):
        return False


def test_correlation(
    data: ScatterData,
    alpha: float = 0.05,
    nonlinear: bool | None = None,
) -> tuple[ClaimVerdict, ClaimVerdict]:
    """Scenarios 7 (positive, substantially linear) and 8 (no correlation).

    ``nonlinear`` is the claim-6 outcome; it is computed here when omitted
    and the data are large enough.
    """
    r, t_stat, p_value = pearson(data)
    if nonlinear is None:
        nonlinear = _quadratic_supported(data, alpha)
    details = f"r = {r:.6g}, n = {data.n}"
    if p_value < alpha and r < 0:
        details += "; significant negative correlation"
    elif p_value < alpha and nonlinear:
        details += "; correlation is significant but the fit is nonlinear"
    statistic = t_stat if math.isfinite(t_stat) else None
    scenario7 = _verdict(
        7,
        p_value < alpha and r > 0 and not nonlinear,
        statistic,
        p_value,
        CORRELATION_PROCEDURE,
        details,
    )
    scenario8 = _verdict(8, p_value >= alpha, statistic, p_value, CORRELATION_PROCEDURE, details)
    return scenario7, scenario8


def _segmented_range(data: ScatterData, scan: ChangepointScan) -> float:
    left = data.x < scan.best_x
    fitted = np.where(
        left,
        scan.left_line[0] + scan.left_line[1] * data.x,
        scan.right_line[0] + scan.right_line[1] * data.x,
    )
    return float(np.ptp(fitted))


def _discontinuity_verdicts(
    data: ScatterData, scan: ChangepointScan, policy: ClaimsPolicy
) -> tuple[ClaimVerdict, ClaimVerdict]:
    window = max(policy.jump_window, math.ceil(JUMP_WINDOW_SHARE * data.n))
    significant = scan.p_value < policy.alpha
    located = policy.in_window(scan.best_x)
    try:
        jump = local_jump(data, scan.best_x, window)
        height = _segmented_range(data, scan)
        sharp = jump.p_value < policy.alpha and abs(jump.estimate) >= (
            policy.min_jump_fraction * height
        )
        jump_note = (
            f"local jump {jump.estimate:.6g} (p = {jump.p_value:.6g}) against a "
            f"segmented range of {height:.6g}"
        )
    except SampleSizeError as exc:
        sharp = False
        jump_note = f"local jump not estimable: {exc}"
    details = (
        f"best breakpoint x = {scan.best_x:.6g}, improvement = "
        f"{scan.improvement_stat:.6g}, permutation p = {scan.p_value:.6g}; {jump_note}"
    )

    claim2 = _verdict(
        2,
        significant and located and sharp,
        scan.improvement_stat,
        scan.p_value,
        SCAN_PROCEDURE,
        details,
    )
    if policy.threshold_mode is ThresholdMode.EXACT:
        close = abs(scan.best_x - policy.threshold) <= policy.threshold_tolerance
        note = f"; threshold {policy.threshold:.6g} +/- {policy.threshold_tolerance:.6g}"
    else:
        close = True
        note = "; any sample-specific threshold inside the window"
    claim1 = _verdict(
        1,
        claim2.supported and close,
        scan.improvement_stat,
        scan.p_value,
        SCAN_PROCEDURE,
        details + note,
    )
    return claim1, claim2


def _rapid_change_verdict(
    data: ScatterData, scan: ChangepointScan, policy: ClaimsPolicy
) -> ClaimVerdict:
    shape = steepness(data, policy.smoother_span)
    steep = shape.ratio >= policy.steepness_factor
    supported = steep and policy.in_window(shape.location) and scan.p_value < policy.alpha
    return _verdict(
        3,
        supported,
        shape.ratio,
        scan.p_value,
        STEEPNESS_PROCEDURE,
        f"max/median smoothed slope = {shape.ratio:.6g} at x = {shape.location:.6g} "
        f"(factor {policy.steepness_factor:.6g}); permutation p = {scan.p_value:.6g}",
    )


def _close_ladder(verdicts: dict[int, ClaimVerdict]) -> None:
    for claim_id in (1, 2, 4, 5):
        strong = verdicts[claim_id]
        if not strong.supported:
            continue
        for weaker_id in _IMPLIES[claim_id]:
            weaker = verdicts[weaker_id]
            if weaker.supported:
                continue
            suffix = f"; implied by claim {claim_id}"
            verdicts[weaker_id] = replace(
                weaker,
                decision=Decision.SUPPORTED,
                p_value=weaker.p_value if weaker.p_value is not None else strong.p_value,
                details=(weaker.details + suffix).lstrip("; "),
            )


def _alternate(data: ScatterData) -> ScatterData | None:
    if data.x_kind is XKind.RATIO:
        return data.with_x([ratio_to_fraction(float(x)) for x in data.x], XKind.FRACTION)
    if data.x_kind is XKind.FRACTION:
        keep = data.x < 1.0
        return ScatterData.from_arrays(
            [fraction_to_ratio(float(x)) for x in data.x[keep]], data.y[keep], XKind.RATIO
        )
    return None


def evaluate_all(data: ScatterData, policy: ClaimsPolicy | None = None) -> ClaimReport:
    """Run the full battery and return verdicts 1-8 in order."""
    policy = policy or ClaimsPolicy()
    verdicts: dict[int, ClaimVerdict] = {}
    dichotomized = is_dichotomized(data)
    scan: ChangepointScan | None = None

    if dichotomized:
        reason = "dichotomized outcome: no within-class variation to detect a shape"
        for claim_id, procedure in (
            (1, SCAN_PROCEDURE),
            (2, SCAN_PROCEDURE),
            (3, STEEPNESS_PROCEDURE),
            (4, CUBIC_PROCEDURE),
            (5, CUBIC_PROCEDURE),
            (6, QUADRATIC_PROCEDURE),
        ):
            verdicts[claim_id] = ClaimVerdict.untestable(claim_id, procedure, reason)
    else:
        try:
            scan = scan_changepoint(data, policy.trim, policy.permutations, policy.seed)
        except SampleSizeError as exc:
            for claim_id in (1, 2):
                verdicts[claim_id] = ClaimVerdict.untestable(claim_id, SCAN_PROCEDURE, str(exc))
            verdicts[3] = ClaimVerdict.untestable(3, STEEPNESS_PROCEDURE, str(exc))
        else:
            verdicts[1], verdicts[2] = _discontinuity_verdicts(data, scan, policy)
            try:
                verdicts[3] = _rapid_change_verdict(data, scan, policy)
            except SampleSizeError as exc:
                verdicts[3] = ClaimVerdict.untestable(3, STEEPNESS_PROCEDURE, str(exc))

        try:
            verdicts[4], verdicts[5] = test_inflection(
                data, policy.alpha, policy.window, policy.inflection_floor
            )
        except (SampleSizeError, SingularFitError) as exc:
            verdicts[4] = ClaimVerdict.untestable(4, CUBIC_PROCEDURE, str(exc))
            verdicts[5] = ClaimVerdict.untestable(5, CUBIC_PROCEDURE, str(exc))

        try:
            verdicts[6] = test_nonlinearity(data, policy.alpha)
        except (SampleSizeError, SingularFitError) as exc:
            verdicts[6] = ClaimVerdict.untestable(6, QUADRATIC_PROCEDURE, str(exc))

        _close_ladder(verdicts)

    try:
        verdicts[7], verdicts[8] = test_correlation(
            data, policy.alpha, nonlinear=verdicts[6].supported
        )
    except (SampleSizeError, UndefinedCorrelationError) as exc:
        verdicts[7] = ClaimVerdict.untestable(7, CORRELATION_PROCEDURE, str(exc))
        verdicts[8] = ClaimVerdict.untestable(8, CORRELATION_PROCEDURE, str(exc))

    alternate = None if dichotomized else _alternate(data)
    alternate_verdict: ClaimVerdict | None = None
    if alternate is not None:
        try:
            alternate_verdict = test_nonlinearity(alternate, policy.alpha)
        except (SampleSizeError, SingularFitError) as exc:
            alternate_verdict = ClaimVerdict.untestable(6, QUADRATIC_PROCEDURE, str(exc))

    report = ClaimReport(
        verdicts=tuple(verdicts[claim_id] for claim_id in sorted(verdicts)),
        x_kind=data.x_kind,
        n=data.n,
        threshold=policy.threshold,
        window=policy.window,
        threshold_mode=policy.threshold_mode,
        dichotomized=dichotomized,
        scan=scan,
        seed=policy.seed,
        alternate_x_kind=alternate.x_kind if alternate is not None else None,
        alternate_nonlinearity=alternate_verdict,
    )
    logger.info(
        "Evaluated claims",
        extra={
            "n": data.n,
            "threshold": policy.threshold,
            "supported": list(report.supported_claims),
        },
    )
    return report
