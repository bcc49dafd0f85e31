"""Normal and Student-t tail probabilities.

The incomplete beta function is evaluated with the modified Lentz continued
fraction, using the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) to stay in the
rapidly converging region.
"""

import math

from app.domain.exceptions import ConvergenceError, ValidationError

CF_TOLERANCE = 1e-14
CF_MAX_ITERATIONS = 20_000
_TINY = 1e-300
LARGE_SHAPE = 100.0


def normal_cdf(z: float) -> float:
    """Standard normal CDF Phi(z)."""
    if not math.isfinite(z):
        raise ValidationError(f"z must be finite, got {z}")
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def normal_sf(z: float) -> float:
    """Upper tail 1 - Phi(z), accurate deep into the right tail."""
    if not math.isfinite(z):
        raise ValidationError(f"z must be finite, got {z}")
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, CF_MAX_ITERATIONS + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_TOLERANCE:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})"
    )


def _stirling_tail(z: float) -> float:
    """lgamma(z) minus its Stirling leading terms, for z >= LARGE_SHAPE."""
    inv = 1.0 / z
    inv2 = inv * inv
    return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))


def _log_beta(a: float, b: float) -> float:
    """log B(a, b) without the cancellation of three large lgamma terms."""
    small, large = min(a, b), max(a, b)
    if large < LARGE_SHAPE:
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    total = large + small
    # lgamma(total) - lgamma(large) from the Stirling series
    ratio = (
        (large - 0.5) * math.log1p(small / large)
        + small * math.log(total)
        - small
        + _stirling_tail(total)
        - _stirling_tail(large)
    )
    return math.lgamma(small) - ratio


def _incomplete_beta(a: float, b: float, x: float, y: float) -> float:
    """I_x(a, b) where y = 1 - x is supplied separately to avoid cancellation."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_x = math.log1p(-y) if y < 0.5 else math.log(x)
    log_y = math.log1p(-x) if x < 0.5 else math.log(y)
    front = math.exp(a * log_x + b * log_y - _log_beta(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, y) / b


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if not (a > 0 and b > 0):
        raise ValidationError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"x must lie in [0, 1], got {x}")
    return _incomplete_beta(a, b, x, 1.0 - x)


def student_t_sf(t: float, df: float) -> float:
    """One-tailed p-value P(T > t) for Student's t with ``df`` degrees of freedom."""
    if not math.isfinite(t):
        raise ValidationError(f"t must be finite, got {t}")
    if not df >= 1:
        raise ValidationError(f"df must be at least 1, got {df}")
    if t == 0:
        return 0.5
    t2 = t * t
    # P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    two_sided = _incomplete_beta(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2))
    tail = 0.5 * two_sided
    return tail if t > 0 else 1.0 - tail


def student_t_sf_two_tailed(t: float, df: float) -> float:
    """Two-tailed p-value; twice the one-tailed tail of |t|, capped at 1."""
    return min(1.0, 2.0 * student_t_sf(abs(t), df))


def rounds_down_to_alpha(p_value: float, alpha: float, decimals: int = 2) -> bool:
    """True when p exceeds alpha yet rounds to a value at or below it."""
    return p_value > alpha and round(p_value, decimals) <= alpha
