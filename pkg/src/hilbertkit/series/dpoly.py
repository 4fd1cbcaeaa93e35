"""The correction polynomials D_0..D_5(s, lam) and their region sweep.

For 1 < lam <= 2 and lam + 1 < s <= 5,

    int_0^1 f - f(1)/2 + f'(1)/12 - f'''(1)/720 + g'''(1)/30240 >= sum_{i=0}^{5} (n+1)^(-(s+i)) D_i(s, lam),

so nonnegative D_i give the series inequality for every n. _d_components is the only
transcription of the six closed forms; it is evaluated on Fractions for exact verdicts
and on floats for numeric cross-checks.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..exceptions import DomainError, QuadratureError
from ..reporting import CheckReport
from ..sharding import ShardedScan
from ..special import ExactRational, to_rational
from .derivatives import f_derivative, g_derivative
from .summation import SeriesParams

logger = logging.getLogger(__name__)

D_COUNT = 6
LAMBDA_RANGE = (1, 2)
S_MAX = 5


def _check_poles(index: int, lam):
    for j in range(1, index + 2):
        if lam + j == 0:
            raise DomainError(f"D_{index} has a pole at lambda = {-j}")


def _d_components(s, lam, upto: int = D_COUNT - 1) -> list:
    """D_0..D_upto at (s, lam); s and lam share one numeric type, which every constant takes"""
    one = type(s)(1)
    c720 = 720 * one
    c30240 = 720 * 42 * one
    a = (s + 1 - lam) * (s - lam)
    p1 = 1 + lam
    p2 = p1 * (2 + lam)
    p3 = p2 * (3 + lam)
    p4 = p3 * (4 + lam)
    p5 = p4 * (5 + lam)
    p6 = p5 * (6 + lam)
    s1 = s
    s2 = s1 * (s + 1)
    s3 = s2 * (s + 2)
    s4 = s3 * (s + 3)
    s5 = s4 * (s + 4)

    out = [
        one / p1 - one / 2 + lam / 12 - (lam - 1) * (lam - 2) * (lam - 3) / c720
        + (lam - 2) * (lam - 3) * (lam - 4) / c30240 * (a + s * (s + 1)),

        s1 / p2 - s1 / 12 + 3 * s * lam * (lam - 1) / c720
        - s * (lam - 2) * (lam - 3) / c30240 * (3 * a + 2 * (s + 1) * (lam - 4) + 3 * (s + 1) * (s + 2)),

        s2 / p3 - 3 * s2 * lam / c720
        + s2 * (lam - 2) / c30240 * (3 * a + (lam - 3) * (lam - 4) + 6 * (s + 2) * (lam - 3) + 3 * (s + 2) * (s + 3)),

        s3 / p4 + s3 / c720
        - s3 / c30240 * (3 * a + 3 * (lam - 2) * (lam - 3) + 6 * (s + 3) * (lam - 2) + (s + 3) * (s + 4)),

        s4 / p5 + s4 / c30240 * (3 * (lam - 2) + 2 * (s + 4)),

        s5 * (one / p6 - one / c30240),
    ]
    return out[:upto + 1]


@dataclass(frozen=True)
class DPolyValue:
    index: int
    s: ExactRational
    lam: ExactRational
    value: ExactRational


def d_polynomial(index: int, s, lam) -> DPolyValue:
    """Exact D_index(s, lam).

    Args:
        index (int): 0..5
        s: rational s, anything to_rational accepts
        lam: rational lambda, anything to_rational accepts

    Raises:
        DomainError: index outside 0..5 or lambda at a pole of D_index

    Returns:
        DPolyValue: the exact value
    """
    if not isinstance(index, int) or not 0 <= index < D_COUNT:
        raise DomainError(f"index must be in 0..5, got {index!r}")
    s, lam = to_rational(s), to_rational(lam)
    _check_poles(index, lam)
    return DPolyValue(index=index, s=s, lam=lam, value=_d_components(s, lam, upto=index)[index])


def d_polynomial_float(index: int, s: float, lam: float) -> float:
    """D_index(s, lam) in floating point, from the same transcription"""
    if not 0 <= index < D_COUNT:
        raise DomainError(f"index must be in 0..5, got {index!r}")
    s, lam = float(s), float(lam)
    _check_poles(index, lam)
    return _d_components(s, lam, upto=index)[index]


def _region_worker(lo: int, hi: int, step: Fraction) -> dict:
    """scan lambda = 1 + k step for k in [lo, hi)"""
    points = 0
    violation = None
    minimum = None
    for k in range(lo, hi):
        lam = LAMBDA_RANGE[0] + k * step
        m = 1
        while True:
            s = lam + 1 + m * step
            if s > S_MAX:
                break
            points += 1
            for idx, value in enumerate(_d_components(s, lam)):
                if minimum is None or value < minimum[0]:
                    minimum = (value, lam, s, idx)
                if value < 0 and violation is None:
                    violation = (value, lam, s, idx)
            m += 1
    return {"points": points, "violation": violation, "minimum": minimum}


def verify_region(grid_step, threads: int = 1) -> CheckReport:
    """Check D_i(s, lam) >= 0 exactly on the grid lam = 1 + k step <= 2, s = lam + 1 + m step <= 5 (k, m >= 1).

    Args:
        grid_step: positive rational step, anything to_rational accepts ("1/64")
        threads (int, optional): worker processes sharing the lambda rows. Defaults to 1.

    Raises:
        DomainError: step <= 0, or step > 1 so that the grid is empty

    Returns:
        CheckReport: passed iff no D_i is negative; location is the lexicographically first violation
    """
    step = to_rational(grid_step)
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    k_max = math.floor((LAMBDA_RANGE[1] - LAMBDA_RANGE[0]) / step)
    if k_max < 1:
        raise DomainError(f"grid step {step} leaves no lambda in (1, 2]")

    scan = ShardedScan(_region_worker, threads=threads, shards_per_worker=1)
    results = scan.collect(1, k_max + 1, step)
    points = sum(r["points"] for r in results)
    violation = next((r["violation"] for r in results if r["violation"] is not None), None)
    minima = [r["minimum"] for r in results if r["minimum"] is not None]
    minimum = min(minima, key=lambda item: item[0]) if minima else None
    logger.info("region sweep at step %s: %d points, %s", step, points,
                "no violations" if violation is None else "violation found")

    decisive = violation or minimum
    details = {"points": points, "step": step}
    if minimum is not None:
        details["minimum"] = {"value": minimum[0], "lambda": minimum[1], "s": minimum[2], "index": minimum[3]}
    return CheckReport(
        name="d_polynomial_region",
        params={"step": step},
        passed=violation is None,
        lhs=None if decisive is None else decisive[0],
        rhs=Fraction(0),
        margin=None if decisive is None else decisive[0],
        location=None if violation is None else {"lambda": violation[1], "s": violation[2], "index": violation[3]},
        details=details,
    )


def integral_lower_bound(params: SeriesParams) -> float:
    """sum_{i=0}^{5} (n+1)^(-(s+i)) prod_{j=1}^{i}(s+j-1) / prod_{j=1}^{i+1}(j+lam), a lower bound for int_0^1 f"""
    lam, s, n = params.lam, params.s, params.n
    terms = []
    num = 1.0
    den = 1.0 + lam
    for i in range(D_COUNT):
        if i > 0:
            num *= s + i - 1
            den *= i + 1 + lam
        terms.append((n + 1) ** (-(s + i)) * num / den)
    return math.fsum(terms)


def _integral_zero_one(params: SeriesParams) -> float:
    lam, s, n = params.lam, params.s, params.n
    if lam <= -1:
        raise DomainError(f"int_0^1 f diverges for lambda <= -1, got {lam}")
    with mpmath.workdps(30):
        value, err = mpmath.quad(lambda t: t ** lam * (t + n) ** (-s), [0, 1], error=True)
        if err > 1e-20 + 1e-12 * abs(value):
            raise QuadratureError(f"int_0^1 f did not converge for {params}: error estimate {err}")
        return float(value)


def d_quantity(params: SeriesParams) -> float:
    """int_0^1 f - f(1)/2 + f'(1)/12 - f'''(1)/720 + g'''(1)/30240

    Raises:
        QuadratureError: int_0^1 f did not converge
    """
    terms = (
        _integral_zero_one(params),
        -0.5 * f_derivative(params, 1.0, 0),
        f_derivative(params, 1.0, 1) / 12,
        -f_derivative(params, 1.0, 3) / 720,
        g_derivative(params, 1.0, 3) / 30240,
    )
    return math.fsum(terms)


def d_bound(params: SeriesParams) -> float:
    """sum_{i=0}^{5} (n+1)^(-(s+i)) D_i(s, lam) in floating point"""
    w = 1.0 / (params.n + 1)
    lam = float(params.lam)
    _check_poles(D_COUNT - 1, lam)
    coeffs = _d_components(float(params.s), lam)
    return math.fsum(w ** (params.s + i) * c for i, c in enumerate(coeffs))
