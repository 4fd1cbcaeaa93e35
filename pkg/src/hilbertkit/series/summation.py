"""Certified enclosures of sum_{m>=1} m^lam / (m+n)^s.

A partial sum over m <= M is added exactly with math.fsum. The tail beyond M is
bracketed by integrals of f(t) = t^lam / (t+n)^s once M has passed the points where
f stops increasing and stops being concave.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ..exceptions import CertificationError, DivergenceError, DomainError
from ..reporting import CheckReport
from ..special import beta

logger = logging.getLogger(__name__)

CHUNK = 1 << 20
MAX_BUDGET = 1 << 22
ROUNDING_PAD = 8 * np.finfo(np.float64).eps


class TailMethod(enum.Enum):
    INTEGRAL_COMPARISON = "integral-comparison"
    MIDPOINT_CONVEX = "midpoint-convex"
    NONE = "none"


@dataclass(frozen=True)
class SeriesParams:
    """(lam, s, n) of the series sum_{m>=1} m^lam / (m+n)^s, which converges iff s > lam + 1."""
    lam: float
    s: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.lam) and math.isfinite(self.s)):
            raise DomainError(f"lambda and s must be finite, got ({self.lam}, {self.s})")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if self.s <= self.lam + 1:
            raise DivergenceError(f"s > lambda + 1 required, got s={self.s}, lambda={self.lam}")

    def as_dict(self) -> dict[str, float]:
        return {"lambda": self.lam, "s": self.s, "n": self.n}


@dataclass(frozen=True)
class CertifiedValue:
    """Enclosure [lower, upper] of a series value."""
    lower: float
    upper: float
    terms_summed: int
    tail_method: TailMethod

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise CertificationError(f"enclosure is not finite: [{self.lower}, {self.upper}]")
        if self.lower > self.upper:
            raise CertificationError(f"empty enclosure [{self.lower}, {self.upper}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def decreasing_threshold(params: SeriesParams) -> float:
    """f is decreasing for t > lam n / (s - lam)"""
    return max(0.0, params.lam * params.n / (params.s - params.lam))


def convexity_threshold(params: SeriesParams) -> float:
    """f is convex for t beyond the larger zero of f''. f is convex on (0, inf) when lam <= 0."""
    lam, s, n = params.lam, params.s, params.n
    if lam <= 0:
        return 0.0
    a = (s + 1 - lam) * (s - lam)
    root = n * (s * (s + 1 - lam) + math.sqrt(lam * s * (s + 1 - lam))) / a
    return max(0.0, root - n)


def tail_integral(params: SeriesParams, start: float) -> float:
    """int_start^inf t^lam (t+n)^(-s) dt = n^(1+lam-s) B_x(s-lam-1, lam+1), x = n/(start+n)

    Raises:
        DomainError: lam <= -1 (the incomplete beta form needs lam > -1)
    """
    lam, s, n = params.lam, params.s, params.n
    if lam <= -1:
        raise DomainError(f"lambda > -1 required for the incomplete beta tail, got {lam}")
    with mpmath.workdps(30):
        x = mpmath.mpf(n) / (mpmath.mpf(start) + n)
        value = mpmath.power(n, 1 + mpmath.mpf(lam) - s) * mpmath.betainc(s - lam - 1, lam + 1, 0, x)
        return float(value)


def partial_sum(params: SeriesParams, terms: int) -> float:
    """sum_{m=1}^{terms} m^lam / (m+n)^s, added exactly after rounding each term"""
    parts = []
    for lo in range(1, terms + 1, CHUNK):
        m = np.arange(lo, min(lo + CHUNK, terms + 1), dtype=np.float64)
        parts.extend((m ** params.lam / (m + params.n) ** params.s).tolist())
    return math.fsum(parts)


def certified_sum(
        params: SeriesParams,
        budget: int = 1024,
        tail_method: TailMethod = TailMethod.MIDPOINT_CONVEX
    ) -> CertifiedValue:
    """Enclose sum_{m>=1} m^lam / (m+n)^s.

    Terms m = 1..M are summed, M = max(budget, decreasing threshold, convexity threshold).
    MIDPOINT_CONVEX brackets the tail by int_{M+1}^inf f + f(M+1)/2 below and
    int_{M+1/2}^inf f above. INTEGRAL_COMPARISON keeps lower = partial sum and adds the
    majorant M^(lam+1-s)/(s-lam-1), times (1+n/M)^(-s) when s < 0. It is used automatically when lam <= -1.
    NONE returns the bare partial sum and certifies nothing.

    Args:
        params (SeriesParams): (lam, s, n)
        budget (int, optional): minimum number of summed terms. Defaults to 1024.
        tail_method (TailMethod, optional): tail bracket. Defaults to TailMethod.MIDPOINT_CONVEX.

    Raises:
        DomainError: budget < 1

    Returns:
        CertifiedValue: the enclosure
    """
    if not isinstance(budget, int) or budget < 1:
        raise DomainError(f"budget must be a positive integer, got {budget!r}")
    lam, s, n = params.lam, params.s, params.n
    if tail_method is TailMethod.MIDPOINT_CONVEX and lam <= -1:
        tail_method = TailMethod.INTEGRAL_COMPARISON

    threshold = decreasing_threshold(params)
    if tail_method is TailMethod.MIDPOINT_CONVEX:
        threshold = max(threshold, convexity_threshold(params))
    terms = max(budget, math.ceil(threshold))
    partial = partial_sum(params, terms)

    if tail_method is TailMethod.NONE:
        return CertifiedValue(partial, partial, terms, tail_method)

    if tail_method is TailMethod.MIDPOINT_CONVEX:
        next_term = (terms + 1) ** lam / (terms + 1 + n) ** s
        tail_low = tail_integral(params, terms + 1) + 0.5 * next_term
        tail_high = tail_integral(params, terms + 0.5)
    else:
        tail_low = 0.0
        # (m+n)^-s <= m^-s (1 + n/M)^-s for m > M covers s < 0 as well
        tail_high = (1 + n / terms) ** max(0.0, -s) * terms ** (lam + 1 - s) / (s - lam - 1)

    pad = ROUNDING_PAD * (partial + tail_high)
    lower = max(0.0, partial + tail_low - pad)
    upper = partial + tail_high + pad
    logger.debug("certified sum %s: M=%d [%.17g, %.17g] via %s", params, terms, lower, upper, tail_method.value)
    return CertifiedValue(lower, upper, terms, tail_method)


def certify_below(
        params: SeriesParams,
        target: float,
        budget: int = 1024,
        max_budget: int = MAX_BUDGET,
        tail_method: TailMethod = TailMethod.MIDPOINT_CONVEX,
        strict: bool = False
    ) -> CertifiedValue:
    """Refine certified_sum until it decides whether the series is at most target.

    The budget grows by a factor of 4 until upper <= target or lower > target.

    Args:
        params (SeriesParams): (lam, s, n)
        target (float): bound to decide
        budget (int, optional): starting budget. Defaults to 1024.
        max_budget (int, optional): cap on the budget. Defaults to 2**22.
        tail_method (TailMethod, optional): tail bracket. Defaults to TailMethod.MIDPOINT_CONVEX.
        strict (bool, optional): raise instead of returning an undecided enclosure. Defaults to False.

    Raises:
        CertificationError: strict and the cap was reached undecided

    Returns:
        CertifiedValue: the last enclosure computed
    """
    while True:
        value = certified_sum(params, budget, tail_method)
        if value.upper <= target or value.lower > target:
            return value
        if budget >= max_budget:
            msg = f"undecided at budget {budget}: [{value.lower!r}, {value.upper!r}] vs {target!r}"
            if strict:
                raise CertificationError(msg)
            logger.warning("%s for %s", msg, params)
            return value
        budget *= 4
        logger.debug("escalating budget to %d for %s", budget, params)


def _decision_report(name: str, report_params: dict, value: CertifiedValue, rhs: float) -> CheckReport:
    passed = bool(value.upper <= rhs)
    return CheckReport(
        name=name,
        params=report_params,
        passed=passed,
        lhs=value.upper,
        rhs=rhs,
        margin=rhs - value.upper,
        location=None if passed else dict(report_params),
        details={
            "lower": value.lower,
            "upper": value.upper,
            "terms": value.terms_summed,
            "tail_method": value.tail_method.value,
            "decided": bool(passed or value.lower > rhs),
        },
    )


def verify_beta_series_bound(params: SeriesParams, budget: int = 1024) -> CheckReport:
    """sum_{m>=1} m^lam/(m+n)^s <= B(lam+1, s-lam-1) n^(1+lam-s)

    Raises:
        DomainError: lam <= -1
    """
    if params.lam <= -1:
        raise DomainError(f"lambda > -1 required, got {params.lam}")
    rhs = beta(params.lam + 1, params.s - params.lam - 1) * params.n ** (1 + params.lam - params.s)
    value = certify_below(params, rhs, budget=budget)
    report = _decision_report("beta_series_bound", params.as_dict(), value, rhs)
    logger.info("beta-bound series inequality at %s: %s", params, "pass" if report.passed else "FAIL")
    return report


def verify_linear_series_bound(s: float, n: int, budget: int = 1024) -> CheckReport:
    """sum_{m>=1} m/(n+m)^s <= n^(2-s) / ((s-2)(s-1))

    Args:
        s (float): decay exponent, > 2
        n (int): shift
        budget (int, optional): starting budget. Defaults to 1024.

    Raises:
        DomainError: s <= 2

    Returns:
        CheckReport: verdict with the certified upper bound as lhs
    """
    if not s > 2:
        raise DomainError(f"s > 2 required, got s={s}")
    params = SeriesParams(lam=1.0, s=s, n=n)
    rhs = n ** (2 - s) / ((s - 2) * (s - 1))
    value = certify_below(params, rhs, budget=budget)
    report = _decision_report("linear_series_bound", {"s": s, "n": n}, value, rhs)
    logger.info("lambda = 1 series inequality at s=%s n=%d: %s", s, n, "pass" if report.passed else "FAIL")
    return report
