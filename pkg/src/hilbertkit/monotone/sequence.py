"""The sequence a_n = n^-(alpha+2) sum_{r=1}^{n-1} r^alpha (n-r) and the inequalities behind its monotonicity.

Integer alpha runs in exact integer arithmetic. Real alpha runs in mpmath at DPS digits.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..exceptions import DomainError
from ..reporting import CheckReport

logger = logging.getLogger(__name__)

DPS = 50
SLACK = 1e-14
INTEGRAL_FORM_FROM = 100_000


@dataclass(frozen=True)
class SequenceSpec:
    """alpha and the last index checked. alpha <= 1 is only accepted as exploratory."""
    alpha: float
    n_max: int
    exploratory: bool = False

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha}")
        if not isinstance(self.n_max, int) or self.n_max < 1:
            raise DomainError(f"n_max must be a positive integer, got {self.n_max!r}")
        if self.alpha <= 1 and not self.exploratory:
            raise DomainError(f"alpha > 1 required (use exploratory mode below), got {self.alpha}")

    @property
    def asserted(self) -> bool:
        return self.alpha > 1


def _integer_alpha(alpha: float) -> int | None:
    if isinstance(alpha, int) and not isinstance(alpha, bool):
        return alpha if alpha >= 0 else None
    if float(alpha).is_integer() and alpha >= 0:
        return int(alpha)
    return None


def _check_alpha(alpha: float, exploratory: bool):
    if alpha <= 1 and not exploratory:
        raise DomainError(f"alpha > 1 required, got {alpha}")


def power_sums(alpha: float, n_max: int) -> list:
    """S(n) = sum_{r=1}^{n} r^alpha for n = 0..n_max, exact ints for integer alpha, mpf otherwise"""
    k = _integer_alpha(alpha)
    out = [0]
    if k is not None:
        acc = 0
        for r in range(1, n_max + 1):
            acc += r ** k
            out.append(acc)
        return out
    with mpmath.workdps(DPS):
        acc = mpmath.mpf(0)
        a = mpmath.mpf(alpha)
        for r in range(1, n_max + 1):
            acc += mpmath.power(r, a)
            out.append(acc)
    return out


def seq_a_exact(alpha: int, n: int) -> Fraction:
    """a_n as a Fraction for a nonnegative integer alpha"""
    k = _integer_alpha(alpha)
    if k is None:
        raise DomainError(f"exact evaluation needs a nonnegative integer alpha, got {alpha}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    total = sum(r ** k * (n - r) for r in range(1, n))
    return Fraction(total, n ** (k + 2))


def seq_a(alpha: float, n: int) -> float:
    """a_n = n^-(alpha+2) sum_{r=1}^{n-1} r^alpha (n-r); 0 at n = 1.

    Args:
        alpha (float): exponent
        n (int): index, >= 1

    Raises:
        DomainError: n < 1

    Returns:
        float: a_n
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if _integer_alpha(alpha) is not None:
        return float(seq_a_exact(alpha, n))
    with mpmath.workdps(DPS):
        a = mpmath.mpf(alpha)
        total = mpmath.fsum(mpmath.power(r, a) * (n - r) for r in range(1, n))
        return float(total / mpmath.power(n, a + 2))


def verify_increasing(spec: SequenceSpec) -> CheckReport:
    """Check a_{n+1} >= a_n for n = 1..n_max.

    Uses sum_{r<n} r^alpha (n-r) = n S_alpha(n-1) - S_{alpha+1}(n-1) with running power sums.
    Real alpha comparisons allow a slack of 1e-14 max(a_n, a_{n+1}).
    """
    alpha, n_max = spec.alpha, spec.n_max
    s0 = power_sums(alpha, n_max)
    s1 = power_sums(alpha + 1, n_max)
    k = _integer_alpha(alpha)

    def numerator(n):
        return n * s0[n - 1] - s1[n - 1]

    violation = None
    tightest = None
    with mpmath.workdps(DPS):
        for n in range(1, n_max + 1):
            if k is not None:
                t_n, t_next = numerator(n), numerator(n + 1)
                # a_{n+1} >= a_n  <=>  T(n+1) n^(k+2) >= T(n) (n+1)^(k+2)
                ok = t_next * n ** (k + 2) >= t_n * (n + 1) ** (k + 2)
                a_n = Fraction(t_n, n ** (k + 2))
                a_next = Fraction(t_next, (n + 1) ** (k + 2))
                gap = a_next - a_n
            else:
                a_n = numerator(n) / mpmath.power(n, alpha + 2)
                a_next = numerator(n + 1) / mpmath.power(n + 1, alpha + 2)
                gap = a_next - a_n
                ok = gap >= -SLACK * max(abs(a_n), abs(a_next))
            if tightest is None or gap < tightest[0]:
                tightest = (gap, n, a_n, a_next)
            if not ok:
                violation = (gap, n, a_n, a_next)
                break

    gap, n, a_n, a_next = violation or tightest
    passed = violation is None
    logger.info("sequence a_n for alpha=%s up to %d: %s", alpha, n_max, "increasing" if passed else f"drops at n={n}")
    return CheckReport(
        name="sequence_increasing",
        params={"alpha": alpha, "n_max": n_max, "exploratory": spec.exploratory},
        passed=passed,
        lhs=float(a_n),
        rhs=float(a_next),
        margin=float(gap),
        location=None if passed else {"n": n},
        details={"exact": k is not None},
        asserted=spec.asserted,
    )


def _ratio_sides(alpha: float, n: int, s_n, s_next):
    """both sides of S(n)/S(n+1) <= ((n+1)^(a+2) - n^(a+2)) / ((n+2)^(a+2) - (n+1)^(a+2))"""
    k = _integer_alpha(alpha)
    if k is not None:
        m = k + 2
        lhs = Fraction(s_n, s_next)
        rhs = Fraction((n + 1) ** m - n ** m, (n + 2) ** m - (n + 1) ** m)
        return lhs, rhs
    m = mpmath.mpf(alpha) + 2
    lhs = s_n / s_next
    rhs = (mpmath.power(n + 1, m) - mpmath.power(n, m)) / (mpmath.power(n + 2, m) - mpmath.power(n + 1, m))
    return lhs, rhs


def _range_report(name: str, params: dict, rows, asserted: bool) -> CheckReport:
    """rows yields (n, lhs, rhs); passed iff lhs <= rhs everywhere"""
    tightest = None
    for n, lhs, rhs in rows:
        margin = rhs - lhs
        if tightest is None or margin < tightest[0]:
            tightest = (margin, n, lhs, rhs)
        if margin < 0:
            logger.info("%s fails at n=%d for %s", name, n, params)
            return CheckReport(
                name=name, params=params, passed=False,
                lhs=float(lhs), rhs=float(rhs), margin=float(margin),
                location={"n": n}, asserted=asserted,
            )
    if tightest is None:
        return CheckReport(name=name, params=params, passed=True, asserted=asserted)
    margin, n, lhs, rhs = tightest
    return CheckReport(
        name=name, params=params, passed=True,
        lhs=float(lhs), rhs=float(rhs), margin=float(margin),
        details={"tightest_n": n}, asserted=asserted,
    )


def verify_power_sum_ratio(alpha: float, n: int, exploratory: bool = False) -> CheckReport:
    """S(n)/S(n+1) <= ((n+1)^(alpha+2) - n^(alpha+2)) / ((n+2)^(alpha+2) - (n+1)^(alpha+2)), S(n) = sum_{r<=n} r^alpha

    Raises:
        DomainError: alpha <= 1 outside exploratory mode, or n < 1
    """
    _check_alpha(alpha, exploratory)
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    sums = power_sums(alpha, n + 1)
    with mpmath.workdps(DPS):
        lhs, rhs = _ratio_sides(alpha, n, sums[n], sums[n + 1])
        return _range_report("power_sum_ratio", {"alpha": alpha, "n": n}, [(n, lhs, rhs)], alpha > 1)


def verify_power_sum_ratio_range(alpha: float, n_max: int, exploratory: bool = False) -> CheckReport:
    """verify_power_sum_ratio for n = 1..n_max with one pass of running power sums"""
    _check_alpha(alpha, exploratory)
    sums = power_sums(alpha, n_max + 1)
    with mpmath.workdps(DPS):
        rows = ((n, *_ratio_sides(alpha, n, sums[n], sums[n + 1])) for n in range(1, n_max + 1))
        return _range_report("power_sum_ratio", {"alpha": alpha, "n_max": n_max}, rows, alpha > 1)


def second_difference(alpha: float, n: int):
    """(n+2)^(alpha+2) - 2(n+1)^(alpha+2) + n^(alpha+2).

    Exact int for integer alpha. Otherwise an mpf, with working precision raised by the
    digits the subtraction cancels, or from int_0^2 (1-|w-1|) g''(n+w) dw once n >= 1e5.

    Raises:
        DomainError: n < 0
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    k = _integer_alpha(alpha)
    if k is not None:
        m = k + 2
        return (n + 2) ** m - 2 * (n + 1) ** m + n ** m
    a = mpmath.mpf(alpha)
    if n >= INTEGRAL_FORM_FROM:
        with mpmath.workdps(DPS):
            g2 = (a + 2) * (a + 1)
            return mpmath.quad(lambda w: (1 - abs(w - 1)) * g2 * mpmath.power(n + w, a), [0, 1, 2])
    lost = 2 * int(math.log10(n + 3)) + 2
    with mpmath.workdps(DPS + lost):
        m = a + 2
        value = mpmath.power(n + 2, m) - 2 * mpmath.power(n + 1, m) + mpmath.power(n, m)
    return +value


def _second_difference_sides(alpha: float, n: int):
    k = _integer_alpha(alpha)
    if k is not None:
        return Fraction((n + 1) ** k, (n + 2) ** k), Fraction(second_difference(alpha, n), second_difference(alpha, n + 1))
    a = mpmath.mpf(alpha)
    lhs = mpmath.power(mpmath.mpf(n + 1) / (n + 2), a)
    return lhs, second_difference(alpha, n) / second_difference(alpha, n + 1)


def verify_second_difference(alpha: float, n: int, exploratory: bool = False) -> CheckReport:
    """((n+1)/(n+2))^alpha <= second_difference(n) / second_difference(n+1)

    Raises:
        DomainError: alpha <= 1 outside exploratory mode, or n < 0
    """
    _check_alpha(alpha, exploratory)
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    with mpmath.workdps(DPS):
        lhs, rhs = _second_difference_sides(alpha, n)
        return _range_report("second_difference", {"alpha": alpha, "n": n}, [(n, lhs, rhs)], alpha > 1)


def verify_second_difference_range(alpha: float, n_max: int, exploratory: bool = False) -> CheckReport:
    """verify_second_difference for n = 0..n_max"""
    _check_alpha(alpha, exploratory)
    with mpmath.workdps(DPS):
        rows = ((n, *_second_difference_sides(alpha, n)) for n in range(0, n_max + 1))
        return _range_report("second_difference", {"alpha": alpha, "n_max": n_max}, rows, alpha > 1)


def verify_partial_sum_form(alpha: float, n_max: int) -> CheckReport:
    """sum_{r=1}^{n-1} r^alpha (n-r) equals sum_{r=1}^{n} r^alpha (n-r) for n = 1..n_max"""
    k = _integer_alpha(alpha)
    first_difference = None
    with mpmath.workdps(DPS):
        a = mpmath.mpf(alpha)
        for n in range(1, n_max + 1):
            if k is not None:
                short = sum(r ** k * (n - r) for r in range(1, n))
                full = short + n ** k * (n - n)
            else:
                short = mpmath.fsum(mpmath.power(r, a) * (n - r) for r in range(1, n))
                full = mpmath.fsum(mpmath.power(r, a) * (n - r) for r in range(1, n + 1))
            if short != full:
                first_difference = (n, short, full)
                break
    if first_difference is None:
        return CheckReport(name="partial_sum_form", params={"alpha": alpha, "n_max": n_max}, passed=True, margin=0.0)
    n, short, full = first_difference
    return CheckReport(
        name="partial_sum_form",
        params={"alpha": alpha, "n_max": n_max},
        passed=False,
        lhs=float(short),
        rhs=float(full),
        margin=float(full - short),
        location={"n": n},
    )
