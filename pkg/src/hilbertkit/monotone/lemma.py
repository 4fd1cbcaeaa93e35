import logging
from fractions import Fraction
from typing import Sequence

from ..exceptions import DomainError
from ..reporting import CheckReport
from .sequence import _integer_alpha

logger = logging.getLogger(__name__)


def _exact(values: Sequence, name: str) -> list[Fraction]:
    try:
        out = [v if isinstance(v, Fraction) else Fraction(v) for v in values]
    except (TypeError, ValueError):
        raise DomainError(f"{name} must hold finite real numbers")
    if len(out) < 3:
        raise DomainError(f"{name} needs at least 3 terms, got {len(out)}")
    if any(v <= 0 for v in out):
        raise DomainError(f"{name} must be positive")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise DomainError(f"{name} must be strictly increasing")
    return out


def ratio_lemma_check(B: Sequence, C: Sequence) -> CheckReport:
    """Falsification harness for the ratio propagation lemma.

    Hypothesis: B_1/B_2 <= C_1/C_2 and
    (B_{n+1}-B_n)/(B_{n+2}-B_{n+1}) <= (C_{n+1}-C_n)/(C_{n+2}-C_{n+1}) for every available n.
    Conclusion: B_n/B_{n+1} <= C_n/C_{n+1} for every available n.
    Values are compared exactly; floats enter with their binary value.

    Args:
        B (Sequence): strictly increasing positive terms B_1, B_2, ...
        C (Sequence): strictly increasing positive terms, same length as B

    Raises:
        DomainError: fewer than 3 terms, a nonpositive term, a non-increasing sequence or unequal lengths

    Returns:
        CheckReport: fails only when the hypothesis holds and the conclusion does not
    """
    b, c = _exact(B, "B"), _exact(C, "C")
    if len(b) != len(c):
        raise DomainError(f"B and C must have the same length, got {len(b)} and {len(c)}")

    hypothesis_failure = None
    if b[0] / b[1] > c[0] / c[1]:
        hypothesis_failure = 0
    else:
        for n in range(len(b) - 2):
            lhs = (b[n + 1] - b[n]) / (b[n + 2] - b[n + 1])
            rhs = (c[n + 1] - c[n]) / (c[n + 2] - c[n + 1])
            if lhs > rhs:
                hypothesis_failure = n + 1
                break

    conclusion_failure = None
    tightest = None
    for n in range(len(b) - 1):
        lhs, rhs = b[n] / b[n + 1], c[n] / c[n + 1]
        if tightest is None or rhs - lhs < tightest[0]:
            tightest = (rhs - lhs, n + 1, lhs, rhs)
        if lhs > rhs and conclusion_failure is None:
            conclusion_failure = (rhs - lhs, n + 1, lhs, rhs)

    hypothesis_holds = hypothesis_failure is None
    falsified = hypothesis_holds and conclusion_failure is not None
    if falsified:
        logger.warning("lemma conclusion fails at n=%d although the hypothesis holds", conclusion_failure[1])
    margin, n, lhs, rhs = conclusion_failure or tightest
    return CheckReport(
        name="ratio_lemma",
        params={"length": len(b)},
        passed=not falsified,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        location={"n": n} if falsified else None,
        details={
            "hypothesis_holds": hypothesis_holds,
            "hypothesis_failure_n": hypothesis_failure,
            "conclusion_holds": conclusion_failure is None,
        },
    )


def power_sum_sequences(alpha: float, length: int) -> tuple[list, list]:
    """B_n = sum_{r<=n} r^alpha and C_n = (n+1)^(alpha+2) - n^(alpha+2) for n = 1..length"""
    k = _integer_alpha(alpha)
    B, C = [], []
    acc = 0
    for n in range(1, length + 1):
        if k is not None:
            acc += n ** k
            C.append((n + 1) ** (k + 2) - n ** (k + 2))
        else:
            acc += n ** alpha
            C.append((n + 1) ** (alpha + 2) - n ** (alpha + 2))
        B.append(acc)
    return B, C
