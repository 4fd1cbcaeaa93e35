"""Schur test for ||H(alpha, beta)||_{p,p} <= B(alpha + 1/p, beta + 1/q).

With weights (i/j)^(-1/q) the column sum at j is

    sum_i K(i, j) (i/j)^(-1/q) = j^(s-lam-1) sum_i i^lam / (i+j)^s,   lam = alpha - 1/q, s = alpha + beta + 1,

so each column condition is a series inequality certified in hilbertkit.series.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from ..exceptions import DomainError
from ..kernels import HomogeneousKernel, KernelParams
from ..reporting import CheckReport
from ..series import SeriesParams, certify_below
from ..special import ConjugateExponents, best_constant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SchurReport:
    column_index: int
    certified_sum_upper: float
    target_k: float
    passed: bool
    certified_sum_lower: float = 0.0
    side: str = "column"

    @property
    def margin(self) -> float:
        return self.target_k - self.certified_sum_upper


def schur_column_check(kernel: HomogeneousKernel, exps: ConjugateExponents, j: int, budget: int = 1024) -> SchurReport:
    """Certify sum_i K(i, j) (i/j)^(-1/q) <= B(alpha + 1/p, beta + 1/q).

    Args:
        kernel (HomogeneousKernel): K of parameters (alpha, beta)
        exps (ConjugateExponents): (p, q)
        j (int): column index
        budget (int, optional): starting series budget. Defaults to 1024.

    Raises:
        DomainError: alpha <= -1/p or beta <= -1/q, or j < 1

    Returns:
        SchurReport: verdict for column j
    """
    if not isinstance(j, int) or j < 1:
        raise DomainError(f"column index must be a positive integer, got {j!r}")
    params = kernel.params
    target = best_constant(params, exps)
    lam = params.alpha - 1 / exps.q
    s = params.alpha + params.beta + 1
    series = SeriesParams(lam=lam, s=s, n=j)
    scale = float(j) ** (s - lam - 1)
    value = certify_below(series, target / scale, budget=budget)
    upper = value.upper * scale
    passed = bool(value.upper <= target / scale)
    if not passed:
        logger.info("schur column %d fails for %s: %.17g > %.17g", j, params, upper, target)
    return SchurReport(
        column_index=j,
        certified_sum_upper=upper,
        target_k=target,
        passed=passed,
        certified_sum_lower=value.lower * scale,
    )


def schur_row_check(kernel: HomogeneousKernel, exps: ConjugateExponents, i: int, budget: int = 1024) -> SchurReport:
    """Certify sum_j K(i, j) (j/i)^(-1/p) <= B(alpha + 1/p, beta + 1/q).

    This is the column check of the transposed kernel with p and q exchanged.
    """
    report = schur_column_check(kernel.transpose(), exps.swapped(), i, budget=budget)
    return SchurReport(
        column_index=report.column_index,
        certified_sum_upper=report.certified_sum_upper,
        target_k=report.target_k,
        passed=report.passed,
        certified_sum_lower=report.certified_sum_lower,
        side="row",
    )


def schur_certify(params: KernelParams, exps: ConjugateExponents, j_max: int, budget: int = 1024) -> CheckReport:
    """Run the column and row Schur conditions for indices 1..j_max.

    Args:
        params (KernelParams): (alpha, beta)
        exps (ConjugateExponents): (p, q)
        j_max (int): largest column and row index checked
        budget (int, optional): starting series budget. Defaults to 1024.

    Returns:
        CheckReport: passed iff every condition holds; location is the first failing (side, index)
    """
    if not isinstance(j_max, int) or j_max < 1:
        raise DomainError(f"j_max must be a positive integer, got {j_max!r}")
    kernel = HomogeneousKernel(params)
    first_failure = None
    tightest = None
    for side, check in (("column", schur_column_check), ("row", schur_row_check)):
        for idx in range(1, j_max + 1):
            rep = check(kernel, exps, idx, budget=budget)
            if tightest is None or rep.margin < tightest.margin:
                tightest = rep
            if not rep.passed and first_failure is None:
                first_failure = rep
    decisive = first_failure or tightest
    return CheckReport(
        name="schur_test",
        params={**params.as_dict(), "p": exps.p, "j_max": j_max},
        passed=first_failure is None,
        lhs=decisive.certified_sum_upper,
        rhs=decisive.target_k,
        margin=decisive.margin,
        location=None if first_failure is None else {"side": first_failure.side, "index": first_failure.column_index},
        details={"tightest": {"side": tightest.side, "index": tightest.column_index}},
    )
