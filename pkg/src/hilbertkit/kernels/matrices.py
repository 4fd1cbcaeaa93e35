"""Entries of the Hilbert-type matrices H(alpha, beta) and M(alpha, beta).

H(alpha, beta)_{i,j} = i^alpha j^beta / (i+j)^(alpha+beta+1)
M(alpha, beta)_{i,j} = C(i+j-2, j-1) B(i+1-alpha, j+1-beta)

Both are evaluated in the log domain.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from ..exceptions import DomainError
from ..reporting import CheckReport
from ..sharding import ShardedScan
from ..special import ConjugateExponents, beta, log_gamma_ratio

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelParams:
    """(alpha, beta) indexing H(alpha, beta) and M(alpha, beta). Consumers enforce their own region."""
    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise DomainError(f"alpha and beta must be finite, got ({self.alpha}, {self.beta})")

    def swapped(self) -> KernelParams:
        return KernelParams(alpha=self.beta, beta=self.alpha)

    def as_dict(self) -> dict[str, float]:
        return {"alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class HomogeneousKernel:
    """K(x, y) = x^alpha y^beta / (x+y)^(alpha+beta+1), nonnegative and homogeneous of degree -1."""
    params: KernelParams

    @property
    def degree_sum(self) -> float:
        """alpha + beta + 1, the exponent of (x+y)"""
        return self.params.alpha + self.params.beta + 1

    def log(self, x: float, y: float) -> float:
        if x <= 0 or y <= 0:
            raise DomainError(f"kernel arguments must be positive, got ({x}, {y})")
        return (self.params.alpha * math.log(x) + self.params.beta * math.log(y)
                - self.degree_sum * math.log(x + y))

    def __call__(self, x: float, y: float) -> float:
        return math.exp(self.log(x, y))

    def transpose(self) -> HomogeneousKernel:
        """
        Returns:
            HomogeneousKernel: K^T(x, y) = K(y, x)
        """
        return HomogeneousKernel(self.params.swapped())


def _check_index(name: str, value: int):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")


def log_h_entry(params: KernelParams, i: int, j: int) -> float:
    _check_index("i", i)
    _check_index("j", j)
    return HomogeneousKernel(params).log(i, j)


def h_entry(params: KernelParams, i: int, j: int) -> float:
    """H(alpha, beta)_{i,j}

    Args:
        params (KernelParams): (alpha, beta)
        i (int): row index, >= 1
        j (int): column index, >= 1

    Returns:
        float: i^alpha j^beta / (i+j)^(alpha+beta+1)
    """
    return math.exp(log_h_entry(params, i, j))


def log_m_entry(params: KernelParams, i: int, j: int) -> float:
    _check_index("i", i)
    _check_index("j", j)
    a = i + 1 - params.alpha
    b = j + 1 - params.beta
    if a <= 0:
        raise DomainError(f"alpha < i + 1 required, got alpha={params.alpha}, i={i}")
    if b <= 0:
        raise DomainError(f"beta < j + 1 required, got beta={params.beta}, j={j}")
    # C(i+j-2, j-1) B(a, b) = Gamma(i+j-1)/Gamma(a+b) * Gamma(a)/Gamma(i) * Gamma(b)/Gamma(j)
    return (log_gamma_ratio(i + j - 1, a + b)
            + log_gamma_ratio(a, i)
            + log_gamma_ratio(b, j))


def m_entry(params: KernelParams, i: int, j: int) -> float:
    """M(alpha, beta)_{i,j} = C(i+j-2, j-1) B(i+1-alpha, j+1-beta)

    Raises:
        DomainError: nonpositive beta argument
    """
    return math.exp(log_m_entry(params, i, j))


def bennett_bound(params: KernelParams, exps: ConjugateExponents) -> float:
    """Norm bound B(1+1/p-alpha, 1+1/q-beta) for M(alpha, beta).

    Args:
        params (KernelParams): (alpha, beta)
        exps (ConjugateExponents): (p, q)

    Raises:
        DomainError: alpha >= 1 + 1/p or beta >= 1 + 1/q

    Returns:
        float: the bound on ||M(alpha, beta)||_{p,p}
    """
    a = 1 + 1 / exps.p - params.alpha
    b = 1 + 1 / exps.q - params.beta
    if a <= 0:
        raise DomainError(f"alpha < 1 + 1/p required, got alpha={params.alpha}, p={exps.p}")
    if b <= 0:
        raise DomainError(f"beta < 1 + 1/q required, got beta={params.beta}, q={exps.q}")
    return beta(a, b)


def _comparison_worker(lo: int, hi: int, alpha: float, beta_: float, limit: int, rectangle: bool) -> dict:
    """scan rows lo..hi-1 for H(1-alpha, 1-beta) > M(alpha, beta), stopping at the first failure"""
    m_params = KernelParams(alpha, beta_)
    h_params = KernelParams(1 - alpha, 1 - beta_)
    closest = None
    for i in range(lo, hi):
        columns = range(1, limit + 1) if rectangle else (i,)
        for j in columns:
            log_h = log_h_entry(h_params, i, j)
            log_m = log_m_entry(m_params, i, j)
            gap = log_m - log_h
            if gap < 0:
                return {"failure": (i, j, log_h, log_m), "closest": (gap, i, j, log_h, log_m)}
            if closest is None or gap < closest[0]:
                closest = (gap, i, j, log_h, log_m)
    return {"failure": None, "closest": closest}


def compare_entrywise(
        params: KernelParams,
        search_limit: int,
        rectangle: bool = False,
        threads: int = 1
    ) -> CheckReport:
    """Search for an index where H(1-alpha, 1-beta) exceeds M(alpha, beta) entrywise.

    The diagonal i = j is scanned by default. With rectangle=True every (i, j) with
    1 <= i, j <= search_limit is scanned in row-major order.

    Args:
        params (KernelParams): (alpha, beta) of M
        search_limit (int): largest index scanned
        rectangle (bool, optional): scan the full square. Defaults to False.
        threads (int, optional): worker processes, 0 for auto. Defaults to 1.

    Raises:
        DomainError: M undefined at the first index (alpha >= 2 or beta >= 2)

    Returns:
        CheckReport: passed when no failure is found; location holds the first failing (i, j)
    """
    _check_index("search_limit", search_limit)
    # validates the M region once before any worker starts
    log_m_entry(params, 1, 1)

    scan = ShardedScan(_comparison_worker, threads=threads)
    results = scan.collect(1, search_limit + 1, params.alpha, params.beta, search_limit, rectangle)
    failure = None
    closest = None
    for res in results:
        if res["failure"] is not None:
            failure = res["failure"]
            break
        if res["closest"] is not None and (closest is None or res["closest"][0] < closest[0]):
            closest = res["closest"]

    report_params = {**params.as_dict(), "limit": search_limit, "rectangle": rectangle}
    if failure is not None:
        i, j, log_h, log_m = failure
        logger.info("entrywise comparison fails at (%d, %d) for %s", i, j, params)
        return CheckReport(
            name="compare_entrywise",
            params=report_params,
            passed=False,
            lhs=math.exp(log_h),
            rhs=math.exp(log_m),
            margin=math.exp(log_m) - math.exp(log_h),
            location={"i": i, "j": j},
            details={"log_margin": log_m - log_h},
        )
    gap, i, j, log_h, log_m = closest
    logger.info("no entrywise failure for %s up to %d", params, search_limit)
    return CheckReport(
        name="compare_entrywise",
        params=report_params,
        passed=True,
        lhs=math.exp(log_h),
        rhs=math.exp(log_m),
        margin=math.exp(log_m) - math.exp(log_h),
        details={"log_margin": gap, "tightest": {"i": i, "j": j}},
    )
