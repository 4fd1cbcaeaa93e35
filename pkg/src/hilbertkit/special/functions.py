"""Log-gamma, beta and binomial coefficients in the log domain.

log_gamma uses the Stirling series with fixed Bernoulli coefficients on [10, inf)
and the recurrence Gamma(x+1) = x Gamma(x) to move smaller arguments into that range.
"""
from __future__ import annotations

import math
from typing import TYPE_CHECKING

from ..exceptions import DomainError
from .exponents import ConjugateExponents

if TYPE_CHECKING:
    from ..kernels import KernelParams

_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_STIRLING_MIN = 10.0

# B_2k / (2k (2k-1)) for k = 1..7; truncation error below 3e-17 for x >= 10
_STIRLING_COEFFS = (
    1 / 12,
    -1 / 360,
    1 / 1260,
    -1 / 1680,
    1 / 1188,
    -691 / 360360,
    1 / 156,
)


def _stirling_correction(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    acc = 0.0
    for c in reversed(_STIRLING_COEFFS):
        acc = acc * inv2 + c
    return acc * inv


def _check_positive(name: str, x: float):
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"{name} must be a finite positive real, got {x}")


def _shift_up(x: float) -> tuple[float, float]:
    """move x to the Stirling range.

    Returns:
        tuple[float, float]: shifted argument, log of the product x(x+1)...(x+k-1)
    """
    if x >= _STIRLING_MIN:
        return x, 0.0
    prod = 1.0
    while x < _STIRLING_MIN:
        prod *= x
        x += 1.0
    return x, math.log(prod)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for real x > 0.

    Args:
        x (float): argument

    Raises:
        DomainError: x <= 0

    Returns:
        float: ln Gamma(x)
    """
    x = float(x)
    _check_positive("x", x)
    z, log_prod = _shift_up(x)
    return (z - 0.5) * math.log(z) - z + _HALF_LOG_2PI + _stirling_correction(z) - log_prod


def log_gamma_ratio(x: float, y: float) -> float:
    """ln Gamma(x) - ln Gamma(y), accurate when x and y are large and close.

    Args:
        x (float): numerator argument
        y (float): denominator argument

    Raises:
        DomainError: nonpositive argument

    Returns:
        float: ln(Gamma(x) / Gamma(y))
    """
    x, y = float(x), float(y)
    _check_positive("x", x)
    _check_positive("y", y)
    if x < _STIRLING_MIN or y < _STIRLING_MIN:
        return log_gamma(x) - log_gamma(y)
    d = x - y
    # (x-1/2)ln x - (y-1/2)ln y rewritten without subtracting two large logs
    main = d * math.log(x) + (y - 0.5) * math.log1p(d / y) - d
    return main + _stirling_correction(x) - _stirling_correction(y)


def log_beta(x: float, y: float) -> float:
    """ln B(x, y).

    Raises:
        DomainError: nonpositive argument
    """
    x, y = float(x), float(y)
    _check_positive("x", x)
    _check_positive("y", y)
    small, large = min(x, y), max(x, y)
    return log_gamma(small) + log_gamma_ratio(large, x + y)


def beta(x: float, y: float) -> float:
    """Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), computed in the log domain.

    Args:
        x (float): first argument, > 0
        y (float): second argument, > 0

    Raises:
        DomainError: nonpositive argument

    Returns:
        float: B(x, y)
    """
    return math.exp(log_beta(x, y))


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k) through log-gamma.

    Args:
        n (int): nonnegative integer
        k (int): integer with 0 <= k <= n

    Raises:
        DomainError: k > n or negative arguments

    Returns:
        float: ln C(n, k)
    """
    if not isinstance(n, int) or not isinstance(k, int):
        raise DomainError("n and k must be integers")
    if n < 0 or k < 0:
        raise DomainError(f"n and k must be nonnegative, got n={n}, k={k}")
    if k > n:
        raise DomainError(f"k must not exceed n, got n={n}, k={k}")
    if k == 0 or k == n:
        return 0.0
    k = min(k, n - k)
    return log_gamma_ratio(n + 1, n - k + 1) - log_gamma(k + 1)


def best_constant(params: KernelParams, exps: ConjugateExponents) -> float:
    """B(alpha + 1/p, beta + 1/q), the lp operator norm of H(alpha, beta).

    Args:
        params (KernelParams): (alpha, beta)
        exps (ConjugateExponents): (p, q)

    Raises:
        DomainError: alpha <= -1/p or beta <= -1/q

    Returns:
        float: the best constant
    """
    a = params.alpha + 1 / exps.p
    b = params.beta + 1 / exps.q
    if a <= 0:
        raise DomainError(f"alpha > -1/p required, got alpha={params.alpha}, p={exps.p}")
    if b <= 0:
        raise DomainError(f"beta > -1/q required, got beta={params.beta}, q={exps.q}")
    return beta(a, b)
