"""f(x) = x^-2 ((1+x)^(alpha+2) + (1-x)^(alpha+2) - 2) on (0, 1] and the convexity argument for f' >= 0.

    (x^2/2) f'(x) = (g(x) + g(0))/2 - (1/x) int_0^x g,   g(x) = (alpha+2)((1+x)^(alpha+1) - (1-x)^(alpha+1))
"""
import logging

import mpmath
import numpy as np

from ..exceptions import DomainError
from ..reporting import CheckReport

logger = logging.getLogger(__name__)

DPS = 40
SERIES_BELOW = 1e-4


def _check_x(x: float):
    if not 0 < x <= 1:
        raise DomainError(f"x must lie in (0, 1], got {x}")


def _f_aux_mp(alpha, x):
    m = mpmath.mpf(alpha) + 2
    x = mpmath.mpf(x)
    if x < SERIES_BELOW:
        return m * (m - 1) + 2 * mpmath.binomial(m, 4) * x ** 2 + 2 * mpmath.binomial(m, 6) * x ** 4
    return ((1 + x) ** m + (1 - x) ** m - 2) / x ** 2


def _f_aux_derivative_mp(alpha, x):
    m = mpmath.mpf(alpha) + 2
    x = mpmath.mpf(x)
    if x < SERIES_BELOW:
        return 4 * mpmath.binomial(m, 4) * x + 8 * mpmath.binomial(m, 6) * x ** 3
    numerator = (1 + x) ** m + (1 - x) ** m - 2
    slope = m * ((1 + x) ** (m - 1) - (1 - x) ** (m - 1))
    return slope / x ** 2 - 2 * numerator / x ** 3


def _g_aux_mp(alpha, x):
    m = mpmath.mpf(alpha) + 2
    x = mpmath.mpf(x)
    return m * ((1 + x) ** (m - 1) - (1 - x) ** (m - 1))


def f_aux(alpha: float, x: float) -> float:
    """f(x) for 0 < x <= 1; below x = 1e-4 the even series (a+2)(a+1) + 2C(a+2,4)x^2 + 2C(a+2,6)x^4

    Raises:
        DomainError: x outside (0, 1]
    """
    _check_x(x)
    with mpmath.workdps(DPS):
        return float(_f_aux_mp(alpha, x))


def f_aux_derivative(alpha: float, x: float) -> float:
    """f'(x)

    Raises:
        DomainError: x outside (0, 1]
    """
    _check_x(x)
    with mpmath.workdps(DPS):
        return float(_f_aux_derivative_mp(alpha, x))


def g_aux(alpha: float, x: float) -> float:
    """g(x) = (alpha+2)((1+x)^(alpha+1) - (1-x)^(alpha+1)) for 0 <= x <= 1"""
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    with mpmath.workdps(DPS):
        return float(_g_aux_mp(alpha, x))


def verify_f_aux_monotone(alpha: float, n_max: int) -> CheckReport:
    """f(1/(n+2)) <= f(1/(n+1)) for n = 0..n_max-1"""
    if n_max < 1:
        raise DomainError(f"n_max must be a positive integer, got {n_max}")
    tightest = None
    with mpmath.workdps(DPS):
        upper = _f_aux_mp(alpha, mpmath.mpf(1))
        for n in range(n_max):
            lower = _f_aux_mp(alpha, mpmath.mpf(1) / (n + 2))
            margin = upper - lower
            if tightest is None or margin < tightest[0]:
                tightest = (margin, n, lower, upper)
            if margin < 0:
                return CheckReport(
                    name="f_aux_monotone",
                    params={"alpha": alpha, "n_max": n_max},
                    passed=False,
                    lhs=float(lower),
                    rhs=float(upper),
                    margin=float(margin),
                    location={"n": n},
                )
            upper = lower
    margin, n, lower, upper = tightest
    return CheckReport(
        name="f_aux_monotone",
        params={"alpha": alpha, "n_max": n_max},
        passed=True,
        lhs=float(lower),
        rhs=float(upper),
        margin=float(margin),
        details={"tightest_n": n},
    )


def hermite_hadamard_check(alpha: float, points: list[float] | None = None, tol: float = 1e-12) -> CheckReport:
    """Check the identity (x^2/2) f'(x) = g(x)/2 - (1/x) int_0^x g and the sign of its right side.

    The integral is computed by quadrature, independently of the closed form of f.

    Args:
        alpha (float): exponent
        points (list[float] | None, optional): sample points in (0, 1]. Defaults to 50 points in [0.02, 1].
        tol (float, optional): allowed identity residual, relative to max(1, |g(x)|). Defaults to 1e-12.

    Returns:
        CheckReport: passes iff the identity holds and the right side is >= -tol at every point
    """
    points = np.linspace(0.02, 1.0, 50).tolist() if points is None else [float(x) for x in points]
    worst = None
    with mpmath.workdps(DPS):
        for x in points:
            _check_x(x)
            xm = mpmath.mpf(x)
            lhs = xm ** 2 / 2 * _f_aux_derivative_mp(alpha, xm)
            g_x = _g_aux_mp(alpha, xm)
            rhs = g_x / 2 - mpmath.quad(lambda t: _g_aux_mp(alpha, t), [0, xm]) / xm
            scale = max(mpmath.mpf(1), abs(g_x))
            residual = abs(lhs - rhs) / scale
            ok = residual <= tol and rhs >= -tol
            if worst is None or rhs < worst[2]:
                worst = (x, lhs, rhs, residual)
            if not ok:
                return CheckReport(
                    name="hermite_hadamard",
                    params={"alpha": alpha},
                    passed=False,
                    lhs=float(lhs),
                    rhs=float(rhs),
                    margin=float(rhs),
                    location={"x": x},
                    details={"residual": float(residual)},
                )
    x, lhs, rhs, residual = worst
    return CheckReport(
        name="hermite_hadamard",
        params={"alpha": alpha},
        passed=True,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(rhs),
        details={"points": len(points), "smallest_at": x},
    )
