"""Derivatives of f(t) = t^lam / (t+n)^s and of the two parts f'' = g + h.

    g(t) = A t^(lam-2) (t+n)^(-s) + C t^(lam-2) (t+n)^(-s-2),   A = (s+1-lam)(s-lam), C = n^2 s(s+1)
    h(t) = -D t^(lam-2) (t+n)^(-s-1),                           D = 2 n s (s+1-lam)

Every term has the shape t^a (t+n)^(-k), differentiated by the Leibniz rule.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError
from ..reporting import CheckReport
from .summation import SeriesParams

logger = logging.getLogger(__name__)


def _falling(x: float, r: int) -> float:
    out = 1.0
    for k in range(r):
        out *= x - k
    return out


def power_term_derivative(a: float, k: float, n: float, t, order: int = 0):
    """d^order/dt^order of t^a (t+n)^(-k).

    Args:
        a (float): exponent of t
        k (float): exponent of 1/(t+n)
        n (float): shift
        t (float | np.ndarray): evaluation point(s), > 0
        order (int, optional): derivative order. Defaults to 0.

    Returns:
        float | np.ndarray: the derivative, same shape as t
    """
    if order < 0:
        raise DomainError(f"derivative order must be nonnegative, got {order}")
    total = 0.0
    for r in range(order + 1):
        rest = order - r
        coeff = math.comb(order, r) * _falling(a, r) * _falling(-k, rest)
        if coeff == 0.0:
            continue
        total = total + coeff * t ** (a - r) * (t + n) ** (-k - rest)
    return total


def _coefficients(params: SeriesParams) -> tuple[float, float, float]:
    lam, s, n = params.lam, params.s, params.n
    return (s + 1 - lam) * (s - lam), n * n * s * (s + 1), 2 * n * s * (s + 1 - lam)


def _check_point(t):
    if np.any(np.asarray(t) <= 0):
        raise DomainError("t must be positive")


def f_derivative(params: SeriesParams, t, order: int = 0):
    """f^(order)(t)"""
    _check_point(t)
    return power_term_derivative(params.lam, params.s, params.n, t, order)


def g_derivative(params: SeriesParams, t, order: int = 0):
    """g^(order)(t)"""
    _check_point(t)
    a, c, _ = _coefficients(params)
    lam, s, n = params.lam, params.s, params.n
    return (a * power_term_derivative(lam - 2, s, n, t, order)
            + c * power_term_derivative(lam - 2, s + 2, n, t, order))


def h_derivative(params: SeriesParams, t, order: int = 0):
    """h^(order)(t)"""
    _check_point(t)
    _, _, d = _coefficients(params)
    return -d * power_term_derivative(params.lam - 2, params.s + 1, params.n, t, order)


@dataclass(frozen=True)
class FDerivatives:
    t: float
    f: float
    f1: float
    f2: float
    f3: float
    g: float
    h: float
    g1: float
    h1: float
    g3: float

    @property
    def split_residual(self) -> float:
        """f'' - (g + h), zero up to rounding"""
        return self.f2 - (self.g + self.h)


def f_derivatives(params: SeriesParams, t: float) -> FDerivatives:
    """f, f', f'', f''' with the g and h parts of f'' and the derivatives of g and h used in the bracket.

    Raises:
        DomainError: t <= 0
    """
    t = float(t)
    return FDerivatives(
        t=t,
        f=f_derivative(params, t, 0),
        f1=f_derivative(params, t, 1),
        f2=f_derivative(params, t, 2),
        f3=f_derivative(params, t, 3),
        g=g_derivative(params, t, 0),
        h=h_derivative(params, t, 0),
        g1=g_derivative(params, t, 1),
        h1=h_derivative(params, t, 1),
        g3=g_derivative(params, t, 3),
    )


def g3_at_one(params: SeriesParams) -> float:
    """g'''(1) expanded in powers of 1/(n+1), term by term.

    The (n+1)^(-s-3) term of the first part has coefficient -s(s+1)(s+2)(s+1-lam)(s-lam);
    D_3 in dpoly carries 3 times that, which only lowers the bound it feeds.
    """
    lam, s, n = params.lam, params.s, params.n
    a = (s + 1 - lam) * (s - lam)
    n2 = n * n
    w = 1.0 / (n + 1)
    base = w ** s
    terms = (
        a * (lam - 2) * (lam - 3) * (lam - 4),
        -3 * s * a * (lam - 2) * (lam - 3) * w,
        3 * s * (s + 1) * a * (lam - 2) * w ** 2,
        -s * (s + 1) * (s + 2) * a * w ** 3,
        n2 * s * (s + 1) * (lam - 2) * (lam - 3) * (lam - 4) * w ** 2,
        -3 * n2 * s * (s + 1) * (s + 2) * (lam - 2) * (lam - 3) * w ** 3,
        3 * n2 * s * (s + 1) * (s + 2) * (s + 3) * (lam - 2) * w ** 4,
        -n2 * s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * w ** 5,
    )
    return base * math.fsum(terms)


def default_sample_points() -> list[float]:
    return np.geomspace(1.0, 1e3, 25).tolist()


def sign_conditions(params: SeriesParams, points: list[float] | None = None) -> CheckReport:
    """Sample the signs needed by the Bernoulli bracket: g^(4), g^(6) > 0 and h^(4), h^(6) < 0.

    Args:
        params (SeriesParams): (lam, s, n)
        points (list[float] | None, optional): sample points in [1, inf). Defaults to a geometric grid on [1, 1000].

    Returns:
        CheckReport: first sample point with a wrong sign, if any
    """
    points = default_sample_points() if points is None else [float(t) for t in points]
    checks = (
        ("g4", lambda t: g_derivative(params, t, 4), 1),
        ("g6", lambda t: g_derivative(params, t, 6), 1),
        ("h4", lambda t: h_derivative(params, t, 4), -1),
        ("h6", lambda t: h_derivative(params, t, 6), -1),
    )
    for t in points:
        for label, fn, sign in checks:
            value = fn(t)
            if not sign * value > 0:
                logger.info("sign condition %s fails at t=%s for %s", label, t, params)
                return CheckReport(
                    name="sign_conditions",
                    params=params.as_dict(),
                    passed=False,
                    lhs=value,
                    rhs=0.0,
                    margin=sign * value,
                    location={"derivative": label, "t": t},
                )
    return CheckReport(
        name="sign_conditions",
        params=params.as_dict(),
        passed=True,
        details={"points": len(points)},
    )
