"""Euler-Maclaurin summation with the periodic Bernoulli polynomial remainder.

    sum_{k>=1} f(k) = int_1^inf f + f(1)/2 - f'(1)/12 - 1/2 int_1^inf B2({t}) f''(t) dt,   B2(x) = x^2 - x + 1/6
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from ..exceptions import DomainError, QuadratureError
from ..reporting import CheckReport
from .derivatives import f_derivative, g_derivative, h_derivative
from .summation import SeriesParams, certified_sum

logger = logging.getLogger(__name__)

STANDARD_CONSTANT = Fraction(1, 6)
TAIL_TOL = 1e-13
INITIAL_PANELS = 64
MAX_PANELS = 1 << 21
# max |B3(x)| / 3 on [0, 1]
B3_BOUND = math.sqrt(3) / 108
EM_TOLERANCE = 1e-8


def _integral_to_infinity(func: Callable[[float], float], start: float) -> float:
    with mpmath.workdps(30):
        value, err = mpmath.quad(lambda t: func(float(t)), [start, mpmath.inf], error=True)
        if err > 1e-10 * (abs(value) + 1e-30):
            raise QuadratureError(f"integral to infinity did not converge: error estimate {err}")
        return float(value)


def periodic_bernoulli_integral(
        func: Callable[[np.ndarray], np.ndarray],
        constant: Fraction | float = STANDARD_CONSTANT,
        quad_points: int = 20,
        start: float = 1.0,
        integral: float | None = None,
        tol: float = TAIL_TOL,
        max_panels: int = MAX_PANELS
    ) -> tuple[float, float]:
    """int_start^inf B2({t}) func(t) dt for B2(x) = x^2 - x + constant.

    Unit panels aligned with the integers are integrated with Gauss-Legendre nodes. The panel
    count doubles until the tail bound sqrt(3)/108 |func(K)| at the cut K drops below tol;
    that bound holds for the standard constant 1/6 and func monotone to zero beyond K. Any
    other constant adds (constant - 1/6) int_start^inf func, taken from integral when given.

    Args:
        func (Callable[[np.ndarray], np.ndarray]): vectorised integrand factor
        constant (Fraction | float, optional): constant term of B2. Defaults to 1/6.
        quad_points (int, optional): Gauss-Legendre nodes per panel. Defaults to 20.
        start (float, optional): lower limit, an integer. Defaults to 1.0.
        integral (float | None, optional): int_start^inf func if known. Defaults to None.
        tol (float, optional): tail bound to reach. Defaults to 1e-13.
        max_panels (int, optional): panel cap. Defaults to 2**21.

    Raises:
        DomainError: quad_points < 1
        QuadratureError: the tail bound stays above tol at max_panels

    Returns:
        tuple[float, float]: (value, tail bound)
    """
    if not isinstance(quad_points, int) or quad_points < 1:
        raise DomainError(f"quad_points must be a positive integer, got {quad_points!r}")
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    x = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    weighted_b2 = w * (x * x - x + 1.0 / 6.0)

    parts = []
    done = 0
    panels = INITIAL_PANELS
    while True:
        k = np.arange(done, panels, dtype=np.float64)[:, None]
        t = start + k + x[None, :]
        parts.extend((func(t) @ weighted_b2).tolist())
        done = panels
        tail = B3_BOUND * abs(float(func(np.array([start + panels], dtype=np.float64))[0]))
        if tail < tol:
            break
        if panels >= max_panels:
            raise QuadratureError(f"Bernoulli remainder tail {tail:.3g} above {tol:.3g} after {panels} panels")
        panels *= 2
        logger.debug("doubling Bernoulli panels to %d (tail bound %.3g)", panels, tail)
    value = math.fsum(parts)

    shift = float(constant) - 1.0 / 6.0
    if shift != 0.0:
        if integral is None:
            integral = _integral_to_infinity(lambda s: float(func(np.array([s]))[0]), start)
        value += shift * integral
    return value, tail


def integral_one_to_infinity(params: SeriesParams) -> float:
    """int_1^inf t^lam (t+n)^(-s) dt as int_0^1 u^(s-lam-2) (1+n u)^(-s) du

    Raises:
        QuadratureError: error estimate above tolerance
    """
    lam, s, n = params.lam, params.s, params.n
    with mpmath.workdps(30):
        value, err = mpmath.quad(lambda u: u ** (s - lam - 2) * (1 + n * u) ** (-s), [0, 1], error=True)
        if err > 1e-12 * abs(value):
            raise QuadratureError(f"int_1^inf f did not converge for {params}: error estimate {err}")
        return float(value)


def euler_maclaurin_check(
        params: SeriesParams,
        quad_points: int = 20,
        constant: Fraction | float = STANDARD_CONSTANT
    ) -> CheckReport:
    """Compare both sides of the Euler-Maclaurin identity for f(t) = t^lam/(t+n)^s.

    Args:
        params (SeriesParams): (lam, s, n)
        quad_points (int, optional): Gauss-Legendre nodes per unit panel. Defaults to 20.
        constant (Fraction | float, optional): constant term of B2. Defaults to 1/6.

    Returns:
        CheckReport: passed iff |lhs - rhs| <= 1e-8; a quadrature failure gives a failed report
    """
    report_params = {**params.as_dict(), "quad_points": quad_points, "constant": constant}
    lhs = certified_sum(params, budget=4096).midpoint
    try:
        f1 = f_derivative(params, 1.0, 1)
        remainder, tail = periodic_bernoulli_integral(
            lambda t: f_derivative(params, t, 2),
            constant=constant,
            quad_points=quad_points,
            integral=-f1,
        )
        integral = integral_one_to_infinity(params)
    except QuadratureError as e:
        logger.warning("Euler-Maclaurin quadrature failed for %s: %s", params, e)
        return CheckReport(
            name="euler_maclaurin",
            params=report_params,
            passed=False,
            lhs=lhs,
            location=dict(report_params),
            details={"error": str(e)},
        )
    rhs = math.fsum((integral, 0.5 * f_derivative(params, 1.0, 0), -f1 / 12, -0.5 * remainder))
    discrepancy = abs(lhs - rhs)
    passed = bool(discrepancy <= EM_TOLERANCE)
    logger.info("Euler-Maclaurin discrepancy %.3g for %s (constant %s)", discrepancy, params, constant)
    return CheckReport(
        name="euler_maclaurin",
        params=report_params,
        passed=passed,
        lhs=lhs,
        rhs=rhs,
        margin=EM_TOLERANCE - discrepancy,
        location=None if passed else dict(report_params),
        details={"discrepancy": discrepancy, "remainder": remainder, "tail_bound": tail},
    )


def bernoulli_bracket_check(params: SeriesParams, quad_points: int = 20) -> CheckReport:
    """Check the bracket bounds on the Bernoulli remainder of g and h.

        -1/2 int_1^inf B2({t}) g <= g'(1)/720 - g'''(1)/30240
        -1/2 int_1^inf B2({t}) h <= h'(1)/720

    Returns:
        CheckReport: lhs, rhs and margin of the g part; the h part is in details
    """
    g_rem, _ = periodic_bernoulli_integral(lambda t: g_derivative(params, t, 0), quad_points=quad_points)
    h_rem, _ = periodic_bernoulli_integral(lambda t: h_derivative(params, t, 0), quad_points=quad_points)
    g_lhs = -0.5 * g_rem
    g_rhs = g_derivative(params, 1.0, 1) / 720 - g_derivative(params, 1.0, 3) / 30240
    h_lhs = -0.5 * h_rem
    h_rhs = h_derivative(params, 1.0, 1) / 720
    g_ok = bool(g_lhs <= g_rhs)
    h_ok = bool(h_lhs <= h_rhs)
    location = None
    if not g_ok:
        location = {"part": "g"}
    elif not h_ok:
        location = {"part": "h"}
    return CheckReport(
        name="bernoulli_bracket",
        params={**params.as_dict(), "quad_points": quad_points},
        passed=g_ok and h_ok,
        lhs=g_lhs,
        rhs=g_rhs,
        margin=g_rhs - g_lhs,
        location=location,
        details={"h_lhs": h_lhs, "h_rhs": h_rhs, "h_margin": h_rhs - h_lhs},
    )
