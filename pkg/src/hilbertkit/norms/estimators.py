"""Lower bounds on the lp operator norm of H(alpha, beta) from finite sections."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import DomainError
from ..kernels import KernelParams
from ..sharding import ShardedScan
from ..special import ConjugateExponents

logger = logging.getLogger(__name__)

DENSE_LIMIT = 8192
# float64 entries per streamed block; each temporary of _block is this size
BLOCK_ELEMENTS = 1 << 20


def _block(alpha: float, beta: float, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """H(alpha, beta) restricted to the given 1-based rows and columns"""
    i = rows[:, None].astype(np.float64)
    j = cols[None, :].astype(np.float64)
    return np.exp(alpha * np.log(i) + beta * np.log(j) - (alpha + beta + 1) * np.log(i + j))


def rows_per_block(n_cols: int) -> int:
    """rows of an n_cols wide block that keep it within BLOCK_ELEMENTS entries"""
    return max(1, BLOCK_ELEMENTS // n_cols)


def _check_norm_region(params: KernelParams, exps: ConjugateExponents):
    if params.alpha <= -1 / exps.p:
        raise DomainError(f"alpha > -1/p required, got alpha={params.alpha}, p={exps.p}")
    if params.beta <= -1 / exps.q:
        raise DomainError(f"beta > -1/q required, got beta={params.beta}, q={exps.q}")


class TruncatedMatrix:
    params: KernelParams
    size: int
    dense: np.ndarray | None
    row_block: int

    def __init__(self, params: KernelParams, size: int, dense_limit: int = DENSE_LIMIT, row_block: int | None = None):
        """N x N section of H(alpha, beta).

        Sections up to dense_limit are materialised. Larger ones stream row blocks
        through every product and are never held in memory.

        Args:
            params (KernelParams): (alpha, beta)
            size (int): N
            dense_limit (int, optional): largest materialised N. Defaults to 8192.
            row_block (int | None, optional): rows per streamed block. Defaults to rows_per_block(size).

        Raises:
            DomainError: size < 1
        """
        if not isinstance(size, int) or size < 1:
            raise DomainError(f"truncation must be a positive integer, got {size!r}")
        self.params = params
        self.size = size
        self.row_block = row_block or rows_per_block(size)
        self._idx = np.arange(1, size + 1)
        self.dense = None
        if size <= dense_limit:
            self.dense = _block(params.alpha, params.beta, self._idx, self._idx)

    @property
    def streamed(self) -> bool:
        return self.dense is None

    def _row_blocks(self):
        for lo in range(0, self.size, self.row_block):
            hi = min(lo + self.row_block, self.size)
            yield lo, hi, _block(self.params.alpha, self.params.beta, self._idx[lo:hi], self._idx)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        if self.dense is not None:
            return self.dense @ x
        out = np.empty(self.size)
        for lo, hi, blk in self._row_blocks():
            out[lo:hi] = blk @ x
        return out

    def rmatvec(self, y: np.ndarray) -> np.ndarray:
        if self.dense is not None:
            return self.dense.T @ y
        out = np.zeros(self.size)
        for lo, hi, blk in self._row_blocks():
            out += blk.T @ y[lo:hi]
        return out

    def to_dense(self) -> np.ndarray:
        if self.dense is not None:
            return self.dense
        return _block(self.params.alpha, self.params.beta, self._idx, self._idx)


@dataclass
class NormEstimate:
    """A lower bound on ||H_N||_{p,p} from the power iteration."""
    value: float
    truncation: int
    iterations: int
    residual: float
    history: list[float] = field(default_factory=list)
    converged: bool = False


def _lp_norm(v: np.ndarray, p: float) -> float:
    scale = float(np.max(np.abs(v)))
    if scale == 0.0:
        return 0.0
    return scale * float(np.sum((np.abs(v) / scale) ** p)) ** (1 / p)


def power_iteration_lower_bound(
        params: KernelParams,
        exps: ConjugateExponents,
        N: int,
        tol: float = 1e-10,
        max_iter: int = 10_000
    ) -> NormEstimate:
    """Nonlinear power iteration for the lp operator norm of the N x N section of H(alpha, beta).

    Each step forms y = A x, u = A^T y^(p-1) and x <- u^(q-1) normalised in lp. The
    quotient ||A x||_p never decreases for a nonnegative A, and every quotient is a lower
    bound for ||A||_{p,p} and therefore for ||H(alpha, beta)||_{p,p}.

    Args:
        params (KernelParams): (alpha, beta)
        exps (ConjugateExponents): (p, q)
        N (int): truncation
        tol (float, optional): relative change that stops the iteration. Defaults to 1e-10.
        max_iter (int, optional): iteration cap. Defaults to 10_000.

    Raises:
        DomainError: N < 1, tol <= 0 or max_iter < 1

    Returns:
        NormEstimate: final quotient with its history; converged is False when max_iter was hit
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise DomainError(f"max_iter must be at least 1, got {max_iter}")
    p, q = exps.p, exps.q
    matrix = TruncatedMatrix(params, N)

    # lp factor of the extremal pair x_i = i^(-1/q), y_j = j^(-1/p)
    x = np.arange(1, N + 1, dtype=np.float64) ** (-1 / p)
    x /= _lp_norm(x, p)

    history = []
    value = 0.0
    residual = math.inf
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        y = matrix.matvec(x)
        current = _lp_norm(y, p)
        if history and current < history[-1] * (1 - 1e-12):
            logger.warning("power iteration quotient decreased at step %d: %.17g -> %.17g",
                           iterations, history[-1], current)
        history.append(current)
        residual = abs(current - value) / current if current > 0 else 0.0
        value = max(value, current)
        if iterations > 1 and residual < tol:
            converged = True
            break
        u = matrix.rmatvec((y / current) ** (p - 1))
        x = (u / np.max(u)) ** (q - 1)
        x /= _lp_norm(x, p)

    if not converged:
        logger.warning("power iteration stopped after %d steps with residual %.3g > tol %.3g",
                       iterations, residual, tol)
    logger.debug("power iteration N=%d: %.17g after %d steps", N, value, iterations)
    return NormEstimate(
        value=value,
        truncation=N,
        iterations=iterations,
        residual=residual,
        history=history,
        converged=converged,
    )


def _test_vector_rows(lo: int, hi: int, alpha: float, beta: float, p: float, q: float, N: int) -> float:
    """sum over rows lo..hi-1 (0-based) of H_{i,j} i^(-1/q) j^(-1/p)"""
    cols = np.arange(1, N + 1)
    y = cols.astype(np.float64) ** (-1 / p)
    parts = []
    step = rows_per_block(N)
    for start in range(lo, hi, step):
        stop = min(start + step, hi)
        rows = np.arange(start + 1, stop + 1)
        x = rows.astype(np.float64) ** (-1 / q)
        parts.append(float(x @ (_block(alpha, beta, rows, cols) @ y)))
    return math.fsum(parts)


def test_vector_lower_bound(params: KernelParams, exps: ConjugateExponents, N: int, threads: int = 1) -> float:
    """Bilinear ratio of the section at x_i = i^(-1/q), y_j = j^(-1/p).

    Both vectors have the same weight sum H_N = sum_{i<=N} 1/i, so the ratio
    sum_{i,j<=N} H_{i,j} x_i y_j / H_N is a lower bound for ||H(alpha, beta)||_{p,p}.

    Args:
        params (KernelParams): (alpha, beta)
        exps (ConjugateExponents): (p, q)
        N (int): truncation
        threads (int, optional): worker processes for the row sum. Defaults to 1.

    Raises:
        DomainError: alpha <= -1/p, beta <= -1/q or N < 1

    Returns:
        float: the lower bound
    """
    _check_norm_region(params, exps)
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    scan = ShardedScan(_test_vector_rows, threads=threads)
    total = math.fsum(scan.collect(0, N, params.alpha, params.beta, exps.p, exps.q, N))
    harmonic = math.fsum(1.0 / k for k in range(1, N + 1))
    return total / harmonic
