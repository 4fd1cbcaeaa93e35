import math
from dataclasses import dataclass

from ..exceptions import DomainError


@dataclass(frozen=True)
class ConjugateExponents:
    """Exponent pair (p, q) with 1/p + 1/q = 1, both greater than 1."""
    p: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise DomainError("p and q must be finite")
        if self.p <= 1 or self.q <= 1:
            raise DomainError(f"p and q must both exceed 1, got p={self.p}, q={self.q}")
        if abs(1 / self.p + 1 / self.q - 1) > 4 * math.ulp(1.0):
            raise DomainError(f"1/p + 1/q must equal 1, got p={self.p}, q={self.q}")

    def swapped(self) -> "ConjugateExponents":
        """
        Returns:
            ConjugateExponents: the pair (q, p)
        """
        return ConjugateExponents(p=self.q, q=self.p)


def conjugate(p: float) -> ConjugateExponents:
    """Build the conjugate pair for p.

    Args:
        p (float): exponent, must exceed 1

    Raises:
        DomainError: p <= 1 or not finite

    Returns:
        ConjugateExponents: (p, p/(p-1))
    """
    p = float(p)
    if not math.isfinite(p) or p <= 1:
        raise DomainError(f"p must be a finite real greater than 1, got {p}")
    return ConjugateExponents(p=p, q=p / (p - 1))
