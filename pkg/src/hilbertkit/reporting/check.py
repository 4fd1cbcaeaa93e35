from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

from ..special import format_rational


def plain_value(value: Any) -> Any:
    """Convert numeric values to JSON-friendly scalars.

    Fractions become "a/b" strings so exact verdict inputs survive serialisation.
    mpmath numbers become floats. Containers are converted recursively.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return float(value.real)
    if isinstance(value, dict):
        return {str(k): plain_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain_value(v) for v in value]
    if hasattr(value, "item"):
        # numpy scalar
        return value.item()
    return str(value)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one inequality check.

    lhs and rhs are the two sides at the decisive location, margin is rhs - lhs
    (nonnegative when the check passes), and location names the first violation.
    """
    name: str
    params: dict[str, Any]
    passed: bool
    lhs: Any = None
    rhs: Any = None
    margin: Any = None
    location: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)
    asserted: bool = True

    def __post_init__(self):
        # numpy comparisons yield numpy.bool_, which json cannot encode
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "asserted", bool(self.asserted))

    def to_row(self) -> dict[str, Any]:
        """
        Returns:
            dict[str, Any]: verdict row of the run report schema
        """
        return {
            "name": self.name,
            "params": plain_value(self.params),
            "pass": bool(self.passed),
            "lhs": plain_value(self.lhs),
            "rhs": plain_value(self.rhs),
            "margin": plain_value(self.margin),
            "location": plain_value(self.location),
            "details": plain_value(self.details),
            "asserted": bool(self.asserted),
        }

    @property
    def failed(self) -> bool:
        """
        Returns:
            bool: True if this report is asserted and did not pass
        """
        return self.asserted and not self.passed
