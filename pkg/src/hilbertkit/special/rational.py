from decimal import Decimal, InvalidOperation
from fractions import Fraction

from ..exceptions import DomainError

# Fraction already normalises after every operation and raises on division by zero.
ExactRational = Fraction


def to_rational(value: int | float | str | Fraction) -> ExactRational:
    """Convert a value to an exact rational.

    Strings may be "a/b", an integer or a decimal literal ("0.015625").
    Floats convert to their exact binary value.

    Args:
        value (int | float | str | Fraction): value to convert

    Raises:
        DomainError: malformed string, zero denominator or non-finite float

    Returns:
        ExactRational: normalised rational
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        try:
            return Fraction(value)
        except (ValueError, OverflowError):
            raise DomainError(f"{value} has no rational value")
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                num_i, den_i = int(num), int(den)
            except ValueError:
                raise DomainError(f"'{value}' is not of the form a/b")
            if den_i == 0:
                raise DomainError(f"'{value}' has a zero denominator")
            return Fraction(num_i, den_i)
        try:
            return Fraction(Decimal(text))
        except (InvalidOperation, ValueError, OverflowError):
            raise DomainError(f"'{value}' is not a rational literal")
    raise DomainError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
