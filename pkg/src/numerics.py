"""
Scalar arithmetic shared by every module.

Two modes are supported: Exact (``fractions.Fraction``) and Float (binary64 ``float``).
Both types support + - * / against int literals, so the recurrence formulas are written
once and run in either mode. Mixing the two in one computation is an error.
"""

import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DegenerateParams,
    MixedModeError,
    NonFiniteValue,
    SingularDenominator,
)

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, float]


class Mode(Enum):
    """Arithmetic mode of a computation."""
    EXACT = "exact"
    FLOAT = "float"


def mode_of(value: Scalar) -> Mode:
    """Return the arithmetic mode a scalar belongs to."""
    if isinstance(value, Fraction):
        return Mode.EXACT
    if isinstance(value, float):
        return Mode.FLOAT
    raise TypeError(f"Not a scalar of either mode: {value!r} ({type(value).__name__})")


def common_mode(*values: Scalar) -> Mode:
    """
    Return the single mode shared by all values.

    Raises:
        MixedModeError: If Exact and Float values are mixed
    """
    modes = {mode_of(v) for v in values}
    if len(modes) > 1:
        raise MixedModeError("Exact and Float values cannot be mixed in one computation")
    return modes.pop()


def coerce(value: Union[int, Scalar]) -> Scalar:
    """Promote plain ints to Fraction, leave scalars untouched."""
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    mode_of(value)
    return value


def to_scalar(value: Union[str, int, float, Fraction], mode: Mode) -> Scalar:
    """
    Convert user input into a scalar of the requested mode.

    Accepts "p/q" rationals, decimals and scientific notation as strings, as well as
    ints, floats and Fractions.

    Args:
        value: Raw value
        mode: Target arithmetic mode

    Returns:
        Fraction in Exact mode, float in Float mode

    Raises:
        ValueError: If the string cannot be parsed
        NonFiniteValue: If the value is NaN or infinite
    """
    if isinstance(value, str):
        text = value.strip()
        try:
            exact = Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            lowered = text.lower()
            if lowered in ("nan", "inf", "+inf", "-inf", "infinity", "-infinity"):
                raise NonFiniteValue(f"Non-finite value: {value!r}") from e
            raise ValueError(f"Cannot parse number: {value!r}") from e
        return exact if mode == Mode.EXACT else float(exact)

    if isinstance(value, float) and not math.isfinite(value):
        raise NonFiniteValue(f"Non-finite value: {value!r}")

    if mode == Mode.EXACT:
        return Fraction(value)
    return float(value)


def check_finite(value: Scalar) -> Scalar:
    """Reject NaN and infinities in Float mode."""
    if isinstance(value, float) and not math.isfinite(value):
        raise NonFiniteValue(f"Non-finite value: {value!r}")
    return value


def divide(numerator: Scalar, denominator: Scalar) -> Scalar:
    """
    Divide, turning a zero denominator into a domain error.

    Raises:
        SingularDenominator: If the denominator is zero
    """
    if denominator == 0:
        raise SingularDenominator("Denominator is zero")
    return numerator / denominator


def power(base: Scalar, n: int) -> Scalar:
    """
    Raise to a non-negative integer power.

    Float overflow saturates to a signed infinity instead of raising.
    """
    if n < 0:
        raise ValueError(f"Exponent must be non-negative, got {n}")
    try:
        return base ** n
    except OverflowError:
        negative = base < 0 and n % 2 == 1
        return -math.inf if negative else math.inf


def sign(value: Scalar) -> int:
    """Return -1, 0 or 1."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def to_float(value: Scalar) -> float:
    """Convert a scalar of either mode to float."""
    return float(value)


def bit_size(value: Scalar) -> int:
    """Bits needed for numerator plus denominator (0 for floats)."""
    if isinstance(value, Fraction):
        return value.numerator.bit_length() + value.denominator.bit_length()
    return 0


def exact_sqrt(value: Scalar) -> Optional[Scalar]:
    """
    Exact square root of a non-negative rational, or None when it is irrational.

    Float inputs always get ``math.sqrt``.
    """
    if value < 0:
        return None
    if isinstance(value, float):
        return math.sqrt(value)
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def format_scalar(value: Scalar) -> str:
    """Render a scalar for text output: "p/q" when exact, 17 significant digits otherwise."""
    if isinstance(value, Fraction):
        return str(value)
    return format(value, ".17g")


def validate_params(params) -> None:
    """
    Check that (a, b) define a usable recurrence.

    Args:
        params: Object with ``a`` and ``b`` scalar attributes

    Raises:
        MixedModeError: If a and b are of different modes
        NonFiniteValue: If either is NaN or infinite
        DegenerateParams: If a = b = 0
    """
    common_mode(params.a, params.b)
    check_finite(params.a)
    check_finite(params.b)
    if params.a == 0 and params.b == 0:
        raise DegenerateParams("(a, b) = (0, 0): every denominator of the recurrence vanishes")


def alpha_of(params, seed) -> Scalar:
    """
    Return the seed invariant alpha = b * x_{-1} * x_0.

    Raises:
        MixedModeError: If params and seed are of different modes
    """
    common_mode(params.a, params.b, seed.x_prev, seed.x_zero)
    return params.b * seed.x_prev * seed.x_zero
