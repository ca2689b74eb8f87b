import math
from decimal import Decimal
from fractions import Fraction
from numbers import Integral, Rational
from typing import Union

RationalLike = Union[int, float, str, Decimal, Rational]


def to_fraction(x: RationalLike) -> Fraction:
    """
    Convert a number to an exact ``Fraction``. Floats are converted exactly
    from their binary representation, strings must be valid
    ``fractions.Fraction`` literals.
    """
    if isinstance(x, bool):
        raise TypeError("Coefficients must be numeric, not boolean.")
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError("Coefficients cannot be infinite or NaN.")
    if not isinstance(x, (int, float, str, Decimal, Rational)):
        raise TypeError(f"Cannot convert {type(x).__name__} to a rational.")
    if isinstance(x, Integral):
        return Fraction(int(x))
    return Fraction(x)


def check_sizes(**sizes: int) -> None:
    out_msg = [""]
    for name, value in sizes.items():
        if isinstance(value, bool) or not isinstance(value, Integral):
            out_msg.append(f"'{name}' must be an integer.")
        elif value < 1:
            out_msg.append(f"'{name}' must be a positive integer.")

    out_msg_set = set(out_msg)
    if len(out_msg_set) > 1:
        raise ValueError("\n".join(sorted(out_msg_set)).strip())
