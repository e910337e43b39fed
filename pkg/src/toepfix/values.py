"""Value-kind handling.

The library runs every computation in one of two arithmetic modes:

* ``exact``: ``fractions.Fraction`` everywhere, no rounding at all;
* ``float``: IEEE double precision.

JSON inputs select the mode implicitly: strings like ``"3/5"`` (or
``"0.6"``, parsed as the exact decimal 3/5) produce exact values, bare
floats produce doubles, and bare integers are exact in either mode.
Mixing strings and floats in one list is rejected.
"""

import sys
from fractions import Fraction

from .errors import MixedValueKinds

EXACT = "exact"
FLOAT = "float"


def ensure_printable(i):
    """Raise the interpreter's int-to-str digit cap to cover ``i``.

    Exact traces grow numerators into the hundreds of thousands of bits;
    without this, str() on them trips the conversion guard.
    """
    need = i.bit_length() // 3 + 10
    if need > sys.get_int_max_str_digits():
        sys.set_int_max_str_digits(need)


def parse_scalar(obj):
    """Parse one JSON-level scalar into (value, kind).

    kind is EXACT, FLOAT, or None for integers (valid in both modes).
    """
    if isinstance(obj, bool):
        raise ValueError("booleans are not numeric values")
    if isinstance(obj, str):
        try:
            return Fraction(obj), EXACT
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {obj!r} as a rational") from exc
    if isinstance(obj, int):
        return obj, None
    if isinstance(obj, float):
        return obj, FLOAT
    if isinstance(obj, Fraction):
        return obj, EXACT
    raise ValueError(f"unsupported numeric literal: {obj!r}")


def parse_values(objs, what="values"):
    """Parse a list of scalars into (tuple of values, kind).

    All entries must agree on a kind; integers are neutral. An all-integer
    list comes out exact, since integers carry no rounding.
    """
    parsed = [parse_scalar(o) for o in objs]
    kinds = {k for _, k in parsed if k is not None}
    if len(kinds) > 1:
        raise MixedValueKinds(
            f"{what} mix exact rationals and floats; use one kind throughout"
        )
    kind = kinds.pop() if kinds else EXACT
    if kind == EXACT:
        return tuple(Fraction(v) for v, _ in parsed), EXACT
    return tuple(float(v) for v, _ in parsed), FLOAT


def coerce(value, kind):
    """Coerce a scalar to the given kind. Floats never silently become exact."""
    if kind == EXACT:
        if isinstance(value, float):
            raise MixedValueKinds("float value supplied where exact rationals are in use")
        return Fraction(value)
    return float(value)


def format_value(value):
    """JSON-friendly form: Fractions as 'p/q' strings, floats as floats."""
    if isinstance(value, Fraction):
        ensure_printable(value.numerator)
        ensure_printable(value.denominator)
        return str(value)
    return float(value)
