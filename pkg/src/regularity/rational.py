"""Exact rational helpers on top of :class:`fractions.Fraction`."""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .errors import DomainError

Rational = Fraction

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or a decimal literal exactly.

    Decimals are converted digit for digit (``"0.125"`` gives 1/8); no binary
    floating point is ever involved.
    """
    m = _FRACTION_RE.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise DomainError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    try:
        dec = Decimal(text.strip())
    except InvalidOperation:
        raise DomainError(f"not a rational literal: {text!r}") from None
    if not dec.is_finite():
        raise DomainError(f"not a finite rational: {text!r}")
    return Fraction(dec)


def as_rational(value) -> Fraction:
    if isinstance(value, float):
        raise DomainError("binary floats are not accepted; pass a Fraction, int or string")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def to_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))
