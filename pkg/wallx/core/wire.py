"""Wire format for rationals and vectors.

Rationals travel as strings ``"p/q"`` in lowest terms with ``q > 0``; integers may drop the
``/q``. Vectors travel either as JSON arrays of such strings or, on the command line, as a
comma-separated list (``"-1,3/2,0"``).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from wallx.core.errors import WireError


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are refused: every quantity on the wire is exact.
    """
    if isinstance(text, bool):
        raise WireError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise WireError(f"not a rational: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise WireError(f"malformed rational '{text}' (expected p/q)")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise WireError(f"zero denominator in '{text}'")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(value: Fraction | int) -> str:
    return str(Fraction(value))


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Parse ``"c1,...,cd"``. The empty string is the zero-dimensional vector."""
    if text is None:
        raise WireError("missing vector", code="malformed-vector")
    text = text.strip()
    if text in ("", "()", "[]"):
        return ()
    return tuple(parse_rational(part) for part in text.strip("()[]").split(","))


def parse_int_vector(text: str) -> tuple[int, ...]:
    values = parse_vector(text)
    if any(v.denominator != 1 for v in values):
        raise WireError(f"expected integers, got '{text}'", code="malformed-vector")
    return tuple(int(v) for v in values)


def format_vector(values: Iterable) -> list[str]:
    return [format_rational(v) for v in values]


def parse_json_vector(values) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise WireError(f"expected a JSON array, got {type(values).__name__}",
                        code="malformed-vector")
    return tuple(parse_rational(v) for v in values)
