"""Small numeric helpers shared across the package.

Values are plain Python numbers: int and Fraction for exact objectives, float
for objectives built from irrational densities. Subsets of the ground set
travel as int bitmasks; arbitrary-precision ints make this work for any
ground-set size, so no list fallback is needed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Union

Value = Union[int, float, Fraction]

INFINITE = math.inf

REL_TOL = 1e-9


def is_exact(value: Value) -> bool:
    return isinstance(value, (int, Fraction))


def value_ge(a: Value, b: Value, exact: bool, rel_tol: float = REL_TOL) -> bool:
    """Check a >= b, with relative slack ``rel_tol`` for float-valued objectives."""
    if exact:
        return a >= b
    return a >= b - rel_tol * max(abs(a), abs(b))


def mask_of(elements: Union[Iterable[int], int], n: int) -> int:
    """Normalize a subset (iterable of indices, or an int bitmask) to a bitmask."""
    if isinstance(elements, int):
        if elements < 0 or elements >> n:
            raise ValueError(f"bitmask {elements} out of range for ground set of size {n}")
        return elements
    mask = 0
    for e in elements:
        if not 0 <= e < n:
            raise ValueError(f"element index {e} out of range for ground set of size {n}")
        mask |= 1 << e
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set-bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> frozenset:
    return frozenset(iter_bits(mask))


def parse_value(raw) -> Value:
    """Decode a JSON-encoded number: int, float, ``"p/q"`` fraction, or ``"inf"``."""
    if isinstance(raw, bool):
        raise ValueError(f"not a number: {raw!r}")
    if isinstance(raw, (int, float)):
        return raw
    if isinstance(raw, str):
        if raw == "inf":
            return INFINITE
        if "/" in raw:
            p, q = raw.split("/", 1)
            return Fraction(int(p), int(q))
        return Fraction(int(raw))
    raise ValueError(f"cannot decode value {raw!r}")


def encode_value(v: Value):
    """Encode for JSON: Fractions as ``"p/q"`` (whole ones as ints), inf as ``"inf"``."""
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf"
        return v
    return v


def csv_number(v: Value) -> str:
    """Format for CSV: integers verbatim, everything else at 9 significant digits."""
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return format(float(v), ".9g")
    return format(float(v), ".9g")
