"""Extended rationals: exact arbitrary-precision rationals plus the value +infinity.

Valuations, lengths and entropies all take values here.  Finite values are
plain ``fractions.Fraction`` objects (always stored reduced with positive
denominator); the single extra point is the module-level singleton ``INF``,
which absorbs addition and compares greater than every rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union


class InfinityType:
    """Singleton +infinity: ``INF + x == INF`` and ``INF > x`` for rational x."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("valentropy.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        if isinstance(other, (Fraction, int, InfinityType)):
            return other is not self
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (Fraction, int, InfinityType)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (Fraction, int, InfinityType)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("negative infinity is not a valuation value")


INF = InfinityType()

ExtRational = Union[Fraction, InfinityType]


def is_inf(x: ExtRational) -> bool:
    return x is INF


def ext_sum(values: Iterable[ExtRational]) -> ExtRational:
    """Sum with INF absorbing; the empty sum is 0."""
    total = Fraction(0)
    for v in values:
        if v is INF:
            return INF
        total += v
    return total


def ext_min(values: Iterable[ExtRational]) -> ExtRational:
    """Minimum ignoring INF unless every value (or none) is INF."""
    best: ExtRational = INF
    for v in values:
        if v < best:
            best = v
    return best


def format_ext(x: ExtRational) -> str:
    """Serialize as an exact rational string ("p/q" or "p") or "inf"."""
    if x is INF:
        return "inf"
    return str(x)


def parse_ext(text: str) -> ExtRational:
    text = text.strip()
    if text == "inf":
        return INF
    return Fraction(text)
