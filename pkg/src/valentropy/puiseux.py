"""Finite Puiseux polynomials: rational coefficients, nonnegative rational exponents.

A polynomial is a finite sum of terms ``c * t^e`` with ``c`` a nonzero rational
and ``e >= 0`` rational, at most one term per exponent.  The zero polynomial
has no terms.  The valuation of a nonzero polynomial is its smallest exponent;
the valuation of zero is INF.

Any finite family of these lives in the ordinary polynomial ring Q[u] with
u = t^(1/m) for a common ramification index m, which is what the gcd and exact
division helpers below exploit.  There is no global precision or ramification
cap: m is recomputed per operation.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Tuple

from .rationals import INF, ExtRational

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PuiseuxPoly:
    """Immutable Puiseux polynomial, terms sorted by strictly increasing exponent."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Tuple[Tuple[Fraction, Fraction], ...] = ()):
        # Internal constructor: `terms` must already be canonical
        # ((exponent, coefficient) pairs, ascending, nonzero, exponents >= 0).
        self._terms = terms

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Fraction, Fraction]]) -> "PuiseuxPoly":
        """Build from (exponent, coefficient) pairs, combining duplicates."""
        acc: dict[Fraction, Fraction] = {}
        for exp, coef in terms:
            exp = Fraction(exp)
            coef = Fraction(coef)
            if exp < 0:
                raise ValueError(f"negative exponent {exp} in Puiseux polynomial")
            acc[exp] = acc.get(exp, _ZERO) + coef
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def monomial(cls, exponent, coefficient=1) -> "PuiseuxPoly":
        exp = Fraction(exponent)
        coef = Fraction(coefficient)
        if coef == 0:
            return cls()
        if exp < 0:
            raise ValueError(f"negative exponent {exp} in Puiseux polynomial")
        return cls(((exp, coef),))

    @property
    def terms(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def valuation(self) -> ExtRational:
        """Exponent of the lowest term; INF for the zero polynomial."""
        if not self._terms:
            return INF
        return self._terms[0][0]

    @property
    def low_coefficient(self) -> Fraction:
        """Coefficient of the lowest term (the valuation-carrying one)."""
        if not self._terms:
            raise ValueError("zero polynomial has no low coefficient")
        return self._terms[0][1]

    @property
    def max_exponent(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __neg__(self):
        return PuiseuxPoly(tuple((e, -c) for e, c in self._terms))

    def __add__(self, other):
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = []
        a, b = self._terms, other._terms
        i = j = 0
        while i < len(a) and j < len(b):
            ea, ca = a[i]
            eb, cb = b[j]
            if ea < eb:
                out.append((ea, ca))
                i += 1
            elif eb < ea:
                out.append((eb, cb))
                j += 1
            else:
                c = ca + cb
                if c != 0:
                    out.append((ea, c))
                i += 1
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return PuiseuxPoly(tuple(out))

    def __sub__(self, other):
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return PuiseuxPoly()
        if len(self._terms) == 1:
            e, c = self._terms[0]
            return other.shift_scale(e, c)
        if len(other._terms) == 1:
            e, c = other._terms[0]
            return self.shift_scale(e, c)
        acc: dict[Fraction, Fraction] = {}
        for ea, ca in self._terms:
            for eb, cb in other._terms:
                e = ea + eb
                acc[e] = acc.get(e, _ZERO) + ca * cb
        return PuiseuxPoly(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    def scale(self, c) -> "PuiseuxPoly":
        """Multiply by a rational scalar."""
        c = Fraction(c)
        if c == 0:
            return PuiseuxPoly()
        return PuiseuxPoly(tuple((e, k * c) for e, k in self._terms))

    def shift_scale(self, delta, c=1) -> "PuiseuxPoly":
        """Multiply by the monomial c * t^delta; delta may be negative if it stays legal."""
        delta = Fraction(delta)
        c = Fraction(c)
        if c == 0:
            return PuiseuxPoly()
        if self._terms and self._terms[0][0] + delta < 0:
            raise ValueError("shift would create a negative exponent")
        return PuiseuxPoly(tuple((e + delta, k * c) for e, k in self._terms))

    def __repr__(self):
        from .field import format_poly

        return f"PuiseuxPoly({format_poly(self)!r})"


ZERO_POLY = PuiseuxPoly()
ONE_POLY = PuiseuxPoly(((Fraction(0), Fraction(1)),))


def ramification_index(*polys: PuiseuxPoly) -> int:
    """Least common denominator of all exponents appearing in the inputs."""
    m = 1
    for p in polys:
        for e, _ in p.terms:
            m = lcm(m, e.denominator)
    return m


def _dense(p: PuiseuxPoly, m: int) -> list[Fraction]:
    """Coefficient list of p in u = t^(1/m), index i holding the u^i coefficient."""
    if p.is_zero:
        return []
    size = int(p.max_exponent * m) + 1
    out = [_ZERO] * size
    for e, c in p.terms:
        out[int(e * m)] = c
    return out


def _from_dense(coeffs: list[Fraction], m: int) -> PuiseuxPoly:
    return PuiseuxPoly(
        tuple((Fraction(i, m), c) for i, c in enumerate(coeffs) if c != 0)
    )


def _dense_trim(a: list[Fraction]) -> None:
    while a and a[-1] == 0:
        a.pop()


def _dense_divmod(a: list[Fraction], b: list[Fraction]):
    """Long division in Q[u]; returns (quotient, remainder)."""
    a = list(a)
    q = [_ZERO] * (max(len(a) - len(b) + 1, 0))
    inv_lead = _ONE / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c != 0:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    _dense_trim(a)
    return q, a


def poly_gcd(p: PuiseuxPoly, q: PuiseuxPoly) -> PuiseuxPoly:
    """Greatest common divisor (monic in the common ramification), via Euclid in Q[u]."""
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    m = ramification_index(p, q)
    a, b = _dense(p, m), _dense(q, m)
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    if lead != 1:
        a = [c / lead for c in a]
    return _from_dense(a, m)


def poly_div_exact(p: PuiseuxPoly, d: PuiseuxPoly) -> PuiseuxPoly:
    """Exact division p / d; raises if d does not divide p."""
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return ZERO_POLY
    m = ramification_index(p, d)
    q, r = _dense_divmod(_dense(p, m), _dense(d, m))
    if r:
        raise ValueError("inexact polynomial division")
    _dense_trim(q)
    return _from_dense(q, m)
