"""The Puiseux-fraction field Q and its valuation ring R.

Elements are fractions num/den of finite Puiseux polynomials (``puiseux``
module).  The valuation is v(num) - v(den); R is the subring of elements with
v >= 0.  The value set of v over nonzero elements is exactly the rationals, so
v is an archimedean non-discrete valuation with dense value group.

Equality is decided by cross-multiplication, never by comparing normal forms.
Representations are still kept small: constructors cancel the common monomial
t-power and the polynomial gcd, and scale the denominator so its lowest term
has coefficient 1 (the canonical display form).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, ParseError
from .puiseux import ONE_POLY, ZERO_POLY, PuiseuxPoly, poly_div_exact, poly_gcd
from .rationals import INF, ExtRational

Scalar = Union[int, Fraction]


def _reduce(num: PuiseuxPoly, den: PuiseuxPoly):
    if num.is_zero:
        return ZERO_POLY, ONE_POLY
    # Cancel the common t-power so at least one part has valuation 0.
    shift = min(num.valuation, den.valuation)
    if shift > 0:
        num = num.shift_scale(-shift)
        den = den.shift_scale(-shift)
    # Cancel the polynomial gcd; only multi-term pairs can share one after the
    # t-power cancellation above.
    if len(num.terms) > 1 and len(den.terms) > 1:
        g = poly_gcd(num, den)
        if len(g.terms) > 1:
            num = poly_div_exact(num, g)
            den = poly_div_exact(den, g)
    # Denominator's lowest term gets coefficient 1.
    c = den.low_coefficient
    if c != 1:
        inv = Fraction(1) / c
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


class FieldElement:
    """An element of the Puiseux-fraction field, exact and immutable."""

    __slots__ = ("num", "den", "_val")

    def __init__(self, num: PuiseuxPoly, den: PuiseuxPoly = ONE_POLY):
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        self.num, self.den = _reduce(num, den)
        self._val = None

    @classmethod
    def from_rational(cls, q) -> "FieldElement":
        q = Fraction(q)
        return cls(PuiseuxPoly.monomial(0, q)) if q else ZERO

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def valuation(self) -> ExtRational:
        """v(num) - v(den); INF exactly for the zero element."""
        if self._val is None:
            if self.num.is_zero:
                self._val = INF
            else:
                self._val = self.num.valuation - self.den.valuation
        return self._val

    def in_valuation_ring(self) -> bool:
        return self.valuation >= 0

    def is_unit(self) -> bool:
        return self.valuation == 0

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        if self.den == o.den:
            return FieldElement(self.num + o.num, self.den)
        return FieldElement(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        out = FieldElement.__new__(FieldElement)
        out.num, out.den, out._val = -self.num, self.den, self._val
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return ZERO
        return FieldElement(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise DivisionByZero("division by zero field element")
        if self.is_zero:
            return ZERO
        return FieldElement(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self.den, self.num)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # Cross-multiplication: num1*den2 == num2*den1 as polynomials.
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # Reduced representatives are canonical enough to hash consistently:
        # gcd + monomial cancellation + unit-normalized denominator make equal
        # elements share (num, den).
        return hash((self.num, self.den))

    def __repr__(self):
        return f"El({format_element(self)!r})"


ZERO = FieldElement(ZERO_POLY)
ONE = FieldElement(ONE_POLY)
T = FieldElement(PuiseuxPoly.monomial(1))


def monomial(q, c=1) -> FieldElement:
    """The element c * t^q for rational q of either sign; valuation is q."""
    q = Fraction(q)
    c = Fraction(c)
    if c == 0:
        return ZERO
    if q >= 0:
        return FieldElement(PuiseuxPoly.monomial(q, c))
    return FieldElement(PuiseuxPoly.monomial(0, c), PuiseuxPoly.monomial(-q))


def valuation(x: FieldElement) -> ExtRational:
    return x.valuation


# --------------------------------------------------------------------------
# Element grammar
#
#   element  := fraction | sum
#   fraction := '(' sum ')' '/' '(' sum ')'
#   sum      := term (('+'|'-') term)*
#   term     := coeff | coeff '*' power | power
#   power    := 't' ['^' exponent]
#   exponent := integer | '(' integer '/' integer ')'
#   coeff    := integer | integer '/' integer
#
# Whitespace is insignificant.  A leading sign on the first term is accepted.
# --------------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def take(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_exponent(s: _Scanner) -> Fraction:
    if s.peek() == "(":
        s.take("(")
        p = s.integer()
        s.take("/")
        q = s.integer()
        s.take(")")
        return Fraction(p, q)
    return Fraction(s.integer())


def _parse_term(s: _Scanner, sign: int) -> tuple[Fraction, Fraction]:
    """One term as (exponent, coefficient); exponents may be negative here."""
    coef = Fraction(sign)
    exp = Fraction(0)
    ch = s.peek()
    if ch == "t":
        s.take("t")
        if s.peek() == "^":
            s.take("^")
            exp = _parse_exponent(s)
        else:
            exp = Fraction(1)
        return exp, coef
    if not (ch.isdigit() or ch in "+-"):
        raise ParseError("expected a term", s.pos)
    n = s.integer()
    coef = coef * n
    if s.peek() == "/":
        s.take("/")
        coef = coef / s.integer()
    if s.peek() == "*":
        s.take("*")
        s.take("t")
        if s.peek() == "^":
            s.take("^")
            exp = _parse_exponent(s)
        else:
            exp = Fraction(1)
    return exp, coef


def _parse_sum(s: _Scanner) -> list[tuple[Fraction, Fraction]]:
    terms = []
    sign = 1
    if s.peek() == "-":
        s.take("-")
        sign = -1
    elif s.peek() == "+":
        s.take("+")
    terms.append(_parse_term(s, sign))
    while s.peek() in "+-":
        sign = 1 if s.peek() == "+" else -1
        s.pos += 1
        terms.append(_parse_term(s, sign))
    return terms


def _terms_to_element(terms: list[tuple[Fraction, Fraction]]) -> FieldElement:
    # Negative exponents are swept into the denominator as a single t-power.
    low = min((e for e, _ in terms), default=Fraction(0))
    if low < 0:
        num = PuiseuxPoly.from_terms((e - low, c) for e, c in terms)
        return FieldElement(num, PuiseuxPoly.monomial(-low))
    return FieldElement(PuiseuxPoly.from_terms(terms))


def parse_element(text: str) -> FieldElement:
    """Parse the element grammar; raises ParseError with the failing position."""
    s = _Scanner(text)
    if s.peek() == "(":
        s.take("(")
        num_terms = _parse_sum(s)
        s.take(")")
        s.take("/")
        s.take("(")
        den_terms = _parse_sum(s)
        s.take(")")
        if not s.at_end():
            raise ParseError("trailing input", s.pos)
        num = _terms_to_element(num_terms)
        den = _terms_to_element(den_terms)
        if den.is_zero:
            raise ParseError("zero denominator", s.pos)
        return num / den
    terms = _parse_sum(s)
    if not s.at_end():
        raise ParseError("trailing input", s.pos)
    return _terms_to_element(terms)


def _format_exponent(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def _format_term(e: Fraction, c: Fraction) -> str:
    """Unsigned rendering of |c| * t^e."""
    c = abs(c)
    if e == 0:
        return str(c)
    power = "t" if e == 1 else f"t^{_format_exponent(e)}"
    if c == 1:
        return power
    return f"{c}*{power}"


def format_poly(p: PuiseuxPoly) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.terms):
        body = _format_term(e, c)
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def format_element(x: FieldElement) -> str:
    """Render in the element grammar; parse_element(format_element(x)) == x."""
    if x.den == ONE_POLY:
        return format_poly(x.num)
    return f"({format_poly(x.num)})/({format_poly(x.den)})"
