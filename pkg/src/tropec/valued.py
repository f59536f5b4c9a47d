"""Exact elements of the discretely valued base field.

Elements are finite Laurent sums ``sum c_k * pi**k`` with rational
coefficients. Exponents live on a lattice ``(1/n)Z`` so that a ramified
extension ``K(pi**(1/n))`` is handled by the same type; the valuation is
normalized by ``v(pi) = 1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import NotInvertible, ParseError, ResidueCharUnsupported

INF = math.inf

__all__ = ["INF", "ValuedElement", "ResidueConfig", "as_element", "to_fraction", "fmt_q"]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to :class:`Fraction`."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise ParseError(f"not an exact rational: {x!r}") from exc
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fmt_q(q) -> str:
    """Format a rational as ``p`` or ``p/q``; infinity as ``"inf"``."""
    if q == INF:
        return "inf"
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class ValuedElement:
    """An element ``sum c_k pi^k`` with finitely many nonzero terms.

    Instances are immutable and hashable. Arithmetic with ``int`` and
    ``Fraction`` operands coerces them to constants.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                k = to_fraction(k)
                c = to_fraction(c)
                if c:
                    clean[k] = clean.get(k, 0) + c
                    if not clean[k]:
                        del clean[k]
        self._terms = tuple(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _from_clean(cls, d: dict) -> "ValuedElement":
        # d maps Fraction exponents to Fraction coefficients, zeros allowed
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((k, c) for k, c in d.items() if c))
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "ValuedElement":
        return cls({0: c})

    @classmethod
    def pi(cls, k=1, coeff=1) -> "ValuedElement":
        """``coeff * pi**k``."""
        return cls({k: coeff})

    @classmethod
    def zero(cls) -> "ValuedElement":
        return cls()

    @classmethod
    def one(cls) -> "ValuedElement":
        return cls({0: 1})

    # accessors ----------------------------------------------------------

    @property
    def terms(self):
        """Mapping exponent -> coefficient (a fresh dict)."""
        return dict(self._terms)

    def items(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def valuation(self):
        """Smallest exponent present; ``INF`` for zero."""
        if not self._terms:
            return INF
        return self._terms[0][0]

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[0][1]

    def coefficient(self, k) -> Fraction:
        k = to_fraction(k)
        for e, c in self._terms:
            if e == k:
                return c
        return Fraction(0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def lattice(self) -> int:
        """Least ``n`` with every exponent in ``(1/n)Z``."""
        n = 1
        for e, _ in self._terms:
            n = math.lcm(n, e.denominator)
        return n

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = as_element(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for k, c in other._terms:
            merged[k] = merged.get(k, 0) + c
        return ValuedElement._from_clean(merged)

    __radd__ = __add__

    def __neg__(self):
        return ValuedElement._from_clean({k: -c for k, c in self._terms})

    def __sub__(self, other):
        other = as_element(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_element(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_element(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return ValuedElement._from_clean(out)

    __rmul__ = __mul__

    def inverse(self) -> "ValuedElement":
        """Multiplicative inverse.

        Laurent sums are closed under inversion only for monomials; any other
        element raises :class:`NotInvertible` instead of returning a
        truncated series.
        """
        if not self._terms:
            raise NotInvertible("division by zero")
        if len(self._terms) != 1:
            raise NotInvertible(f"{self} is not a monomial; its inverse is not a finite Laurent sum")
        k, c = self._terms[0]
        return ValuedElement({-k: 1 / c})

    inv = inverse

    def __truediv__(self, other):
        other = as_element(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_element(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ValuedElement.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ValuedElement({0: other})
        if not isinstance(other, ValuedElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # text form ------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self._terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = fmt_q(mag)
            else:
                p = "pi" if k == 1 else (f"pi^{k.numerator}" if k.denominator == 1 else f"pi^({fmt_q(k)})")
                body = p if mag == 1 else f"{fmt_q(mag)}*{p}"
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"ValuedElement({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ValuedElement":
        """Parse ``c_k*pi^k + ...``; the inverse of ``str``."""
        return _parse_element(text)


def as_element(x):
    if isinstance(x, ValuedElement):
        return x
    if isinstance(x, (int, Fraction)):
        return ValuedElement({0: x})
    if isinstance(x, str):
        return ValuedElement.parse(x)
    return NotImplemented


_NUM = r"\d+(?:/\d+)?"
_TERM = re.compile(
    r"(?P<sign>[+-])?"
    r"(?:(?P<coef>" + _NUM + r")(?P<star>\*)?)?"
    r"(?P<pi>pi(?:\^(?:\((?P<ef>-?" + _NUM + r")\)|(?P<ei>-?\d+)))?)?"
)


def _strip_parens(s: str) -> str:
    while s.startswith("(") and s.endswith(")"):
        depth = 0
        for i, ch in enumerate(s):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(s) - 1:
                return s
        s = s[1:-1]
    return s


def _parse_element(text: str) -> ValuedElement:
    s = _strip_parens(re.sub(r"\s+", "", text))
    if not s:
        raise ParseError(f"empty element literal: {text!r}")
    terms = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        bad = (
            not m
            or m.end() == pos
            or (pos > 0 and not m.group("sign"))
            or not (m.group("coef") or m.group("pi"))
            or (m.group("star") and not m.group("pi"))
            or (m.group("coef") and m.group("pi") and not m.group("star"))
        )
        if bad:
            raise ParseError(f"cannot parse element literal {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("pi"):
            exp = Fraction(m.group("ef") or m.group("ei") or 1)
        else:
            exp = Fraction(0)
        terms[exp] = terms.get(exp, 0) + sign * coef
        pos = m.end()
    return ValuedElement(terms)


@dataclass(frozen=True)
class ResidueConfig:
    """Characteristic of the residue field (0, or a prime >= 5)."""

    residue_char: int = 0

    def __post_init__(self):
        p = self.residue_char
        if p < 0:
            raise ValueError("residue characteristic must be nonnegative")
        if p in (2, 3):
            raise ResidueCharUnsupported(f"residue characteristic {p} needs Tate's algorithm")
        if p and not _is_prime(p):
            raise ValueError(f"residue characteristic {p} is not prime")

    def divides(self, n: int) -> bool:
        """True when ``p > 0`` and ``p | n``."""
        return self.residue_char > 0 and n % self.residue_char == 0


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
