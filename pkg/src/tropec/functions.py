"""Elements of the function field K(t).

Three representations are used:

* :class:`Poly` -- an expanded polynomial in ``t`` with coefficients in K,
  stored as a flat map ``(t-degree, pi-exponent) -> rational``.
* :class:`RationalFunction` -- a quotient of two :class:`Poly`.
* :class:`FactoredFunction` -- ``content * prod (t - root)**mult`` with all
  roots in K.

Gauss valuations are available for both the expanded form (Taylor
coefficients at the disk center) and the factored form (the min-formula over
roots); the two routes are independent and cross-checked in the tests.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import NotInvertible, ParseError
from .valued import INF, ValuedElement, as_element, fmt_q, to_fraction

__all__ = ["Poly", "RationalFunction", "FactoredFunction", "as_rational", "newton_slopes"]


class Poly:
    """Polynomial in ``t`` over K. Immutable."""

    __slots__ = ("_c", "_hash", "_taylor")

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for (d, e), c in coeffs.items():
                if c:
                    key = (int(d), to_fraction(e))
                    clean[key] = clean.get(key, 0) + c
                    if not clean[key]:
                        del clean[key]
        self._c = clean
        self._hash = None
        self._taylor = {}

    @classmethod
    def from_coeffs(cls, coeffs) -> "Poly":
        """Build from a list ``[a_0, a_1, ...]`` of K-elements (low degree first)."""
        out = {}
        for d, a in enumerate(coeffs):
            for e, c in as_element(a).items():
                out[(d, e)] = c
        return cls(out)

    @classmethod
    def const(cls, a) -> "Poly":
        return cls.from_coeffs([a])

    @classmethod
    def t(cls) -> "Poly":
        return cls({(1, 0): 1})

    @classmethod
    def linear(cls, root) -> "Poly":
        """``t - root``."""
        root = as_element(root)
        return cls({(1, 0): 1, **{(0, e): -c for e, c in root.items()}})

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        return max((d for d, _ in self._c), default=-1)

    def low_degree(self) -> int:
        """Exponent of the largest power of ``t`` dividing the polynomial."""
        return min((d for d, _ in self._c), default=0)

    def shift(self, k: int) -> "Poly":
        """``t^k`` times the polynomial; ``k`` may be negative down to ``-low_degree()``."""
        return Poly({(d + k, e): c for (d, e), c in self._c.items()})

    def coeff(self, d: int) -> ValuedElement:
        return ValuedElement({e: c for (dd, e), c in self._c.items() if dd == d})

    def coeffs(self) -> list:
        return [self.coeff(d) for d in range(self.degree() + 1)]

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def lattice(self) -> int:
        n = 1
        for _, e in self._c:
            n = math.lcm(n, e.denominator)
        return n

    def monomial_content(self):
        """``(c, e)`` if the polynomial is the single term ``c*pi^e`` (degree 0), else ``None``."""
        if len(self._c) == 1:
            (d, e), c = next(iter(self._c.items()))
            if d == 0:
                return c, e
        return None

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (d1, e1), c1 in self._c.items():
            for (d2, e2), c2 in other._c.items():
                k = (d1 + d2, e1 + e2)
                out[k] = out.get(k, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __call__(self, a) -> ValuedElement:
        a = as_element(a)
        acc = ValuedElement.zero()
        for c in reversed(self.coeffs()):
            acc = acc * a + c
        return acc

    # valuations -----------------------------------------------------------

    def taylor(self, center) -> list:
        """Coefficients ``b_k`` with ``self = sum b_k (t - center)^k``."""
        center = as_element(center)
        cached = self._taylor.get(center)
        if cached is not None:
            return list(cached)
        # repeated synthetic division by (t - center)
        work = list(self.coeffs())
        out = []
        while work:
            acc = ValuedElement.zero()
            quot = []
            for c in reversed(work):
                acc = acc * center + c if center else c
                quot.append(acc)
            out.append(quot.pop())
            work = quot[::-1]
        self._taylor[center] = tuple(out)
        return out

    def gauss_valuation(self, center, r):
        """Valuation on the closed disk ``v(t - center) >= r``; ``INF`` for zero."""
        r = to_fraction(r)
        best = INF
        for k, b in enumerate(self.taylor(center)):
            vb = b.valuation()
            if vb != INF:
                best = min(best, vb + k * r)
        return best

    def __str__(self):
        return _fmt_poly(self)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, ValuedElement)):
        return Poly.const(x)
    return NotImplemented


def _fmt_coeff(a: ValuedElement) -> str:
    s = str(a)
    return f"({s})" if " " in s else s


def _fmt_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for d in range(p.degree(), -1, -1):
        a = p.coeff(d)
        if not a:
            continue
        if d == 0:
            parts.append(_fmt_coeff(a))
            continue
        mono = "t" if d == 1 else f"t^{d}"
        if a == 1:
            parts.append(mono)
        elif a == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_fmt_coeff(a)}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def newton_slopes(poly: Poly, center, r):
    """Right and left slopes at radius ``r`` of ``s -> v_{center,s}(poly)``.

    Returns ``(open_count, closed_count)``: the smallest and largest index
    attaining the minimum, which count (over an algebraic closure) the roots
    in the open disk ``v(t-center) > r`` and the closed disk ``>= r``.
    """
    r = to_fraction(r)
    vals = []
    for k, b in enumerate(poly.taylor(center)):
        vb = b.valuation()
        if vb != INF:
            vals.append((vb + k * r, k))
    if not vals:
        raise NotInvertible("zero polynomial has no Newton polygon")
    m = min(v for v, _ in vals)
    ks = [k for v, k in vals if v == m]
    return min(ks), max(ks)


def newton_breaks(poly: Poly, center, lo, hi) -> set:
    """Radii strictly between ``lo`` and ``hi`` where the Gauss valuation bends."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    pts = []
    for k, b in enumerate(poly.taylor(center)):
        vb = b.valuation()
        if vb != INF:
            pts.append((k, vb))
    out = set()
    for i, (k1, v1) in enumerate(pts):
        for k2, v2 in pts[i + 1:]:
            s = (v1 - v2) / (k2 - k1)
            if lo < s < hi:
                out.add(s)
    return out


class RationalFunction:
    """``num / den`` with ``num, den`` polynomials over K; no gcd reduction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        den = Poly.const(1) if den is None else (_as_poly(den) if not isinstance(den, Poly) else den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFunction needs polynomial operands")
        if den.is_zero():
            raise NotInvertible("zero denominator")
        mc = den.monomial_content()
        if mc is not None:
            c, e = mc
            num = num * ValuedElement({-e: 1 / c})
            den = Poly.const(1)
        elif num.is_zero():
            den = Poly.const(1)
        else:
            # cancel the common power of t, then make the denominator monic
            # when its leading coefficient is invertible
            k = min(num.low_degree(), den.low_degree())
            if k:
                num, den = num.shift(-k), den.shift(-k)
            lead = den.coeff(den.degree())
            if lead.is_monomial() and lead != 1:
                inv = lead.inverse()
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @classmethod
    def const(cls, a) -> "RationalFunction":
        return cls(Poly.const(a))

    @classmethod
    def t(cls) -> "RationalFunction":
        return cls(Poly.t())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Poly.const(1)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def lattice(self) -> int:
        return math.lcm(self.num.lattice(), self.den.lattice())

    def __add__(self, other):
        other = as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise NotInvertible("division by zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __call__(self, a) -> ValuedElement:
        return self.num(a) / self.den(a)

    def gauss_valuation(self, center, r):
        return self.num.gauss_valuation(center, r) - self.den.gauss_valuation(center, r)

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def as_rational(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, FactoredFunction):
        return x.to_rational()
    if isinstance(x, Poly):
        return RationalFunction(x)
    if isinstance(x, (int, Fraction, ValuedElement)):
        return RationalFunction(Poly.const(x))
    return NotImplemented


class FactoredFunction:
    """``content * prod (t - root)^mult`` with roots in K.

    ``factors`` is stored as a sorted tuple of ``(root, mult)`` with distinct
    roots and nonzero multiplicities.
    """

    __slots__ = ("content", "factors")

    def __init__(self, content=1, factors=()):
        content = as_element(content)
        if content.is_zero():
            raise NotInvertible("a factored function has nonzero content")
        merged = {}
        for root, m in factors:
            root = as_element(root)
            merged[root] = merged.get(root, 0) + int(m)
        self.content = content
        self.factors = tuple(sorted(((r, m) for r, m in merged.items() if m), key=lambda rm: (str(rm[0]), rm[1])))

    @classmethod
    def t(cls) -> "FactoredFunction":
        return cls(1, [(0, 1)])

    def degree(self) -> int:
        """Net degree ``sum mult`` (zeros minus poles at finite points)."""
        return sum(m for _, m in self.factors)

    def roots(self):
        return [r for r, _ in self.factors]

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ValuedElement)):
            other = FactoredFunction(other)
        if not isinstance(other, FactoredFunction):
            return NotImplemented
        return FactoredFunction(self.content * other.content, self.factors + other.factors)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return FactoredFunction(self.content ** n, [(r, m * n) for r, m in self.factors])

    def inverse(self) -> "FactoredFunction":
        return self ** -1

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, ValuedElement)):
            other = FactoredFunction(other)
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, FactoredFunction):
            return NotImplemented
        return self.content == other.content and self.factors == other.factors

    def __hash__(self):
        return hash((self.content, self.factors))

    def to_rational(self) -> RationalFunction:
        num = Poly.const(self.content)
        den = Poly.const(1)
        for r, m in self.factors:
            lin = Poly.linear(r)
            if m > 0:
                num = num * lin ** m
            else:
                den = den * lin ** (-m)
        return RationalFunction(num, den)

    def gauss_valuation(self, center, r):
        """``v(content) + sum m_i * min(v(root_i - center), r)``."""
        center = as_element(center)
        r = to_fraction(r)
        total = self.content.valuation()
        for root, m in self.factors:
            total += m * min((root - center).valuation(), r)
        return total

    def __call__(self, a) -> ValuedElement:
        return self.to_rational()(a)

    def __str__(self):
        parts = [_fmt_coeff(self.content) if self.content != 1 or not self.factors else None]
        for root, m in self.factors:
            if root.is_zero():
                lin = "(t)"
            else:
                rs = str(-root)
                if rs.startswith("-"):
                    lin = f"(t - {_paren(str(root))})"
                else:
                    lin = f"(t + {_paren(rs)})"
            parts.append(lin if m == 1 else f"{lin}^{m}")
        return " * ".join(p for p in parts if p)

    def __repr__(self):
        return f"FactoredFunction({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "FactoredFunction":
        """Parse ``"c * (t - r1)^m1 * (t + r2)^m2"``; every factor in ``t`` is parenthesized."""
        return _parse_factored(text)


def _paren(s: str) -> str:
    return f"({s})" if " " in s else s


_LIN = re.compile(r"\(\s*t\s*(?:([+-])\s*((?:[^()]|\([^()]*\))+?))?\s*\)\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?)?")


def _parse_factored(text: str) -> FactoredFunction:
    s = text.strip()
    if not s:
        raise ParseError("empty factored function")
    factors = []

    def take(m):
        sign, lit, mult = m.group(1), m.group(2), m.group(3)
        root = ValuedElement.zero()
        if sign:
            root = as_element(lit)
            if sign == "+":
                root = -root
        factors.append((root, int(mult) if mult else 1))
        return " "

    rest = _LIN.sub(take, s)
    rest = re.sub(r"\s*\*\s*", "*", rest.strip())
    rest = rest.strip("* ")
    if "t" in rest.replace("pi", ""):
        raise ParseError(f"unparenthesized factor in t: {text!r}")
    content = _parse_content(rest) if rest else ValuedElement.one()
    return FactoredFunction(content, factors)


def _parse_content(piece: str) -> ValuedElement:
    # leftover content may be a product of literals such as "-64*(1 + pi)"
    chunks, depth, cur = [], 0, ""
    for ch in piece:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            chunks.append(cur)
            cur = ""
            continue
        cur += ch
    chunks.append(cur)
    # re-glue "3*pi^2" style literals: a chunk starting with "pi" belongs to its predecessor
    glued = []
    for c in chunks:
        c = c.strip()
        if not c:
            continue
        if c.startswith("pi") and glued and not glued[-1].endswith(")"):
            glued[-1] = glued[-1] + "*" + c
        else:
            glued.append(c)
    out = ValuedElement.one()
    for c in glued:
        out = out * as_element(c)
    return out


def fmt_value(v) -> str:
    """Format a valuation (rational or ``INF``)."""
    return fmt_q(v)
