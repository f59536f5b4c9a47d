"""SL2(Z/N) machinery and the Galois-theoretic consequences of the
reduction type on an edge: transvections, inertia chains under
subdivision, predicted fibers of torsion covers, Tate parameters, the
Hasse invariant and small division polynomials.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CapExceeded,
    HypothesisViolated,
    NotNonIntegralJ,
    NotTransvection,
    ResidueCharUnsupported,
    UndefinedHasse,
)
from .functions import RationalFunction
from .laplacian import SubgraphSelection, edge_slope
from .reduction import ReductionType, classify
from .skeleton import SkeletonTree, gauss_valuation
from .valued import ResidueConfig, _is_prime, fmt_q, to_fraction
from .weierstrass import WeierstrassEquation, invariants

__all__ = [
    "Sl2Matrix",
    "sl2_order",
    "generate_subgroup",
    "is_transvection",
    "fixed_line",
    "check_surjectivity",
    "InertiaChain",
    "inertia_chain",
    "predict_edge_fiber",
    "TransvectionCertificate",
    "transvection_check",
    "tate_parameter_valuation",
    "hasse_invariant",
    "hasse_valuation_parity",
    "division_polynomial",
    "borel_subgroup",
    "unipotent_subgroup",
    "prime_factors",
]


def prime_factors(n: int):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Sl2Matrix:
    """``[[a, b], [c, d]]`` modulo ``n`` with determinant 1; entries are kept reduced."""

    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")
        for k in "abcd":
            object.__setattr__(self, k, int(getattr(self, k)) % self.n)
        if (self.a * self.d - self.b * self.c) % self.n != 1:
            raise ValueError(f"determinant is not 1 mod {self.n}")

    @classmethod
    def identity(cls, n: int) -> "Sl2Matrix":
        return cls(1, 0, 0, 1, n)

    @classmethod
    def from_rows(cls, rows, n: int) -> "Sl2Matrix":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, n)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o: "Sl2Matrix") -> "Sl2Matrix":
        if o.n != self.n:
            raise ValueError("moduli differ")
        return Sl2Matrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.n,
        )

    __mul__ = __matmul__

    def inverse(self) -> "Sl2Matrix":
        return Sl2Matrix(self.d, -self.b, -self.c, self.a, self.n)

    def __pow__(self, k: int) -> "Sl2Matrix":
        base = self if k >= 0 else self.inverse()
        out = Sl2Matrix.identity(self.n)
        k = abs(k)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def trace(self) -> int:
        return (self.a + self.d) % self.n

    def apply(self, vec):
        x, y = vec
        return ((self.a * x + self.b * y) % self.n, (self.c * x + self.d * y) % self.n)

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def to_json(self):
        return {"rows": [[self.a, self.b], [self.c, self.d]], "modulus": self.n}


def sl2_order(n: int) -> int:
    """``|SL2(Z/n)| = n^3 prod_{p | n} (1 - 1/p^2)``."""
    if n < 2:
        raise ValueError("N must be at least 2")
    out = Fraction(n ** 3)
    for p in prime_factors(n):
        out *= 1 - Fraction(1, p * p)
    assert out.denominator == 1
    return int(out)


def generate_subgroup(gens, cap: int = 100_000) -> frozenset:
    """Closure of ``gens`` under multiplication (breadth first).

    In a finite group this is the generated subgroup. Raises
    :class:`CapExceeded` as soon as more than ``cap`` elements appear.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators must share a modulus")
    ident = Sl2Matrix.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"closure exceeds {cap} elements")
                queue.append(y)
    return frozenset(seen)


def is_transvection(m: Sl2Matrix) -> bool:
    """``m != I``, ``(m - I)^2 = 0`` and trace 2."""
    if m.is_identity():
        return False
    n = m.n
    a, b, c, d = m.a - 1, m.b, m.c, m.d - 1
    sq = ((a * a + b * c) % n, (a * b + b * d) % n, (c * a + d * c) % n, (c * b + d * d) % n)
    return sq == (0, 0, 0, 0) and m.trace() == 2 % n


def _normalize_line(vec, n):
    x, y = vec[0] % n, vec[1] % n
    if x:
        inv = pow(x, -1, n)
        return (1, y * inv % n)
    return (0, 1)


def fixed_line(m: Sl2Matrix):
    """The line fixed by a transvection, as ``(1, y)`` or ``(0, 1)``.

    It is the image of ``m - I``; the modulus must be prime.
    """
    if not _is_prime(m.n):
        raise ValueError("fixed lines need a prime modulus")
    if not is_transvection(m):
        raise NotTransvection(f"{m.rows()} is not a transvection mod {m.n}")
    col1 = ((m.a - 1) % m.n, m.c % m.n)
    col2 = (m.b % m.n, (m.d - 1) % m.n)
    vec = col1 if col1 != (0, 0) else col2
    line = _normalize_line(vec, m.n)
    assert m.apply(line) == line
    return line


def check_surjectivity(transvections, cap: int = 100_000) -> bool:
    """Whether two of the given transvections have different fixed lines.

    That is enough to generate all of SL2(F_l); when it happens the
    closure is computed and its size is checked.
    """
    ts = list(transvections)
    if not ts:
        return False
    lines = {fixed_line(t) for t in ts}
    if len(lines) < 2:
        return False
    group = generate_subgroup(ts, cap)
    assert len(group) == sl2_order(ts[0].n)
    return True


def borel_subgroup(n: int) -> frozenset:
    """Upper triangular matrices mod ``n`` (the level structure of X0(n))."""
    return frozenset(
        Sl2Matrix(a, b, 0, pow(a, -1, n), n) for a in range(n) if math.gcd(a, n) == 1 for b in range(n)
    )


def unipotent_subgroup(n: int) -> frozenset:
    """Upper triangular matrices with diagonal ``(1, 1)`` (the level structure of X1(n))."""
    return frozenset(Sl2Matrix(1, b, 0, 1, n) for b in range(n))


@dataclass(frozen=True)
class InertiaChain:
    length: int
    inertia_order: int
    orders: tuple

    def to_json(self):
        return {"length": self.length, "inertia_order": self.inertia_order, "orders": list(self.orders)}


def inertia_chain(n: int, m: int) -> InertiaChain:
    """Inertia orders ``m / gcd(i, m)`` at the subdivision points ``i = 1..n-1`` of an edge."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    return InertiaChain(n, m, tuple(m // math.gcd(i, m) for i in range(1, n)))


def predict_edge_fiber(reduction, group_order: int, ell=None, delta_j=None, length=1, residue: ResidueConfig = None, torsion_level=None, image_order=None):
    """Number and length of the edges lying above an edge of the given type.

    Good reduction: the torsion cover is unramified over the edge, giving
    ``(|G|, l)``. Multiplicative reduction with a transvection in inertia:
    ``(|G|/l, l(e)/l)``. ``image_order`` (the order of the image of the
    mod-l representation) is used for the residue-characteristic test when
    given; otherwise ``group_order`` is.
    """
    residue = residue or ResidueConfig(0)
    reduction = ReductionType(reduction)
    length = to_fraction(length)
    if group_order < 1:
        raise ValueError("group order must be positive")
    if reduction == ReductionType.GOOD:
        if torsion_level is not None and residue.divides(torsion_level):
            raise HypothesisViolated("char_not_dividing_N", "residue characteristic divides the torsion level")
        return group_order, length
    if reduction != ReductionType.MULTIPLICATIVE:
        raise HypothesisViolated("reduction_type", f"no fiber prediction for {reduction.value} reduction")
    if ell is None or not _is_prime(ell) or ell < 3:
        raise HypothesisViolated("ell_prime_at_least_3", "l must be a prime >= 3")
    if delta_j is None:
        raise HypothesisViolated("ell_not_dividing_delta", "slope of phi_j is required")
    if int(delta_j) % ell == 0:
        raise HypothesisViolated("ell_not_dividing_delta", f"{ell} divides the slope {delta_j}")
    checked = image_order if image_order is not None else group_order
    if residue.divides(checked):
        raise HypothesisViolated("char_not_dividing_image", "residue characteristic divides the image order")
    if group_order % ell:
        raise HypothesisViolated("ell_divides_group_order", f"{ell} does not divide |G| = {group_order}")
    return group_order // ell, length / ell


@dataclass(frozen=True)
class TransvectionCertificate:
    edge: int
    ell: int
    delta_j: Fraction
    verdict: bool
    reduction: ReductionType
    matrix: Sl2Matrix = None
    predicted_fiber: tuple = None
    failed: tuple = ()
    fiber_error: str = None

    def to_json(self):
        return {
            "edge": self.edge,
            "ell": self.ell,
            "delta_j": fmt_q(self.delta_j),
            "verdict": self.verdict,
            "reduction": self.reduction.value,
            "matrix": self.matrix.to_json() if self.matrix else None,
            "predicted_fiber": [self.predicted_fiber[0], fmt_q(self.predicted_fiber[1])] if self.predicted_fiber else None,
            "failed": list(self.failed),
            "fiber_error": self.fiber_error,
        }


def transvection_check(w: WeierstrassEquation, tree: SkeletonTree, edge: int, ell: int, group_order: int, residue: ResidueConfig = None, image_order=None) -> TransvectionCertificate:
    """Evaluate the hypotheses under which inertia over ``edge`` contains a transvection mod ``ell``.

    These are: multiplicative reduction on the open edge, ``ell >= 3``
    prime, ``ell`` not dividing the slope of ``phi_j`` and the residue
    characteristic not dividing the group (or image) order.
    """
    residue = residue or ResidueConfig(0)
    cls = classify(w, tree, SubgraphSelection(frozenset(), {edge}), residue)
    reg = cls.tree
    g = reg.graph()
    # slope of phi_j along the sub-edges (uniform since j is adapted)
    jf = invariants(w, check=False).j
    phi_j = [gauss_valuation(v, jf) for v in reg.vertices]
    slopes = set()
    for e in cls.selection.edges:
        slopes.add(abs(edge_slope(g, phi_j, e)))
    assert len(slopes) == 1, slopes
    delta = slopes.pop()
    failed = []
    if cls.verdict != ReductionType.MULTIPLICATIVE:
        failed.append("reduction_type")
    if not (_is_prime(ell) and ell >= 3):
        failed.append("ell_prime_at_least_3")
    if delta.denominator != 1 or delta.numerator % ell == 0:
        failed.append("ell_not_dividing_delta")
    if residue.divides(image_order if image_order is not None else group_order):
        failed.append("char_not_dividing_image")
    if failed:
        return TransvectionCertificate(edge, ell, delta, False, cls.verdict, failed=tuple(failed))
    length = tree.edges[edge][2]
    # an inertia element of order ell forces ell | |G|; otherwise the inputs are inconsistent
    fiber, fiber_error = None, None
    try:
        fiber = predict_edge_fiber(ReductionType.MULTIPLICATIVE, group_order, ell, delta, length, residue, image_order=image_order)
    except HypothesisViolated as exc:
        fiber_error = exc.hypothesis
    tau = Sl2Matrix(1, 1, 0, 1, ell)
    return TransvectionCertificate(edge, ell, delta, True, cls.verdict, tau, fiber, (), fiber_error)


def tate_parameter_valuation(phi_j, v: int) -> Fraction:
    """``v(q) = -v(j)`` at a vertex where ``j`` is non-integral."""
    x = to_fraction(phi_j[v])
    if x >= 0:
        raise NotNonIntegralJ(f"v(j) = {fmt_q(x)} is not negative at vertex {v}")
    return -x


def hasse_invariant(w: WeierstrassEquation) -> RationalFunction:
    """``-c4/c6``, whose square class decides whether multiplicative reduction is split."""
    inv = invariants(w, check=False)
    if inv.c4.is_zero() or inv.c6.is_zero():
        raise UndefinedHasse("Hasse invariant needs c4 and c6 nonzero (j not 0 or 1728)")
    return -inv.c4 / inv.c6


def hasse_valuation_parity(w: WeierstrassEquation, tree: SkeletonTree):
    """Per vertex, ``n * v(-c4/c6) mod 2`` on the tree's value lattice.

    A u-twist multiplies the invariant by ``u^-2``, so the parity is a
    necessary condition for being a square that does not depend on the
    chosen equation.
    """
    h = hasse_invariant(w)
    n = tree.n_lattice
    out = []
    for v in tree.vertices:
        val = gauss_valuation(v, h) * n
        out.append(int(val) % 2 if val.denominator == 1 else None)
    return tuple(out)


def division_polynomial(w: WeierstrassEquation, n: int, residue: ResidueConfig = None):
    """The ``n``-division polynomial (``n`` in {2, 3}) as coefficients in ``x``.

    Works on the short form ``y^2 = x^3 + A x + B`` with ``A = -c4/48`` and
    ``B = -c6/864``. Returns a list of K(t)-coefficients, constant term first.
    """
    if residue is not None and residue.residue_char in (2, 3):
        raise ResidueCharUnsupported("short form needs residue characteristic prime to 6")
    if w.is_short():
        a, b = w.a4, w.a6
    else:
        inv = invariants(w, check=False)
        a, b = -inv.c4 / 48, -inv.c6 / 864
    zero = RationalFunction.const(0)
    if n == 2:
        return [b, a, zero, RationalFunction.const(1)]
    if n == 3:
        return [-(a * a), 12 * b, 6 * a, zero, RationalFunction.const(3)]
    raise ValueError("only N = 2 and N = 3 are supported")


def format_x_polynomial(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        cs = str(c)
        if " " in cs:
            cs = f"({cs})"
        mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mon:
            terms.append(cs)
        elif cs == "1":
            terms.append(mon)
        elif cs == "-1":
            terms.append("-" + mon)
        else:
            terms.append(f"{cs}*{mon}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out
