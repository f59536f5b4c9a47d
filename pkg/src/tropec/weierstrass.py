"""Weierstrass equations over K(t): invariants, changes of coordinates,
per-component minimality and S-minimal twists.

Minimality is decided by the exponent test

    kappa_z = floor(min(v_z(c4)/4, v_z(c6)/6, v_z(Delta)/12))

which is valid when the residue characteristic is 0 or at least 5. The
floor is taken on the valuation lattice ``(1/n)Z`` of the tree.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import SingularCurve, TwistInfeasible
from .functions import FactoredFunction, RationalFunction, as_rational
from .laplacian import LaplacianFunction, laplacian_apply
from .linalg import solve_integer
from .skeleton import SkeletonTree, gauss_valuation, specialize_divisor, vertex_representative
from .valued import INF, ResidueConfig, ValuedElement, as_element, fmt_q

__all__ = [
    "WeierstrassEquation",
    "WeierstrassTransform",
    "Invariants",
    "Profiles",
    "MinimalityReport",
    "invariants",
    "transform",
    "vertical_profile",
    "minimality_report",
    "construct_s_minimal_twist",
    "short_form_transform",
    "parse_function",
]


def parse_function(value) -> RationalFunction:
    """A K(t)-element from a factored string, a list of factored strings (summed), or a number."""
    if isinstance(value, (list, tuple)):
        out = RationalFunction.const(0)
        for s in value:
            out = out + parse_function(s)
        return out
    if isinstance(value, (int, Fraction, ValuedElement)):
        return RationalFunction.const(value)
    if isinstance(value, str):
        if value.strip() in ("0", "-0"):
            return RationalFunction.const(0)
        return FactoredFunction.parse(value).to_rational()
    return as_rational(value)


@dataclass(frozen=True)
class WeierstrassEquation:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over K(t)."""

    a1: RationalFunction
    a2: RationalFunction
    a3: RationalFunction
    a4: RationalFunction
    a6: RationalFunction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, parse_function(getattr(self, name)))

    @classmethod
    def short(cls, a, b) -> "WeierstrassEquation":
        """``y^2 = x^3 + a x + b``."""
        return cls(0, 0, 0, a, b)

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_short(self) -> bool:
        return self.a1.is_zero() and self.a2.is_zero() and self.a3.is_zero()

    def __eq__(self, other):
        if not isinstance(other, WeierstrassEquation):
            return NotImplemented
        return all(x == y for x, y in zip(self.coefficients, other.coefficients))

    __hash__ = None

    def to_json(self):
        return {"a": [str(a) for a in self.coefficients]}

    @classmethod
    def from_json(cls, data) -> "WeierstrassEquation":
        if isinstance(data, str):
            data = json.loads(data)
        a = data["a"]
        if len(a) != 5:
            raise ValueError("curve JSON needs exactly five coefficients a1, a2, a3, a4, a6")
        return cls(*a)


@dataclass(frozen=True)
class Invariants:
    b2: RationalFunction
    b4: RationalFunction
    b6: RationalFunction
    b8: RationalFunction
    c4: RationalFunction
    c6: RationalFunction
    disc: RationalFunction
    j: RationalFunction


def invariants(w: WeierstrassEquation, check: bool = True) -> Invariants:
    a1, a2, a3, a4, a6 = w.coefficients
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc.is_zero():
        raise SingularCurve("discriminant vanishes")
    j = c4 ** 3 / disc
    if check:
        assert 4 * b8 == b2 * b6 - b4 * b4
        assert c4 ** 3 - c6 * c6 == 1728 * disc
    return Invariants(b2, b4, b6, b8, c4, c6, disc, j)


@dataclass(frozen=True)
class WeierstrassTransform:
    """``x = u^2 x' + r``, ``y = u^3 y' + s u^2 x' + t``."""

    u: RationalFunction
    r: RationalFunction = None
    s: RationalFunction = None
    t: RationalFunction = None
    u_factored: FactoredFunction = None

    def __post_init__(self):
        u = self.u
        if isinstance(u, FactoredFunction) and self.u_factored is None:
            object.__setattr__(self, "u_factored", u)
        object.__setattr__(self, "u", parse_function(u) if not isinstance(u, FactoredFunction) else u.to_rational())
        for name in ("r", "s", "t"):
            val = getattr(self, name)
            object.__setattr__(self, name, parse_function(0 if val is None else val))
        if self.u.is_zero():
            raise ValueError("u must be nonzero")

    @classmethod
    def identity(cls) -> "WeierstrassTransform":
        return cls(1)

    def inverse(self) -> "WeierstrassTransform":
        u, r, s, t = self.u, self.r, self.s, self.t
        ui = u.inverse()
        return WeierstrassTransform(ui, -r * ui * ui, -s * ui, (r * s - t) * ui ** 3)

    def then(self, other: "WeierstrassTransform") -> "WeierstrassTransform":
        """Apply ``self`` first, then ``other`` to the result."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        uf = None
        if self.u_factored is not None and other.u_factored is not None:
            uf = self.u_factored * other.u_factored
        return WeierstrassTransform(
            u1 * u2,
            u1 * u1 * r2 + r1,
            u1 * s2 + s1,
            u1 ** 3 * t2 + s1 * u1 * u1 * r2 + t1,
            uf,
        )

    def to_json(self):
        out = {"u": str(self.u), "r": str(self.r), "s": str(self.s), "t": str(self.t)}
        if self.u_factored is not None:
            out["u_factored"] = str(self.u_factored)
        return out


def transform(w: WeierstrassEquation, tr: WeierstrassTransform, check: bool = True) -> WeierstrassEquation:
    a1, a2, a3, a4, a6 = w.coefficients
    u, r, s, t = tr.u, tr.r, tr.s, tr.t
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
    ui = u.inverse()
    out = WeierstrassEquation(n1 * ui, n2 * ui ** 2, n3 * ui ** 3, n4 * ui ** 4, n6 * ui ** 6)
    if check:
        before, after = invariants(w, check=False), invariants(out, check=False)
        assert u ** 12 * after.disc == before.disc
        assert u ** 4 * after.c4 == before.c4
        assert u ** 6 * after.c6 == before.c6
    return out


def short_form_transform(w: WeierstrassEquation) -> WeierstrassTransform:
    """The change of variables to ``y^2 = x^3 - c4/48 x - c6/864``.

    Divides by 2 and 3, so it is only integral when the residue
    characteristic is prime to 6.
    """
    inv = invariants(w, check=False)
    s = -w.a1 / 2
    r = -inv.b2 / 12
    t = -(w.a3 + r * w.a1) / 2
    return WeierstrassTransform(FactoredFunction(1), r, s, t)


@dataclass(frozen=True)
class Profiles:
    """Valuation profiles of the invariants; ``None`` for an identically zero invariant."""

    c4: LaplacianFunction
    c6: LaplacianFunction
    disc: LaplacianFunction
    j: LaplacianFunction


def vertical_profile(w: WeierstrassEquation, tree: SkeletonTree, inv: Invariants = None) -> Profiles:
    """Normalized Laplacians of c4, c6, Delta and j on the tree.

    c4, Delta and j must be adapted to the tree; the identity
    ``Delta(phi_f) = rho(div f)`` is asserted for each of them.
    """
    inv = inv or invariants(w, check=False)
    g = tree.graph()

    def prof(f, strict):
        if f.is_zero():
            return None
        phi = LaplacianFunction(tuple(gauss_valuation(v, f) for v in tree.vertices), tree.n_lattice)
        if strict:
            div = specialize_divisor(tree, f)
            assert laplacian_apply(g, phi) == div
        return phi

    return Profiles(prof(inv.c4, True), prof(inv.c6, False), prof(inv.disc, True), prof(inv.j, True))


def _lattice_floor(x, n: int) -> Fraction:
    return Fraction(math.floor(x * n), n)


@dataclass(frozen=True)
class VertexMinimality:
    v_c4: object
    v_c6: object
    v_disc: Fraction
    kappa: Fraction
    d: Fraction
    v_a: tuple

    def to_json(self):
        return {
            "v_c4": fmt_q(self.v_c4),
            "v_c6": fmt_q(self.v_c6),
            "v_disc": fmt_q(self.v_disc),
            "kappa": fmt_q(self.kappa),
            "d": fmt_q(self.d),
            "v_a": [fmt_q(x) for x in self.v_a],
        }


@dataclass(frozen=True)
class MinimalityReport:
    vertices: tuple

    @property
    def kappa(self):
        return tuple(x.kappa for x in self.vertices)

    @property
    def d(self):
        return tuple(x.d for x in self.vertices)

    def is_integral(self, at=None) -> bool:
        idx = range(len(self.vertices)) if at is None else at
        return all(all(va >= 0 for va in self.vertices[i].v_a) for i in idx)

    def is_minimal(self, at=None) -> bool:
        idx = range(len(self.vertices)) if at is None else at
        return self.is_integral(idx) and all(self.vertices[i].kappa == 0 for i in idx)

    def to_json(self):
        return [x.to_json() for x in self.vertices]


def _valuation(f: RationalFunction, v):
    if f.is_zero():
        return INF
    return gauss_valuation(v, f)


def minimality_report(w: WeierstrassEquation, tree: SkeletonTree, residue: ResidueConfig = None) -> MinimalityReport:
    """Per-vertex twist exponents ``kappa`` and minimal discriminant valuations ``d``."""
    residue = residue or ResidueConfig(0)
    inv = invariants(w, check=False)
    n = tree.n_lattice
    out = []
    for v in tree.vertices:
        vc4 = _valuation(inv.c4, v)
        vc6 = _valuation(inv.c6, v)
        vd = gauss_valuation(v, inv.disc)
        m = min(vc4 / 4, vc6 / 6, Fraction(vd) / 12)
        kappa = _lattice_floor(m, n)
        d = vd - 12 * kappa
        va = tuple(_valuation(a, v) for a in w.coefficients)
        out.append(VertexMinimality(vc4, vc6, vd, kappa, d, va))
    rep = MinimalityReport(tuple(out))
    for x in rep.vertices:
        assert x.d >= 0
    return rep


def construct_s_minimal_twist(
    w: WeierstrassEquation,
    tree: SkeletonTree,
    S=None,
    residue: ResidueConfig = None,
    extra_centers=(),
) -> WeierstrassTransform:
    """A transform making ``w`` minimal at every vertex in ``S`` (default: all).

    First moves to short form, then scales by
    ``u = pi^e0 * prod (t - c_i)^e_i`` with ``v_z(u) = kappa_z`` on ``S``. The
    centers ``c_i`` are one representative point per vertex (plus any
    ``extra_centers``); the exponents come from an integer linear solve.
    """
    residue = residue or ResidueConfig(0)
    S = sorted(range(len(tree.vertices)) if S is None else set(S))
    n = tree.n_lattice
    short = short_form_transform(w)
    report = minimality_report(w, tree, residue)
    kappa = report.kappa
    if all(kappa[z] == 0 for z in S):
        return short.then(WeierstrassTransform(FactoredFunction(1)))

    centers = [vertex_representative(tree, i) for i in range(len(tree.vertices))]
    for c in extra_centers:
        c = as_element(c)
        if c not in centers:
            centers.append(c)
    # columns: pi^(1/n), then (t - c) for each center; rows scaled by n
    rows = []
    rhs = []
    for z in S:
        vz = tree.vertices[z]
        row = [1]
        for c in centers:
            row.append(int(n * min((c - vz.center).valuation(), vz.r)))
        rows.append(row)
        rhs.append(int(n * kappa[z]))
    sol = solve_integer(rows, rhs)
    if sol is None:
        raise TwistInfeasible("no twist over the available centers attains kappa on S; add centers")
    u = FactoredFunction(ValuedElement.pi(Fraction(sol[0], n)), [(c, e) for c, e in zip(centers, sol[1:]) if e])
    for z in S:
        assert gauss_valuation(tree.vertices[z], u) == kappa[z]
    return short.then(WeierstrassTransform(u))
