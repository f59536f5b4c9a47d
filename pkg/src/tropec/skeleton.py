"""Semistable models of the projective line as trees of disks.

A component of the special fiber is the Gauss point of a closed disk
``{v(t - center) >= r}``. Edges join nested disks with no vertex between
them; the edge length is the radius difference. The top disk (smallest
radius) is the root, and the point at infinity retracts onto it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidModel, ModelNotAdapted
from .functions import FactoredFunction, Poly, RationalFunction, as_rational, newton_breaks, newton_slopes
from .laplacian import GraphDivisor, LaplacianFunction, MetricGraph
from .valued import INF, ValuedElement, as_element, fmt_q, to_fraction

__all__ = [
    "DiskVertex",
    "EdgePoint",
    "SkeletonTree",
    "gauss_valuation",
    "retract_point",
    "specialize_divisor",
    "regularize",
    "valuation_profile",
    "vertex_representative",
]


class DiskVertex:
    """The closed disk ``{v(t - center) >= r}``.

    Two disks are equal when they coincide as sets: same radius and centers
    at distance at most the radius.
    """

    __slots__ = ("center", "r")

    def __init__(self, center, r):
        self.center = as_element(center)
        self.r = to_fraction(r)
        if self.r < 0:
            raise InvalidModel("radius parameter must be nonnegative")

    def contains(self, a) -> bool:
        return (as_element(a) - self.center).valuation() >= self.r

    def contains_disk(self, other: "DiskVertex") -> bool:
        return other.r >= self.r and self.contains(other.center)

    def __eq__(self, other):
        if not isinstance(other, DiskVertex):
            return NotImplemented
        return self.r == other.r and (self.center - other.center).valuation() >= self.r

    def __hash__(self):
        return hash(self.r)

    def __repr__(self):
        return f"DiskVertex({str(self.center)!r}, {fmt_q(self.r)!r})"

    def to_json(self):
        return {"center": str(self.center), "r": fmt_q(self.r)}


@dataclass(frozen=True)
class EdgePoint:
    """A point strictly inside edge ``edge``, given as a disk on the child's line."""

    edge: int
    disk: DiskVertex


@dataclass(frozen=True)
class SkeletonTree:
    """Tree of disk vertices; ``edges`` are ``(i, j, length)``.

    ``chains`` is filled by :func:`regularize`: for each original edge, the
    vertex indices along it from its first endpoint to its second.
    """

    vertices: tuple
    edges: tuple
    weights: tuple = None
    n_lattice: int = 1
    chains: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((int(i), int(j), to_fraction(L)) for i, j, L in self.edges))
        w = self.weights if self.weights is not None else (0,) * len(self.vertices)
        object.__setattr__(self, "weights", tuple(int(x) for x in w))
        self._validate()

    # structure --------------------------------------------------------------

    def _validate(self):
        n = len(self.vertices)
        if n == 0:
            raise InvalidModel("a model needs at least one component")
        if len(self.edges) != n - 1:
            raise InvalidModel("the intersection graph of a model of P^1 is a tree")
        self.graph()  # connectivity, loops
        lat = self.n_lattice
        for v in self.vertices:
            if (v.r * lat).denominator != 1:
                raise InvalidModel(f"radius {fmt_q(v.r)} is off the 1/{lat} lattice")
        for a in range(n):
            for b in range(a + 1, n):
                if self.vertices[a] == self.vertices[b]:
                    raise InvalidModel(f"vertices {a} and {b} are the same disk")
        parent = {}
        for k, (i, j, length) in enumerate(self.edges):
            vi, vj = self.vertices[i], self.vertices[j]
            if vi.contains_disk(vj) and vi.r < vj.r:
                p, c = i, j
            elif vj.contains_disk(vi) and vj.r < vi.r:
                p, c = j, i
            else:
                raise InvalidModel(f"edge {k} joins disks that are not nested")
            if length != self.vertices[c].r - self.vertices[p].r:
                raise InvalidModel(f"edge {k} has length {fmt_q(length)}, expected the radius gap")
            if c in parent:
                raise InvalidModel(f"vertex {c} has two parents")
            parent[c] = (p, k)
        # no vertex strictly inside an edge segment
        for k, (i, j, _) in enumerate(self.edges):
            p, c = self.edge_parent_child(k, parent)
            lo, hi = self.vertices[p].r, self.vertices[c].r
            for m, v in enumerate(self.vertices):
                if lo < v.r < hi and (self.vertices[c].center - v.center).valuation() >= v.r:
                    raise InvalidModel(f"vertex {m} lies inside edge {k}")
        # sibling edges leave the parent in distinct directions
        children = {}
        for c, (p, _) in parent.items():
            children.setdefault(p, []).append(c)
        for p, cs in children.items():
            rp = self.vertices[p].r
            for x in range(len(cs)):
                for y in range(x + 1, len(cs)):
                    d = (self.vertices[cs[x]].center - self.vertices[cs[y]].center).valuation()
                    if d > rp:
                        raise InvalidModel(f"edges to vertices {cs[x]} and {cs[y]} overlap below vertex {p}")
        object.__setattr__(self, "_parent", parent)
        object.__setattr__(self, "_children", {p: tuple(sorted(cs)) for p, cs in children.items()})
        roots = [v for v in range(n) if v not in parent]
        object.__setattr__(self, "_root", roots[0])

    def edge_parent_child(self, k, parent=None):
        parent = parent if parent is not None else self._parent
        i, j, _ = self.edges[k]
        return (i, j) if parent.get(j, (None,))[0] == i else (j, i)

    @property
    def root(self) -> int:
        """Index of the top disk; the point at infinity retracts here."""
        return self._root

    def parent(self, v):
        return self._parent.get(v, (None, None))[0]

    def children(self, v):
        return self._children.get(v, ())

    def graph(self) -> MetricGraph:
        return MetricGraph(len(self.vertices), self.edges, self.weights)

    def is_regular(self) -> bool:
        """All edges of unit length in the lattice normalization (``1/n_lattice``)."""
        return all(L == Fraction(1, self.n_lattice) for _, _, L in self.edges)

    def find_edge(self, a: int, b: int) -> int:
        for k, (i, j, _) in enumerate(self.edges):
            if {i, j} == {a, b}:
                return k
        raise KeyError(f"no edge between {a} and {b}")

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [[i, j, fmt_q(L)] for i, j, L in self.edges],
            "n_lattice": self.n_lattice,
        }
        if any(self.weights):
            out["weights"] = list(self.weights)
        return out

    @classmethod
    def from_json(cls, data) -> "SkeletonTree":
        if isinstance(data, str):
            data = json.loads(data)
        verts = [DiskVertex(ValuedElement.parse(str(v["center"])), to_fraction(str(v["r"]))) for v in data["vertices"]]
        edges = [(e[0], e[1], to_fraction(str(e[2]))) for e in data["edges"]]
        lat = int(data.get("n_lattice", 1))
        return cls(tuple(verts), tuple(edges), data.get("weights"), lat)

    @classmethod
    def chain(cls, center, radii) -> "SkeletonTree":
        """Vertices on one line ``center`` at the given increasing radii."""
        radii = [to_fraction(r) for r in radii]
        verts = tuple(DiskVertex(center, r) for r in radii)
        edges = tuple((i, i + 1, radii[i + 1] - radii[i]) for i in range(len(radii) - 1))
        lat = 1
        for r in radii:
            lat = math.lcm(lat, r.denominator)
        return cls(verts, edges, None, lat)


def gauss_valuation(v: DiskVertex, f):
    """Valuation of ``f`` at the Gauss point of the disk ``v``.

    :class:`FactoredFunction` uses ``v(content) + sum m_i min(v(root_i - c), r)``;
    expanded functions use the minimum over Taylor coefficients at the center.
    """
    if isinstance(f, FactoredFunction):
        return f.gauss_valuation(v.center, v.r)
    f = as_rational(f)
    if f is NotImplemented:
        raise TypeError("expected a function of t")
    if f.is_zero():
        raise ValueError("the zero function has no valuation")
    return f.gauss_valuation(v.center, v.r)


def _retract(tree: SkeletonTree, a: ValuedElement, cap=INF):
    """Deepest tree point containing ``a`` (disk radius at most ``cap``).

    Returns ``(radius, "v", index)`` or ``(radius, "e", edge)``; falls back to
    the root when the tree does not meet the path from ``a`` to infinity.
    """
    best = None
    for i, v in enumerate(tree.vertices):
        if v.r <= cap and v.contains(a):
            if best is None or v.r > best[0]:
                best = (v.r, "v", i)
    for k in range(len(tree.edges)):
        p, c = tree.edge_parent_child(k)
        rp, rc = tree.vertices[p].r, tree.vertices[c].r
        s = min((a - tree.vertices[c].center).valuation(), rc, cap)
        if rp < s < rc and (best is None or s > best[0]):
            best = (s, "e", k)
    if best is None:
        return tree.vertices[tree.root].r, "v", tree.root
    return best


def retract_point(tree: SkeletonTree, a):
    """Retraction of the point ``t = a`` (or of a disk) onto the tree.

    Returns the :class:`DiskVertex` of the tree, or an :class:`EdgePoint`
    when the retraction lies strictly inside an edge.
    """
    if isinstance(a, DiskVertex):
        s, kind, idx = _retract(tree, a.center, a.r)
        center = a.center
    else:
        center = as_element(a)
        s, kind, idx = _retract(tree, center)
    if kind == "v":
        return tree.vertices[idx]
    p, c = tree.edge_parent_child(idx)
    return EdgePoint(idx, DiskVertex(tree.vertices[c].center, s))


def retract_index(tree: SkeletonTree, a) -> int:
    """Vertex index of the retraction of ``a``; raises if it is inside an edge."""
    a = as_element(a)
    s, kind, idx = _retract(tree, a)
    if kind != "v":
        raise ModelNotAdapted(f"point {a} retracts to the interior of edge {idx} (radius {fmt_q(s)})")
    return idx


def specialize_divisor(tree: SkeletonTree, f) -> GraphDivisor:
    """Specialization of ``div(f)`` on the tree.

    Factored input retracts each root; expanded input counts roots per disk
    with Newton polygons (so roots need not be K-rational). The pole or zero
    at infinity lands on the root vertex.
    """
    n = len(tree.vertices)
    if isinstance(f, FactoredFunction):
        out = [0] * n
        for root, m in f.factors:
            out[retract_index(tree, root)] += m
        out[tree.root] -= f.degree()
        return GraphDivisor(out)
    f = as_rational(f)
    if f.is_zero():
        raise ValueError("the zero function has no divisor")
    _check_adapted(tree, f)
    num = _root_counts(tree, f.num)
    den = _root_counts(tree, f.den)
    out = [a - b for a, b in zip(num, den)]
    out[tree.root] -= f.num.degree() - f.den.degree()
    return GraphDivisor(out)


def _root_counts(tree: SkeletonTree, p: Poly):
    counts = []
    for i, v in enumerate(tree.vertices):
        # every root outside the top disk retracts to it as well
        closed = p.degree() if i == tree.root else newton_slopes(p, v.center, v.r)[1]
        inside_children = 0
        for c in tree.children(i):
            open_count, _ = newton_slopes(p, tree.vertices[c].center, v.r)
            inside_children += open_count
        counts.append(closed - inside_children)
    return counts


def _check_adapted(tree: SkeletonTree, f: RationalFunction):
    """Raise unless ``s -> v(f)`` is affine along every edge."""
    for k in range(len(tree.edges)):
        p, c = tree.edge_parent_child(k)
        center = tree.vertices[c].center
        lo, hi = tree.vertices[p].r, tree.vertices[c].r
        cand = newton_breaks(f.num, center, lo, hi) | newton_breaks(f.den, center, lo, hi)
        for s in sorted(cand):
            jn = _kink(f.num, center, s)
            jd = _kink(f.den, center, s)
            if jn != jd:
                raise ModelNotAdapted(f"function has zeros or poles inside edge {k} (radius {fmt_q(s)})")


def _kink(p: Poly, center, s):
    lo, hi = newton_slopes(p, center, s)
    return hi - lo


def valuation_profile(tree: SkeletonTree, f, lattice=None) -> LaplacianFunction:
    """``phi_f``: the valuation of ``f`` at every vertex."""
    vals = tuple(gauss_valuation(v, f) for v in tree.vertices)
    return LaplacianFunction(vals, lattice or tree.n_lattice)


def vertex_representative(tree: SkeletonTree, i: int) -> ValuedElement:
    """A point of K whose retraction is exactly vertex ``i``.

    Takes ``center + k*pi^r`` with ``k`` avoiding the residue directions of
    the children (and of the parent line when ``i`` is not the root, which
    is automatic since the parent lies above).
    """
    v = tree.vertices[i]
    used = set()
    for c in tree.children(i):
        diff = tree.vertices[c].center - v.center
        used.add(diff.coefficient(v.r))
    k = 0
    while Fraction(k) in used:
        k += 1
    a = v.center + ValuedElement.pi(v.r, k) if k else v.center
    assert retract_index(tree, a) == i
    return a


def regularize(tree: SkeletonTree, n: int) -> SkeletonTree:
    """Subdivide every edge of length ``L`` into ``n*L`` edges of length ``1/n``.

    Original vertices keep their indices; new vertices are appended. The
    result records, per original edge, the chain of vertex indices from the
    edge's first endpoint to its second.
    """
    if n < 1:
        raise ValueError("n must be positive")
    step = Fraction(1, n)
    verts = list(tree.vertices)
    edges = []
    chains = []
    for k, (i, j, length) in enumerate(tree.edges):
        pieces = length * n
        if pieces.denominator != 1:
            raise InvalidModel(f"edge {k} of length {fmt_q(length)} is not a multiple of 1/{n}")
        pieces = int(pieces)
        p, c = tree.edge_parent_child(k)
        center = tree.vertices[c].center
        rp = tree.vertices[p].r
        chain = [p]
        for s in range(1, pieces):
            verts.append(DiskVertex(center, rp + s * step))
            chain.append(len(verts) - 1)
        chain.append(c)
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b, step))
        chains.append(tuple(chain) if i == p else tuple(reversed(chain)))
    weights = tuple(tree.weights) + (0,) * (len(verts) - len(tree.vertices))
    lat = math.lcm(tree.n_lattice, n)
    return SkeletonTree(tuple(verts), tuple(edges), weights, lat, tuple(chains))
