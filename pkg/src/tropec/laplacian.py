"""Divisor theory on finite metric graphs.

The Laplacian of a vertex function ``phi`` is

    Delta(phi)(v) = sum over edges e = vw of (phi(v) - phi(w)) / length(e),

so on unit-length graphs it is the usual chip-firing Laplacian. Functions
extend to the metrized graph by affine interpolation along each edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidModel, NonIntegralSlope, NotPrincipal
from .linalg import solve_rational
from .valued import INF, fmt_q, to_fraction

__all__ = [
    "MetricGraph",
    "GraphDivisor",
    "LaplacianFunction",
    "SubgraphSelection",
    "laplacian_apply",
    "is_principal",
    "solve_laplacian",
    "extend_pl",
    "edge_slope",
    "edge_slope_abs",
    "compare_on_subgraph",
    "RELATIONS",
]


@dataclass(frozen=True)
class MetricGraph:
    """Connected multigraph without loops; edges are ``(u, w, length)``."""

    n_vertices: int
    edges: tuple
    weights: tuple = None

    def __post_init__(self):
        edges = tuple((int(u), int(w), to_fraction(length)) for u, w, length in self.edges)
        object.__setattr__(self, "edges", edges)
        weights = self.weights if self.weights is not None else (0,) * self.n_vertices
        object.__setattr__(self, "weights", tuple(int(x) for x in weights))
        if self.n_vertices < 1:
            raise InvalidModel("a graph needs at least one vertex")
        if len(self.weights) != self.n_vertices:
            raise InvalidModel("one weight per vertex")
        for u, w, length in edges:
            if not (0 <= u < self.n_vertices and 0 <= w < self.n_vertices):
                raise InvalidModel(f"edge ({u}, {w}) references a missing vertex")
            if u == w:
                raise InvalidModel(f"loop edge at vertex {u}")
            if length <= 0:
                raise InvalidModel(f"edge ({u}, {w}) has nonpositive length")
        if not self._connected():
            raise InvalidModel("graph is not connected")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for w, _ in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def adjacency(self):
        """``adj[v]`` lists ``(neighbor, edge index)``; multi-edges repeat."""
        adj = [[] for _ in range(self.n_vertices)]
        for k, (u, w, _) in enumerate(self.edges):
            adj[u].append((w, k))
            adj[w].append((u, k))
        return adj

    def laplacian_matrix(self):
        """Rational matrix ``L`` with ``(L phi)(v) = Delta(phi)(v)``."""
        n = self.n_vertices
        m = [[Fraction(0)] * n for _ in range(n)]
        for u, w, length in self.edges:
            c = 1 / length
            m[u][u] += c
            m[w][w] += c
            m[u][w] -= c
            m[w][u] -= c
        return m

    def is_regular(self) -> bool:
        return all(length == 1 for _, _, length in self.edges)


class GraphDivisor(tuple):
    """Vertex-indexed coefficients (integers, or rationals on a finer lattice)."""

    def __new__(cls, coeffs: Sequence = ()):
        return super().__new__(cls, (to_fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, n: int) -> "GraphDivisor":
        return cls([0] * n)

    @property
    def degree(self) -> Fraction:
        return sum(self, Fraction(0))

    def is_degree_zero(self) -> bool:
        return self.degree == 0

    def __add__(self, other):
        return GraphDivisor(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return GraphDivisor(a - b for a, b in zip(self, other))

    def __neg__(self):
        return GraphDivisor(-a for a in self)

    def to_json(self):
        return [fmt_q(c) for c in self]


@dataclass(frozen=True)
class LaplacianFunction:
    """Rational values per vertex; ``lattice`` is the value denominator ``n``."""

    values: tuple
    lattice: int = 1

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(to_fraction(v) for v in self.values))

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def shift(self, c) -> "LaplacianFunction":
        return LaplacianFunction(tuple(v + c for v in self.values), self.lattice)

    def to_json(self):
        return [fmt_q(v) for v in self.values]


@dataclass(frozen=True)
class SubgraphSelection:
    """A set of vertices and a set of edges of a graph.

    A selected edge stands for its open segment; its endpoints belong to the
    selection only when they are selected as vertices. :meth:`closure` adds
    them.
    """

    vertices: frozenset = field(default_factory=frozenset)
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(int(v) for v in self.vertices))
        object.__setattr__(self, "edges", frozenset(int(e) for e in self.edges))

    def validate(self, g: MetricGraph):
        for v in self.vertices:
            if not 0 <= v < g.n_vertices:
                raise InvalidModel(f"selected vertex {v} does not exist")
        for e in self.edges:
            if not 0 <= e < len(g.edges):
                raise InvalidModel(f"selected edge {e} does not exist")

    def is_empty(self) -> bool:
        return not self.vertices and not self.edges

    def closure(self, g: MetricGraph) -> "SubgraphSelection":
        extra = set(self.vertices)
        for e in self.edges:
            u, w, _ = g.edges[e]
            extra.update((u, w))
        return SubgraphSelection(frozenset(extra), self.edges)

    def support(self, g: MetricGraph) -> frozenset:
        """Vertices of the closure."""
        return self.closure(g).vertices

    def is_complete(self, g: MetricGraph) -> bool:
        return self.closure(g) == self


def laplacian_apply(g: MetricGraph, phi: LaplacianFunction) -> GraphDivisor:
    """``Delta(phi)``; every slope must lie on the ``1/phi.lattice`` lattice."""
    if len(phi) != g.n_vertices:
        raise ValueError("function must have one value per vertex")
    out = [Fraction(0)] * g.n_vertices
    for u, w, length in g.edges:
        slope = (phi[u] - phi[w]) / length
        if (slope * phi.lattice).denominator != 1:
            raise NonIntegralSlope(f"slope {fmt_q(slope)} on edge ({u}, {w}) is off the 1/{phi.lattice} lattice")
        out[u] += slope
        out[w] -= slope
    d = GraphDivisor(out)
    assert d.degree == 0
    return d


def _solve(g: MetricGraph, d, anchor: int, anchor_value):
    n = g.n_vertices
    if n == 1:
        return [to_fraction(anchor_value)] if d[0] == 0 else None
    lap = g.laplacian_matrix()
    keep = [i for i in range(n) if i != anchor]
    a = [[lap[i][j] for j in keep] for i in keep]
    b = [d[i] for i in keep]
    x = solve_rational(a, b)
    if x is None:
        return None
    values = [Fraction(0)] * n
    for i, v in zip(keep, x):
        values[i] = v
    return [v + to_fraction(anchor_value) for v in values]


def is_principal(g: MetricGraph, d: GraphDivisor, lattice: int = 1) -> bool:
    """Whether ``d = Delta(phi)`` for some ``phi`` with values in ``(1/lattice)Z``."""
    d = GraphDivisor(d)
    if len(d) != g.n_vertices:
        raise ValueError("divisor must have one coefficient per vertex")
    if d.degree != 0:
        return False
    values = _solve(g, d, 0, 0)
    if values is None:
        return False
    return all((v * lattice).denominator == 1 for v in values)


def solve_laplacian(g: MetricGraph, d: GraphDivisor, anchor: int = 0, anchor_value=0, lattice: int = 1) -> LaplacianFunction:
    """The unique ``phi`` with ``Delta(phi) = d`` and ``phi(anchor) = anchor_value``.

    With ``anchor_value = 0`` the values are the multiplicities of the
    vertical divisor normalized to vanish on the anchor component.
    """
    d = GraphDivisor(d)
    if not is_principal(g, d, lattice):
        raise NotPrincipal(f"divisor {d.to_json()} is not in the image of the Laplacian")
    values = _solve(g, d, anchor, anchor_value)
    phi = LaplacianFunction(tuple(values), lattice)
    assert laplacian_apply(g, phi) == d
    return phi


def extend_pl(g: MetricGraph, phi: LaplacianFunction, edge: int, x) -> Fraction:
    """Affine interpolation ``(phi(w) - phi(u)) * x + phi(u)`` along edge ``(u, w)``."""
    x = to_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("edge offset must lie in [0, 1]")
    u, w, _ = g.edges[edge]
    return (phi[w] - phi[u]) * x + phi[u]


def edge_slope(g: MetricGraph, phi: LaplacianFunction, edge: int, reverse: bool = False) -> Fraction:
    """``(phi(w) - phi(u)) / length`` for edge ``(u, w)``; negated when ``reverse``."""
    u, w, length = g.edges[edge]
    s = (phi[w] - phi[u]) / length
    return -s if reverse else s


def edge_slope_abs(g: MetricGraph, phi: LaplacianFunction, edge: int) -> Fraction:
    return abs(edge_slope(g, phi, edge))


_CHECKS = {
    ">0": lambda x: x > 0,
    "=0": lambda x: x == 0,
    ">=0": lambda x: x >= 0,
    "<0": lambda x: x < 0,
    "<=0": lambda x: x <= 0,
}
_ALIASES = {"≥0": ">=0", "≤0": "<=0", "==0": "=0"}
RELATIONS = tuple(_CHECKS)


def _holds_on_open_segment(a, b, rel: str) -> bool:
    # affine g on (0,1) with limits a, b at the ends
    if rel == "=0":
        return a == 0 and b == 0
    if rel in (">=0", "<=0"):
        return _CHECKS[rel](a) and _CHECKS[rel](b)
    weak = ">=0" if rel == ">0" else "<=0"
    return _CHECKS[weak](a) and _CHECKS[weak](b) and not (a == 0 and b == 0)


def compare_on_subgraph(g: MetricGraph, phi, sel: SubgraphSelection, relation: str, closed: bool = False) -> bool:
    """Evaluate ``phi_bar REL 0`` at every point of the selection's image.

    ``phi`` is a :class:`LaplacianFunction` or any vertex-indexed sequence;
    ``INF`` values are allowed (they satisfy ``>0`` and ``>=0``). Selected
    edges are open segments, so a strict relation on an edge only needs
    weak inequality at the endpoints plus one strict endpoint. With
    ``closed=True`` the closure of the selection is used instead.
    """
    rel = _ALIASES.get(relation, relation)
    if rel not in _CHECKS:
        raise ValueError(f"unknown relation {relation!r}; use one of {RELATIONS}")
    sel.validate(g)
    if closed:
        sel = sel.closure(g)
    for v in sel.vertices:
        if not _CHECKS[rel](phi[v]):
            return False
    for e in sel.edges:
        u, w, _ = g.edges[e]
        a, b = phi[u], phi[w]
        if INF in (a, b) or -INF in (a, b):
            if not (_CHECKS[rel](a) and _CHECKS[rel](b)):
                return False
            continue
        if not _holds_on_open_segment(a, b, rel):
            return False
    return True


def lattice_of(values) -> int:
    n = 1
    for v in values:
        if v != INF:
            n = math.lcm(n, Fraction(v).denominator)
    return n
