"""Reduction types of an elliptic curve on subgraphs of a skeleton.

On a selection ``T`` and an S-minimal equation:

* Good            when ``phi_Delta = 0`` on ``T``,
* Multiplicative  when ``phi_Delta > 0`` and ``phi_c4 = 0`` on ``T``,
* Additive        when ``phi_Delta > 0`` and ``phi_c4 > 0`` on ``T``,
* Mixed           otherwise.

Selected edges are open segments (see :class:`SubgraphSelection`), which is
what makes multiplicative reduction an open condition: an edge can be
multiplicative while one of its endpoints has good reduction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import TwistInfeasible
from .laplacian import SubgraphSelection, compare_on_subgraph
from .skeleton import SkeletonTree, gauss_valuation, regularize, specialize_divisor
from .valued import INF, ResidueConfig, fmt_q
from .weierstrass import WeierstrassEquation, construct_s_minimal_twist, invariants, vertical_profile

__all__ = [
    "ReductionType",
    "Classification",
    "classify",
    "classify_on_subdivision",
    "completion_closure",
    "base_change_stability",
    "refine_selection",
]


class ReductionType(str, enum.Enum):
    GOOD = "Good"
    MULTIPLICATIVE = "Multiplicative"
    ADDITIVE = "Additive"
    MIXED = "Mixed"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    """A verdict plus the profile values that justify it.

    ``phi_disc`` and ``phi_c4`` are indexed by the vertices of ``tree`` (the
    unit-length refinement the verdict was computed on); the first vertices
    are the original ones, in order.
    """

    verdict: ReductionType
    tree: SkeletonTree = field(repr=False)
    selection: SubgraphSelection
    phi_disc: tuple
    phi_c4: tuple
    c4_identically_zero: bool
    twist: object = field(repr=False)
    twist_scope: str = "all"

    def __eq__(self, other):
        if isinstance(other, ReductionType):
            return self.verdict == other
        if isinstance(other, Classification):
            return self.verdict == other.verdict
        return NotImplemented

    __hash__ = None

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "evidence": {
                "phi_disc": [fmt_q(x) for x in self.phi_disc],
                "phi_c4": [fmt_q(x) for x in self.phi_c4],
                "c4_identically_zero": self.c4_identically_zero,
                "vertices": sorted(self.selection.vertices),
                "edges": [list(self.tree.edges[e][:2]) for e in sorted(self.selection.edges)],
                "twist": self.twist.to_json(),
                "twist_scope": self.twist_scope,
            },
        }


def completion_closure(tree: SkeletonTree, sel: SubgraphSelection) -> SubgraphSelection:
    """``T`` with the endpoints of its edges adjoined."""
    return sel.closure(tree.graph())


def refine_selection(tree: SkeletonTree, refined: SkeletonTree, sel: SubgraphSelection) -> SubgraphSelection:
    """Carry a selection on ``tree`` over to ``refined = regularize(tree, n)``.

    A selected edge becomes all of its sub-edges together with the new
    interior vertices, so the refined selection covers the same point set.
    """
    verts = set(sel.vertices)
    edges = set()
    for e in sel.edges:
        chain = refined.chains[e]
        verts.update(chain[1:-1])
        for a, b in zip(chain, chain[1:]):
            edges.add(refined.find_edge(a, b))
    return SubgraphSelection(frozenset(verts), frozenset(edges))


def _verdict(g, phi_disc, phi_c4, sel) -> ReductionType:
    if compare_on_subgraph(g, phi_disc, sel, "=0"):
        return ReductionType.GOOD
    if compare_on_subgraph(g, phi_disc, sel, ">0"):
        if compare_on_subgraph(g, phi_c4, sel, "=0"):
            return ReductionType.MULTIPLICATIVE
        if compare_on_subgraph(g, phi_c4, sel, ">0"):
            return ReductionType.ADDITIVE
    return ReductionType.MIXED


def _check_adapted(w: WeierstrassEquation, tree: SkeletonTree):
    inv = invariants(w, check=False)
    specialize_divisor(tree, inv.disc)
    if not inv.c4.is_zero():
        specialize_divisor(tree, inv.c4)


def classify(w: WeierstrassEquation, tree: SkeletonTree, sel: SubgraphSelection, residue: ResidueConfig = None) -> Classification:
    """Reduction type of ``w`` on the selection ``sel`` of ``tree``.

    The tree is first refined to edges of length ``1/n_lattice`` so that
    every lattice point of the selection is a vertex. The equation is then
    twisted to be minimal at every vertex (or, if that is impossible with
    the available centers, at the vertices of the closure of ``sel``).
    """
    residue = residue or ResidueConfig(0)
    sel.validate(tree.graph())
    if sel.is_empty():
        raise ValueError("empty selection")
    _check_adapted(w, tree)
    reg = regularize(tree, tree.n_lattice)
    rsel = refine_selection(tree, reg, sel)
    g = reg.graph()
    scope = "all"
    try:
        tr = construct_s_minimal_twist(w, reg, None, residue)
    except TwistInfeasible:
        scope = "support"
        tr = construct_s_minimal_twist(w, reg, rsel.support(g), residue)
    # profiles of the twisted invariants, read off as Delta/u^12 and c4/u^4
    # without expanding the twisted equation
    prof = vertical_profile(w, reg)
    phi_u = [gauss_valuation(v, tr.u_factored) for v in reg.vertices]
    c4_zero = prof.c4 is None
    phi_c4 = tuple(INF for _ in reg.vertices) if c4_zero else tuple(a - 4 * b for a, b in zip(prof.c4.values, phi_u))
    phi_disc = tuple(a - 12 * b for a, b in zip(prof.disc.values, phi_u))
    verdict = _verdict(g, phi_disc, phi_c4, rsel)
    return Classification(verdict, reg, rsel, phi_disc, phi_c4, c4_zero, tr, scope)


def classify_on_subdivision(w: WeierstrassEquation, tree: SkeletonTree, sel: SubgraphSelection, n: int, residue: ResidueConfig = None) -> dict:
    """Classical reduction type at each vertex of the ``n``-fold subdivision lying in the closure of ``sel``.

    When ``sel`` itself is uniformly Good, Multiplicative or Additive, every
    subdivision vertex inside ``sel`` is asserted to carry that type.
    """
    sub = regularize(tree, n)
    ssel = refine_selection(tree, sub, sel)
    closed = ssel.support(sub.graph())
    out = {}
    for v in sorted(closed):
        out[v] = classify(w, sub, SubgraphSelection({v}), residue).verdict
    overall = classify(w, tree, sel, residue).verdict
    if overall != ReductionType.MIXED:
        for v in ssel.vertices:
            assert out[v] == overall, (v, out[v], overall)
    return out


def base_change_stability(w: WeierstrassEquation, tree: SkeletonTree, sel: SubgraphSelection, n: int, residue: ResidueConfig = None) -> bool:
    """Whether a Good or Multiplicative verdict survives a ramified extension of degree ``n``.

    The extension refines the value lattice to ``(1/(n*N))Z`` and subdivides
    every edge accordingly. Additive and Mixed verdicts may change (that is
    how potentially good reduction shows up), so they return True.
    """
    before = classify(w, tree, sel, residue).verdict
    if before not in (ReductionType.GOOD, ReductionType.MULTIPLICATIVE):
        return True
    ext = regularize(tree, n * tree.n_lattice)
    after = classify(w, ext, refine_selection(tree, ext, sel), residue).verdict
    return after == before
