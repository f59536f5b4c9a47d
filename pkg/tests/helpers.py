"""Random instance generators shared by the test modules."""

import random
from fractions import Fraction

from tropec.functions import FactoredFunction
from tropec.skeleton import DiskVertex, SkeletonTree
from tropec.valued import ValuedElement

PI = ValuedElement.pi


def random_tree(rng: random.Random, max_vertices=8, lattices=(1, 2)) -> SkeletonTree:
    """A random disk tree.

    Each new vertex hangs below an existing one in a residue direction that
    is still free there, so edges never pass through other vertices.
    """
    n = rng.choice(lattices)
    root = DiskVertex(rng.randint(-2, 2), Fraction(rng.randint(0, 1)))
    verts = [root]
    used = [set()]
    edges = []
    target = rng.randint(1, max_vertices)
    while len(verts) < target:
        p = rng.randrange(len(verts))
        free = [k for k in range(-2, 3) if k not in used[p]]
        if not free:
            continue
        k = rng.choice(free)
        used[p].add(k)
        pv = verts[p]
        length = Fraction(rng.randint(1, 2 * n), n)
        center = pv.center + PI(pv.r, k) if k else pv.center
        # a deeper perturbation that stays inside the child disk
        if rng.random() < 0.5:
            center = center + PI(pv.r + length + Fraction(rng.randint(0, 2), n), rng.choice([1, -1, 3]))
        verts.append(DiskVertex(center, pv.r + length))
        used.append(set())
        edges.append((p, len(verts) - 1, length))
    return SkeletonTree(tuple(verts), tuple(edges), None, n)


def point_at_vertex(rng: random.Random, tree: SkeletonTree, i: int) -> ValuedElement:
    """A point whose retraction is vertex ``i`` (in a free residue direction, plus noise)."""
    v = tree.vertices[i]
    used = set()
    for c in tree.children(i):
        used.add((tree.vertices[c].center - v.center).coefficient(v.r))
    choices = [Fraction(k) for k in range(-3, 4) if Fraction(k) not in used]
    k = rng.choice(choices)
    a = v.center + PI(v.r, k) if k else v.center
    if rng.random() < 0.5:
        a = a + PI(v.r + Fraction(rng.randint(1, 3), tree.n_lattice), rng.randint(1, 4))
    return a


def point_outside(rng: random.Random, tree: SkeletonTree) -> ValuedElement:
    """A point outside the root disk (it retracts to the root)."""
    root = tree.vertices[tree.root]
    return root.center + PI(root.r - rng.randint(1, 2), rng.choice([1, 2, -1]))


def random_function(rng: random.Random, tree: SkeletonTree, max_roots=5, exps=(-3, 3)) -> FactoredFunction:
    """A factored function adapted to ``tree`` with at most ``max_roots`` roots."""
    n = tree.n_lattice
    content = ValuedElement.pi(Fraction(rng.randint(-2 * n, 2 * n), n), rng.choice([1, -2, 3, Fraction(1, 2)]))
    factors = []
    for _ in range(rng.randint(0, max_roots)):
        if rng.random() < 0.2:
            a = point_outside(rng, tree)
        else:
            a = point_at_vertex(rng, tree, rng.randrange(len(tree.vertices)))
        e = 0
        while e == 0:
            e = rng.randint(*exps)
        factors.append((a, e))
    return FactoredFunction(content, factors)


def two_vertex_tree() -> SkeletonTree:
    return SkeletonTree.chain(0, [0, 1])
