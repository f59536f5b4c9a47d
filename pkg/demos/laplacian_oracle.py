"""Gauss valuations against root retraction on random trees.

For a rational function f and a tree of disks, the vector of Gauss
valuations phi_f has graph Laplacian equal to the specialization of div f.
The specialization is computed by retracting each root onto the tree. The
profile is computed in two independent ways: from the factored form, and
from the expanded polynomial through Newton polygons.
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from helpers import random_function, random_tree  # noqa: E402
from tropec import laplacian_apply, solve_laplacian, specialize_divisor, valuation_profile  # noqa: E402

rng = random.Random(1)
for k in range(5):
    tree = random_tree(rng, max_vertices=5)
    f = random_function(rng, tree, max_roots=3, exps=(-2, 2))
    g = tree.graph()
    div = specialize_divisor(tree, f)
    phi = valuation_profile(tree, f)
    phi_expanded = valuation_profile(tree, f.to_rational())
    print(f"instance {k}: {len(tree.vertices)} vertices, f = {f}")
    print("  rho(div f)      =", [str(x) for x in div])
    print("  phi (factored)  =", [str(x) for x in phi.values])
    print("  phi (expanded)  =", [str(x) for x in phi_expanded.values])
    assert laplacian_apply(g, phi) == div and phi == phi_expanded
    back = solve_laplacian(g, div, anchor=0, anchor_value=phi[0], lattice=tree.n_lattice)
    print("  solved back     =", [str(x) for x in back.values])
