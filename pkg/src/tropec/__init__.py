"""Reduction types of elliptic curves over function fields of the
projective line, read off from valuation profiles on a skeleton.

The layers, bottom up: exact Laurent arithmetic in a uniformizer
(:mod:`valued`), functions in ``t`` (:mod:`functions`), disk trees and
specialization (:mod:`skeleton`), Laplacians on metric graphs
(:mod:`laplacian`), Weierstrass equations (:mod:`weierstrass`), the
classifier (:mod:`reduction`) and SL2 / inertia consequences (:mod:`galois`).
"""

from .errors import *  # noqa: F401,F403
from .functions import FactoredFunction, Poly, RationalFunction
from .galois import (
    Sl2Matrix,
    check_surjectivity,
    division_polynomial,
    fixed_line,
    generate_subgroup,
    hasse_invariant,
    inertia_chain,
    is_transvection,
    predict_edge_fiber,
    sl2_order,
    tate_parameter_valuation,
    transvection_check,
)
from .laplacian import (
    GraphDivisor,
    LaplacianFunction,
    MetricGraph,
    SubgraphSelection,
    compare_on_subgraph,
    edge_slope,
    extend_pl,
    is_principal,
    laplacian_apply,
    solve_laplacian,
)
from .reduction import ReductionType, base_change_stability, classify, classify_on_subdivision, completion_closure
from .skeleton import DiskVertex, SkeletonTree, gauss_valuation, regularize, retract_point, specialize_divisor, valuation_profile
from .valued import INF, ResidueConfig, ValuedElement
from .weierstrass import (
    WeierstrassEquation,
    WeierstrassTransform,
    construct_s_minimal_twist,
    invariants,
    minimality_report,
    transform,
    vertical_profile,
)

__version__ = "0.1.0"
