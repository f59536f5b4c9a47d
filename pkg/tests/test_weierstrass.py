import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import two_vertex_tree
from tropec.errors import SingularCurve, TwistInfeasible
from tropec.functions import FactoredFunction, Poly, RationalFunction
from tropec.laplacian import extend_pl
from tropec.skeleton import DiskVertex, SkeletonTree, regularize
from tropec.valued import ValuedElement
from tropec.weierstrass import (
    WeierstrassEquation,
    WeierstrassTransform,
    construct_s_minimal_twist,
    invariants,
    minimality_report,
    short_form_transform,
    transform,
    vertical_profile,
)

PI = ValuedElement.pi
T = RationalFunction.t()
WORKED = WeierstrassEquation(0, 1, 0, 0, "(t)")
GAUSS = SkeletonTree((DiskVertex(0, 0),), ())


def rf(x):
    return RationalFunction.const(x)


def random_poly(rng, deg=1):
    return RationalFunction(Poly.from_coeffs([ValuedElement({rng.randint(0, 1): rng.randint(-3, 3)}) for _ in range(deg + 1)]))


def random_integral_transform(rng):
    """u a unit on the two-vertex model; r, s, t with nonnegative valuations."""
    u = FactoredFunction(rng.choice([1, -1, 2, Fraction(1, 3)]), [(rng.choice([1, -1, 2]), rng.choice([0, 1]))])
    return WeierstrassTransform(u.to_rational(), random_poly(rng), random_poly(rng), random_poly(rng))


def test_worked_invariants():
    inv = invariants(WORKED)
    assert inv.disc == -432 * T * T - 64 * T
    assert inv.c4 == rf(16)
    assert inv.c6 == -864 * T - 64
    assert inv.j == rf(4096) / (-432 * T * T - 64 * T)


@pytest.mark.parametrize("j0", [Fraction(1), Fraction(-5, 2), Fraction(3456)])
def test_universal_curve(j0):
    k = j0 - 1728
    w = WeierstrassEquation(1, 0, 0, rf(-36 / k), rf(-1 / k))
    inv = invariants(w)
    assert inv.j == rf(j0)
    assert inv.disc == rf(j0 ** 2 / k ** 3)


def test_j_zero_curve():
    inv = invariants(WeierstrassEquation(0, 0, 0, 0, 1))
    assert inv.c4.is_zero()
    assert inv.disc == rf(-432)


def test_singular_curve():
    with pytest.raises(SingularCurve):
        invariants(WeierstrassEquation(0, 0, 0, 0, 0))


def test_identity_and_round_trip():
    assert transform(WORKED, WeierstrassTransform.identity()) == WORKED
    tr = WeierstrassTransform(FactoredFunction(2, [(0, 1)]), T + 1, rf(3), T)
    assert transform(transform(WORKED, tr), tr.inverse()) == WORKED


def test_pi_scaling():
    w = WeierstrassEquation(0, 0, 0, 0, rf(PI(4)))
    out = transform(w, WeierstrassTransform(rf(PI())))
    assert out.a6 == rf(PI(-2))
    assert invariants(out).disc * rf(PI(12)) == invariants(w).disc


def test_composition_matches_sequential():
    a = WeierstrassTransform(rf(2), T, rf(1), rf(-1))
    b = WeierstrassTransform(T + 1, rf(3), T, rf(2))
    assert transform(transform(WORKED, a), b) == transform(WORKED, a.then(b))


def test_short_form():
    w = WeierstrassEquation(1, 2, "(t)", 0, "3*(t - 1)")
    s = transform(w, short_form_transform(w))
    inv = invariants(w)
    assert s.is_short()
    assert s.a4 == -inv.c4 / 48 and s.a6 == -inv.c6 / 864


def test_worked_profiles():
    prof = vertical_profile(WORKED, two_vertex_tree())
    assert prof.disc.values == (0, 1)
    assert prof.j.values == (0, -1)
    assert prof.c4.values == (0, 0)
    const = vertical_profile(WeierstrassEquation(0, 0, 0, 1, 1), two_vertex_tree())
    assert const.disc.values == (0, 0) and const.c6.values == (0, 0)


def test_profile_interpolates_under_subdivision():
    reg = regularize(two_vertex_tree(), 4)
    prof = vertical_profile(WORKED, reg)
    g = two_vertex_tree().graph()
    base = vertical_profile(WORKED, two_vertex_tree())
    for i, v in enumerate(reg.chains[0]):
        assert prof.disc[v] == extend_pl(g, base.disc, 0, Fraction(i, 4))


def test_minimality_examples():
    rep = minimality_report(WORKED, two_vertex_tree())
    assert rep.kappa == (0, 0) and rep.d == (0, 1)
    assert rep.is_minimal()
    scaled = transform(WORKED, WeierstrassTransform(rf(PI(-1))))
    rep2 = minimality_report(scaled, two_vertex_tree())
    assert rep2.kappa == (1, 1) and rep2.d == (0, 1)
    rep3 = minimality_report(WeierstrassEquation(0, 0, 0, 0, rf(PI(6))), GAUSS)
    assert rep3.kappa == (1,) and rep3.d == (0,)


def test_twist_examples():
    assert construct_s_minimal_twist(WORKED, two_vertex_tree()).u == rf(1)
    w = WeierstrassEquation(0, 0, 0, "-3*(t)^4", ["(t)^6", "(t)^7"])
    assert minimality_report(w, two_vertex_tree()).kappa == (0, 1)
    tr = construct_s_minimal_twist(w, two_vertex_tree())
    assert tr.u == T
    w2 = WeierstrassEquation(0, 0, 0, "-3*pi^4", ["pi^6*(t)", "pi^6"])
    tr2 = construct_s_minimal_twist(w2, two_vertex_tree())
    assert tr2.u == rf(PI())
    assert minimality_report(transform(w2, tr2), two_vertex_tree()).kappa == (0, 0)


def test_twist_on_a_subset():
    w = WeierstrassEquation(0, 0, 0, "-3*(t)^4", ["(t)^6", "(t)^7"])
    tr = construct_s_minimal_twist(w, two_vertex_tree(), S={0})
    assert tr.u == rf(1)


def test_twist_on_a_star():
    star = SkeletonTree((DiskVertex(0, 0), DiskVertex(0, 1), DiskVertex(1, 1)), ((0, 1, 1), (0, 2, 1)))
    w = WeierstrassEquation(0, 0, 0, 0, "(t)^6*(t - 1)^6")
    assert minimality_report(w, star).kappa == (0, 1, 1)
    tr = construct_s_minimal_twist(w, star)
    assert minimality_report(transform(w, tr), star).kappa == (0, 0, 0)


def test_twist_infeasible_until_centers_are_added():
    # kappa = (0, 1) across an edge of length 2 needs a root of u at radius 1
    long = SkeletonTree.chain(0, [0, 2])
    w = WeierstrassEquation(0, 0, 0, "-3*(t)^2", "(t)^3")
    assert minimality_report(w, long).kappa == (0, 1)
    with pytest.raises(TwistInfeasible):
        construct_s_minimal_twist(w, long)
    tr = construct_s_minimal_twist(w, long, extra_centers=[PI()])
    assert minimality_report(transform(w, tr), long).kappa == (0, 0)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_transform_laws(seed):
    rng = random.Random(seed)
    w = WeierstrassEquation(random_poly(rng), random_poly(rng), random_poly(rng), random_poly(rng), random_poly(rng) + T)
    try:
        before = invariants(w)
    except SingularCurve:
        return
    tr = random_integral_transform(rng)
    after = invariants(transform(w, tr))
    assert tr.u ** 12 * after.disc == before.disc
    assert tr.u ** 4 * after.c4 == before.c4
    assert tr.u ** 6 * after.c6 == before.c6
    assert after.j == before.j


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_minimal_discriminant_is_invariant(seed):
    rng = random.Random(seed)
    tree = two_vertex_tree()
    w = WeierstrassEquation(0, random_poly(rng), 0, random_poly(rng), random_poly(rng) + T)
    try:
        rep = minimality_report(w, tree)
    except SingularCurve:
        return
    tr = random_integral_transform(rng)
    assert minimality_report(transform(w, tr), tree).d == rep.d


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_twist_post_verification(seed):
    rng = random.Random(seed)
    tree = two_vertex_tree()
    scale = FactoredFunction(PI(rng.randint(-1, 1)), [(0, rng.randint(-1, 1))]).to_rational()
    w = WeierstrassEquation(0, 0, 0, scale ** 4 * (T + rng.randint(1, 3)), scale ** 6 * (T * T + rng.randint(1, 3)))
    try:
        tr = construct_s_minimal_twist(w, tree)
    except TwistInfeasible:
        pytest.fail("twist over vertex centers should be feasible on a chain")
    rep = minimality_report(transform(w, tr), tree)
    assert rep.kappa == (0, 0)
    assert rep.d == minimality_report(w, tree).d
