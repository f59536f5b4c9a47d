import itertools
import random
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from tropec.linalg import solve_integer, solve_rational


def brute_integer(a, b, bound=4):
    cols = len(a[0])
    for x in itertools.product(range(-bound, bound + 1), repeat=cols):
        if all(sum(r[j] * x[j] for j in range(cols)) == bi for r, bi in zip(a, b)):
            return list(x)
    return None


def test_solve_rational_simple():
    assert solve_rational([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_rational([[1, 2], [2, 4]], [1, 2]) is None


def test_solve_integer_needs_gcd():
    assert solve_integer([[2, 4]], [3]) is None
    x = solve_integer([[2, 3]], [1])
    assert 2 * x[0] + 3 * x[1] == 1


def test_solve_integer_inconsistent_rows():
    assert solve_integer([[1, 1], [2, 2]], [1, 3]) is None


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_solve_integer_against_brute_force(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 3), rng.randint(1, 3)
    a = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
    if rng.random() < 0.6:
        x0 = [rng.randint(-2, 2) for _ in range(cols)]
        b = [sum(r[j] * x0[j] for j in range(cols)) for r in a]
    else:
        b = [rng.randint(-4, 4) for _ in range(rows)]
    x = solve_integer(a, b)
    if x is not None:
        assert all(sum(r[j] * x[j] for j in range(cols)) == bi for r, bi in zip(a, b))
    else:
        assert brute_integer(a, b) is None


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_solve_rational_against_numpy(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    a = rng.integers(-5, 6, size=(n, n))
    b = rng.integers(-5, 6, size=n)
    x = solve_rational(a.tolist(), b.tolist())
    if abs(np.linalg.det(a)) < 1e-9:
        assert x is None
    else:
        assert np.allclose([float(v) for v in x], np.linalg.solve(a, b))
