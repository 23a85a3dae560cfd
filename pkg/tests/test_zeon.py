import random

from hypothesis import given, settings
from hypothesis import strategies as st

from extensor_coding.extensor import popcount
from extensor_coding.zeon import (
    Zeon,
    ZeonAlgebra,
    zeon_embedding_check,
    zeon_multiply_fast,
    zeon_multiply_naive,
)


def zeon(t):
    return st.lists(st.integers(-3, 3), min_size=1 << t, max_size=1 << t).map(lambda c: Zeon(t, c))


def brute(x, y):
    out = [0] * (1 << x.t)
    for a in range(1 << x.t):
        for b in range(1 << x.t):
            if a & b == 0:
                out[a | b] += x.coeffs[a] * y.coeffs[b]
    return out


@given(st.integers(1, 7).flatmap(lambda t: st.tuples(zeon(t), zeon(t))))
def test_naive_and_fast_products_match_definition(pair):
    x, y = pair
    ref = brute(x, y)
    assert list(zeon_multiply_naive(x, y).coeffs) == ref
    assert list(zeon_multiply_fast(x, y).coeffs) == ref


@settings(max_examples=30)
@given(st.integers(1, 4).flatmap(lambda t: st.tuples(zeon(t), zeon(t))))
def test_embedding_into_exterior_algebra(pair):
    assert zeon_embedding_check(*pair)


def test_generators_are_nilpotent_and_commute():
    Z = ZeonAlgebra(4)
    a, b = Z.generator(1), Z.generator(3)
    assert (a * a).is_zero()
    assert a * b == b * a
    assert (a * b).grade_coefficients(2)[0b0101] == 1


def test_truncation_keeps_low_grades_only():
    rnd = random.Random(1)
    t = 10
    x = Zeon(t, [rnd.randint(-2, 2) for _ in range(1 << t)], max_grade=3)
    y = Zeon(t, [rnd.randint(-2, 2) for _ in range(1 << t)], max_grade=3)
    full = brute(Zeon(t, x.coeffs), Zeon(t, y.coeffs))
    got = (x * y).coeffs
    for m in range(1 << t):
        want = full[m] if popcount(m) <= 3 else 0
        assert got[m] == want


def test_monomial_fast_path_matches_general_product():
    rnd = random.Random(4)
    t = 9
    x = Zeon(t, [rnd.randint(-2, 2) for _ in range(1 << t)])
    g = Zeon.generator(t, 5, 3)
    assert list((x * g).coeffs) == brute(x, g)
    assert list((g * x).coeffs) == brute(x, g)
