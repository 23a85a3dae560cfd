import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extensor_coding.extensor import (
    MAX_GENERAL_K,
    Blade2,
    DimensionCapError,
    Extensor,
    ExteriorAlgebra,
    VectorK,
    lift,
    lift_sign,
    subset_sign,
    top_coefficient,
    wedge_blade,
    wedge_general,
    wedge_vector,
    wedge_vectors_det,
)
from extensor_coding.oracles import leibniz_det
from extensor_coding.rings import QQ


def vec(k):
    return st.lists(st.integers(-4, 4), min_size=k, max_size=k).map(VectorK)


def ext(k):
    return st.lists(st.integers(-3, 3), min_size=1 << k, max_size=1 << k).map(lambda c: Extensor(k, c))


dims = st.integers(1, 6)


def test_worked_examples():
    e = lambda *ix: Extensor.basis(6, ix)  # noqa: E731
    assert e(1, 3, 6) * e(2, 4) == -Extensor.from_dict(6, {(1, 2, 3, 4, 6): 1})
    x = Extensor.basis(3, [1, 3]) + Extensor.basis(3, [2])
    assert x * x == Extensor.from_dict(3, {(1, 2, 3): -2})
    a, b, c, d = 3, 5, -2, 7
    w = VectorK([a, b]).to_extensor() * VectorK([c, d])
    assert w == Extensor.from_dict(2, {(1, 2): a * d - b * c})


def test_subset_sign_counts_inversions():
    for I in range(16):
        for J in range(16):
            if I & J:
                continue
            seq = [i for i in range(4) if I >> i & 1] + [j for j in range(4) if J >> j & 1]
            inv = sum(1 for p in range(len(seq)) for q in range(p + 1, len(seq)) if seq[p] > seq[q])
            assert subset_sign(I, J) == (-1) ** inv


@given(dims.flatmap(lambda k: st.tuples(vec(k), vec(k))))
def test_w1_anticommuting_vectors(pair):
    u, v = pair
    one = Extensor.scalar(u.k, 1)
    assert wedge_vector(wedge_vector(one, u), v) == -wedge_vector(wedge_vector(one, v), u)


@given(dims.flatmap(lambda k: st.tuples(ext(k), vec(k))))
def test_w2_repeated_vector_vanishes(pair):
    x, v = pair
    assert wedge_vector(wedge_vector(x, v), v).is_zero()


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(lambda k: st.tuples(ext(k), ext(k), ext(k))))
def test_associativity_and_bilinearity(triple):
    x, y, z = triple
    assert wedge_general(wedge_general(x, y), z) == wedge_general(x, wedge_general(y, z))
    assert wedge_general(x + y, z) == wedge_general(x, z) + wedge_general(y, z)
    assert wedge_general(x, 3 * z) == 3 * wedge_general(x, z)


@given(dims.flatmap(lambda k: st.tuples(ext(k), vec(k))))
def test_skew_product_matches_general(pair):
    x, v = pair
    assert wedge_vector(x, v) == wedge_general(x, v.to_extensor())


@given(dims.flatmap(lambda k: st.tuples(ext(k), vec(k), vec(k))))
def test_blade_product_and_centrality(triple):
    x, u, w = triple
    b = Blade2(u, w)
    assert wedge_blade(x, b) == wedge_general(x, b.expand())
    assert wedge_general(b.expand(), x) == wedge_general(x, b.expand())
    assert b * x == x * b


@given(st.integers(1, 6).flatmap(lambda k: st.lists(vec(k), min_size=k, max_size=k)))
def test_wedge_of_k_vectors_is_determinant(vs):
    k = len(vs)
    cols = [[v.entries[r] for v in vs] for r in range(k)]
    assert wedge_vectors_det(vs) == leibniz_det(cols)


@settings(max_examples=50)
@given(st.integers(1, 4).flatmap(lambda k: st.lists(vec(k), min_size=k, max_size=k)))
def test_lift_squares_determinant(vs):
    k = len(vs)
    x = Extensor.scalar(2 * k, 1)
    for v in vs:
        x = x * lift(v)
    cols = [[v.entries[r] for v in vs] for r in range(k)]
    assert top_coefficient(x) == lift_sign(k) * leibniz_det(cols) ** 2


def test_lift_sign_values():
    assert [lift_sign(k) for k in range(1, 7)] == [1, -1, -1, 1, 1, -1]


def test_grade_projection_and_terms():
    x = Extensor.from_dict(3, {(): 2, (1,): 1, (1, 3): 4})
    assert x.grade(2).terms() == {(1, 3): 4}
    assert x.terms() == {(): 2, (1,): 1, (1, 3): 4}


def test_rational_coefficients():
    A = ExteriorAlgebra(2, QQ)
    one = A.one()
    assert (one * VectorK([QQ.from_int(1), QQ.from_int(2)])).coeffs[1] == 1


def test_dimension_caps():
    with pytest.raises(DimensionCapError):
        Extensor.zeros(21)
    with pytest.raises(DimensionCapError):
        wedge_general(Extensor.zeros(MAX_GENERAL_K + 1), Extensor.zeros(MAX_GENERAL_K + 1))


def test_mismatched_dimensions_rejected():
    with pytest.raises(ValueError):
        wedge_vector(Extensor.zeros(3), VectorK([1, 2]))


def test_permuted_vector_wedges_carry_sign():
    rnd = random.Random(2)
    k = 4
    vs = [VectorK([rnd.randint(-3, 3) for _ in range(k)]) for _ in range(k)]
    base = wedge_vectors_det(vs)
    for perm in permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        assert wedge_vectors_det([vs[i] for i in perm]) == (-1) ** inv * base
    assert math.factorial(k) == 24
