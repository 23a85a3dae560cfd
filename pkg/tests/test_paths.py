import random
from fractions import Fraction

import pytest

from conftest import random_digraph
from extensor_coding.extensor import lift_sign
from extensor_coding.graph import Digraph, walk_sum_circuit
from extensor_coding.oracles import enumerate_k_paths, sum_path_dets
from extensor_coding.paths import (
    approx_count_paths,
    bernoulli_moment_check,
    build_L,
    detect_deterministic,
    detect_few_paths,
    detect_random_edge_weights,
    detect_representative,
    detect_unambiguous,
    first_primes,
    lifted_bernoulli_trials,
    lifted_vandermonde_top,
    representative_families,
    trial_count,
    zero_test_prime_encoding,
)
from extensor_coding.circuit import eval_circuit

TWO_CYCLE = Digraph(2, [(0, 1), (1, 0)])


def test_trial_count_uses_exact_eps():
    assert trial_count(3, 0.2) == 67500
    assert trial_count(3, Fraction(1, 4)) == 43200


def test_detectors_on_trivial_graphs():
    P = Digraph.path(3)
    E = Digraph(4, [])
    for det in (detect_deterministic, detect_representative, detect_random_edge_weights, detect_unambiguous):
        assert det(P, 3)
        assert not det(E, 2)
        assert not det(P, 4)
    assert detect_few_paths(P, 3, 1) and not detect_few_paths(E, 2, 1)


def test_unambiguous_fails_on_cancelling_pair_but_others_do_not():
    # the two 2-paths of a 2-cycle have opposite Vandermonde determinants
    assert sum_path_dets(TWO_CYCLE, 2) == 0
    assert not detect_unambiguous(TWO_CYCLE, 2)
    assert detect_deterministic(TWO_CYCLE, 2)
    assert detect_few_paths(TWO_CYCLE, 2, 2)
    assert detect_representative(TWO_CYCLE, 2)


def test_detectors_agree_with_oracle_on_random_graphs():
    rnd = random.Random(77)
    for trial in range(60):
        G = random_digraph(rnd, rnd.randint(2, 6), rnd.choice([0.2, 0.35, 0.5]))
        for k in (2, 3, 4):
            if k > G.n:
                continue
            paths = enumerate_k_paths(G, k)
            truth = bool(paths)
            assert detect_deterministic(G, k) == truth
            assert detect_deterministic(G, k, engine="exact") == truth
            assert detect_representative(G, k) == truth
            if not truth:
                assert not detect_random_edge_weights(G, k, seed=trial)
            if len(paths) <= 4:
                assert detect_few_paths(G, k, max(len(paths), 1)) == truth
            if len(paths) <= 1:
                assert detect_unambiguous(G, k) == truth
            assert lifted_vandermonde_top(G, k) == lift_sign(k) * sum_path_dets(G, k, 2)


def test_build_L_preserves_value_at_all_ones():
    rnd = random.Random(3)
    for _ in range(10):
        G = random_digraph(rnd, 5, 0.4)
        k = 3
        K = walk_sum_circuit(G, k, edge_vars=True)
        L = build_L(K, G.n, k)
        assert eval_circuit(L, [1] * G.m) == sum_path_dets(G, k)


def test_prime_encoding_zero_test():
    assert first_primes(5) == [2, 3, 5, 7, 11]
    G = Digraph(3, [])
    L = build_L(walk_sum_circuit(G, 2, edge_vars=True), 3, 2)
    assert not zero_test_prime_encoding(L, 1)


def test_representative_family_sizes_bounded_by_binomial():
    from math import comb

    G = Digraph.complete(6)
    k = 4
    fams = representative_families(G, k)
    for (v, p), fam in fams.items():
        assert len(fam) <= comb(k, p)
        for path in fam.paths:
            assert len(set(path)) == p and path[-1] == v


def test_approx_count_paths_k5():
    est = approx_count_paths(Digraph.complete(5), 3, 0.2, seed=1)
    assert est.trials == 67500
    assert abs(float(est.estimate) - 60) <= 0.2 * 60
    again = approx_count_paths(Digraph.complete(5), 3, 0.2, seed=1)
    assert again.estimate == est.estimate


def test_approx_count_paths_edge_cases():
    assert approx_count_paths(Digraph(4, []), 2, 0.5, seed=0).estimate == 0
    assert approx_count_paths(Digraph.path(2), 3, 0.5, seed=0).estimate == 0
    with pytest.raises(ValueError):
        approx_count_paths(Digraph.path(3), 2, 0)


def test_jobs_do_not_change_results():
    K = walk_sum_circuit(Digraph.complete(5), 3)
    a = lifted_bernoulli_trials(K, 3, 9, 400)
    b = lifted_bernoulli_trials(K, 3, 9, 400, jobs=2)
    c = lifted_bernoulli_trials(K, 3, 9, 400, engine="exact")
    assert list(a) == list(b) == [int(x) for x in c]


def test_sqrt3_trials_match_exact_engine():
    K = walk_sum_circuit(Digraph.complete(4), 2)
    a = lifted_bernoulli_trials(K, 2, 4, 50, dist="sqrt3")
    b = lifted_bernoulli_trials(K, 2, 4, 50, dist="sqrt3", engine="exact")
    assert [int(x) for x in a] == [int(x) for x in b]


@pytest.mark.parametrize("k,value", [(1, 1), (2, 2), (3, 6)])
def test_moment_pm1_exhaustive(k, value):
    rep = bernoulli_moment_check(k)
    assert rep.e2 == value and all(rep.checks.values())


@pytest.mark.parametrize("k,value", [(1, 3), (2, 24)])
def test_moment_sqrt3_fourth(k, value):
    rep = bernoulli_moment_check(k, dist="sqrt3")
    assert rep.e2 == [1, 2][k - 1]
    assert rep.e4 == value and rep.checks["e4_closed_form"]
