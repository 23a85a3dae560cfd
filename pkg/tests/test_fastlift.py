import random

import numpy as np
import pytest

from test_circuit import random_circuit
from conftest import random_digraph
from extensor_coding.circuit import eval_circuit
from extensor_coding.codings import lift_coding
from extensor_coding.extensor import Extensor, ExteriorAlgebra, VectorK, subset_sign, top_coefficient
from extensor_coding.fastlift import (
    MODE_PM1,
    MODE_SQRT3,
    LiftedPlan,
    NotSkewError,
    lifted_layout,
    walk_top_bits,
    walk_top_weighted,
)
from extensor_coding.graph import Coding, Digraph, walk_sum_circuit, walk_sum_extensor
from extensor_coding.paths import _lifted_trial_exact


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_layout_pairs_are_consistent(k):
    from math import comb

    off, pair_off, src, dst, ii, jj, sign = lifted_layout(k)
    assert off[-1] == comb(2 * k, k)
    assert len(src) == sum(comb(k, p) ** 2 * (k - p) ** 2 for p in range(k))
    assert set(np.unique(sign)) <= {-1, 1}
    assert all(off[1] <= d < off[-1] for d in dst)


@pytest.mark.parametrize("dist", ["pm1", "sqrt3"])
def test_kernel_matches_exact_engine_on_random_skew_circuits(dist):
    rnd = random.Random(21)
    for case in range(25):
        n_vars = rnd.randint(2, 5)
        c = random_circuit(rnd, n_vars, rnd.randint(3, 12), skew=True)
        k = rnd.randint(1, 3)
        plan = LiftedPlan(c, k)
        got = plan.run_random(dist, case, 0, 6)
        assert got is not None
        want = [_lifted_trial_exact(c, k, case, j, dist) for j in range(6)]
        assert [int(x) for x in got] == want


def test_int64_and_float_lanes_agree():
    rnd = random.Random(5)
    for case in range(10):
        G = random_digraph(rnd, 6, 0.5)
        plan = LiftedPlan(walk_sum_circuit(G, 3), 3)
        for mode, dist, scale in ((MODE_PM1, "pm1", 1), (MODE_SQRT3, "sqrt3", 3)):
            lanes = plan._call_lanes(mode, case, 0, 20, scale)
            ints, _ = plan._call(mode, case, 0, 20, scale, np.zeros((1, 1, 1), np.int64), np.int64)
            assert list(lanes) == list(ints)
            assert list(lanes) == list(plan.run_random(dist, case, 0, 20))


def test_explicit_run_matches_generic_and_detects_overflow():
    G = Digraph.complete(5)
    k = 3
    plan = LiftedPlan(walk_sum_circuit(G, k), k)
    vecs = [[(i + 1) ** j for j in range(k)] for i in range(G.n)]
    xi = lift_coding(Coding([VectorK(v) for v in vecs]))
    generic = top_coefficient(walk_sum_extensor(G, xi, k))
    assert plan.run_explicit(vecs) == generic
    huge = [[2**40] * k for _ in range(G.n)]
    assert plan.run_explicit(huge) is None


def test_non_skew_circuit_rejected():
    from test_circuit import SQUARE
    from extensor_coding.circuit import parse_circuit

    with pytest.raises(NotSkewError):
        LiftedPlan(parse_circuit(SQUARE), 2)


def test_batched_walk_sum_matches_generic():
    rnd = random.Random(9)
    for k in (2, 3, 4):
        n = 5
        vecs = [[(i + 1) ** j for j in range(k)] for i in range(n)]
        graphs, bits = [], []
        for _ in range(30):
            G = random_digraph(rnd, n, 0.4)
            graphs.append(G)
            bits.append(sum(1 << (u * n + v) for u, v in G.edges))
        got = walk_top_bits(bits, n, k, vecs)
        for G, g in zip(graphs, got):
            xi = Coding([VectorK(v) for v in vecs])
            assert int(g) == top_coefficient(walk_sum_extensor(G, xi, k))
    with pytest.raises(OverflowError):
        walk_top_weighted(np.full((1, 4, 4), 2**40), 3, [[2**20] * 3] * 4)


def test_generic_sign_helper_sanity():
    assert subset_sign(0b10, 0b01) == -1
    assert top_coefficient(Extensor.scalar(2, 5) * VectorK([1, 0]) * VectorK([0, 1])) == 5
    assert isinstance(ExteriorAlgebra(2).one(), Extensor)
    assert eval_circuit is not None
