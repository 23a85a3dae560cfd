import random

import pytest
from hypothesis import given, settings

from conftest import digraphs, random_digraph
from extensor_coding.codings import vandermonde_coding
from extensor_coding.extensor import top_coefficient
from extensor_coding.graph import (
    Coding,
    Digraph,
    GraphFormatError,
    parse_graph,
    walk_sum,
    walk_sum_circuit,
    walk_sum_extensor,
)
from extensor_coding.circuit import eval_circuit
from extensor_coding.oracles import count_k_walks, sum_path_dets


def test_parse_directed_and_undirected():
    G = parse_graph("# comment\np directed 3 2\n1 2\n2 3\n")
    assert G.n == 3 and G.edges == ((0, 1), (1, 2))
    U = parse_graph("p undirected 3 1\n1 3\n")
    assert U.edges == ((0, 2), (2, 0))
    assert parse_graph(G.to_text()).edges == G.edges


@pytest.mark.parametrize("text", [
    "1 2\n",
    "p directed 2 2\n1 2\n",
    "p directed 2 1\n1 3\n",
    "p directed 2 2\n1 2\n1 2\n",
    "p undirected 2 2\n1 2\n2 1\n",
    "p sideways 2 0\n",
    "p directed 2 1\n1 x\n",
])
def test_parse_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


@settings(max_examples=40)
@given(digraphs(max_n=6))
def test_walk_sum_over_integers_counts_walks(G):
    xi = Coding([1] * G.n)
    for k in range(1, G.n + 1):
        assert walk_sum(G, xi, k) == count_k_walks(G, k)


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=5))
def test_walk_path_duality(G):
    for k in range(1, G.n + 1):
        top = top_coefficient(walk_sum_extensor(G, vandermonde_coding(G.n, k), k))
        assert top == sum_path_dets(G, k)


def test_walk_sum_circuit_is_skew_and_matches_walk_sum():
    rnd = random.Random(8)
    for _ in range(20):
        G = random_digraph(rnd, rnd.randint(1, 6), 0.4)
        for k in range(1, G.n + 1):
            K = walk_sum_circuit(G, k)
            assert K.is_skew()
            vals = [rnd.randint(-3, 3) for _ in range(G.n)]
            assert eval_circuit(K, vals) == walk_sum(G, Coding(vals), k)
            KE = walk_sum_circuit(G, k, edge_vars=True)
            assert KE.is_skew()
            assert eval_circuit(KE, [1] * (G.n + G.m)) == count_k_walks(G, k)


def test_op_counter_linear_in_edges():
    n, k = 10, 3
    rnd = random.Random(0)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    counts = []
    for m in (20, 40, 60, 80):
        G = Digraph(n, rnd.sample(pairs, m))
        c = {}
        walk_sum(G, Coding([1] * n), k, counter=c)
        counts.append(c["add"] + c["mul"])
    assert counts[3] - counts[2] == counts[2] - counts[1] == counts[1] - counts[0]


def test_k_out_of_range():
    with pytest.raises(ValueError):
        walk_sum(Digraph.path(3), Coding([1, 1, 1]), 4)
