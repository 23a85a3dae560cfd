import random

import pytest
import sympy

from conftest import random_digraph
from extensor_coding.graph import Digraph
from extensor_coding.oracles import (
    OracleBudgetError,
    count_homomorphisms,
    count_injective_homomorphisms,
    count_k_walks,
    count_subgraphs,
    enumerate_k_paths,
    leibniz_det,
    vandermonde_path_det,
)


def test_enumerate_examples():
    assert len(enumerate_k_paths(Digraph.complete(3), 3)) == 6
    assert enumerate_k_paths(Digraph.path(3), 3) == [(0, 1, 2)]
    assert len(enumerate_k_paths(Digraph(4, []), 1)) == 4
    with pytest.raises(OracleBudgetError):
        enumerate_k_paths(Digraph.complete(7), 5, budget=100)


def test_paths_are_simple_and_use_edges():
    rnd = random.Random(1)
    for _ in range(20):
        G = random_digraph(rnd, 6, 0.4)
        for p in enumerate_k_paths(G, 4):
            assert len(set(p)) == 4 and all(G.has_edge(a, b) for a, b in zip(p, p[1:]))


def test_hom_counts_examples():
    edge = Digraph(2, [(0, 1)])
    K3 = Digraph.complete(3)
    assert count_homomorphisms(edge, K3) == 6 and count_injective_homomorphisms(edge, K3) == 6
    two = Digraph(2, [])
    assert count_homomorphisms(two, Digraph(3, [])) == 9
    assert count_injective_homomorphisms(two, Digraph(3, [])) == 6
    assert count_homomorphisms(Digraph(1, [(0, 0)]), K3) == 0


def test_subgraph_counts_examples():
    assert count_subgraphs(Digraph.path(3), Digraph.complete(5)) == 60
    assert count_subgraphs(Digraph.path(4), Digraph.path(4)) >= 1
    assert count_subgraphs(Digraph.complete(4), Digraph.complete(3)) == 0


def test_leibniz_matches_sympy():
    rnd = random.Random(0)
    for k in range(1, 6):
        m = [[rnd.randint(-4, 4) for _ in range(k)] for _ in range(k)]
        assert leibniz_det(m) == sympy.Matrix(m).det()


def test_vandermonde_det_closed_form():
    for ids in [(0, 1, 2), (2, 0, 3), (4, 1)]:
        k = len(ids)
        want = 1
        for a in range(k):
            for b in range(a + 1, k):
                want *= (ids[b] + 1) - (ids[a] + 1)
        assert vandermonde_path_det(ids, k) == want


def test_walk_count_matches_matrix_power():
    G = Digraph.complete(4)
    assert count_k_walks(G, 3) == 4 * 3 * 3
