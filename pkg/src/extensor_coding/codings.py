"""Vertex/edge codings: Vandermonde, Bernoulli, {+-sqrt3, 0}, lifted, edge variables,
random edge weights and color coding.

Every random constructor is a pure function of (seed, trial): sign entries
come from a splitmix64 counter hash, other draws from a numpy generator
seeded with (seed, trial, purpose).  The compiled evaluator in ``fastlift``
reproduces the same hash, so both engines see identical codings.
"""

from __future__ import annotations

from typing import List

import numpy as np

from .extensor import VectorK, lift
from .graph import Coding, Digraph
from .rings import QQ_SQRT3, ZZ, PolyRing, QuadExtQ3
from .zeon import Zeon

MASK64 = (1 << 64) - 1

PURPOSE_PM1 = 1
PURPOSE_SQRT3 = 2
PURPOSE_EDGE_WEIGHT = 3
PURPOSE_COLOR = 4


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class SeededRng:
    """Counter-based randomness derived from a 64-bit master seed."""

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64

    def hash(self, *counters: int) -> int:
        h = splitmix64(self.seed)
        for c in counters:
            h = splitmix64(h ^ (int(c) & MASK64))
        return h

    def pm1_vector(self, trial: int, var: int, k: int) -> List[int]:
        """k uniform signs; bit i of one hash decides entry i."""
        h = self.hash(PURPOSE_PM1, trial, var)
        return [1 - 2 * ((h >> i) & 1) for i in range(k)]

    def sqrt3_signs(self, trial: int, var: int, k: int) -> List[int]:
        """Entries s in {-1, 0, 1} with probabilities 1/6, 2/3, 1/6 (value is s*sqrt3)."""
        out = []
        for i in range(k):
            r = self.hash(PURPOSE_SQRT3, trial, var, i) % 6
            out.append(-1 if r == 0 else (1 if r == 1 else 0))
        return out

    def generator(self, trial: int, purpose: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, int(trial), int(purpose)])


def vandermonde_vector(i: int, k: int, ring=ZZ) -> VectorK:
    """phi(v_i) = (1, i, ..., i^(k-1)) for 1-based i."""
    return VectorK([ring.from_int(i**j) for j in range(k)])


def vandermonde_coding(n: int, k: int, ring=ZZ) -> Coding:
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    return Coding([vandermonde_vector(i + 1, k, ring) for i in range(n)], ring=ring)


def bernoulli_coding(n: int, k: int, rng: SeededRng, trial: int = 0) -> Coding:
    return Coding([VectorK(rng.pm1_vector(trial, v, k)) for v in range(n)], ring=ZZ)


def sqrt3_coding(n: int, k: int, rng: SeededRng, trial: int = 0) -> Coding:
    vecs = [VectorK([QuadExtQ3(0, s) for s in rng.sqrt3_signs(trial, v, k)]) for v in range(n)]
    return Coding(vecs, ring=QQ_SQRT3)


def lift_coding(xi: Coding) -> Coding:
    out = []
    for val in xi.vertex:
        if not isinstance(val, VectorK):
            raise TypeError("lift_coding needs vector-valued vertex codes")
        out.append(lift(val))
    return Coding(out, xi.edge, xi.ring)


def edge_variable_coding(G: Digraph, k: int) -> Coding:
    """Vertices get phi over Z[y_1..y_m]; edge e_j gets the variable y_j."""
    R = PolyRing(G.m)
    vertex = [vandermonde_vector(i + 1, k, R) for i in range(G.n)]
    edge = {j: R.variable(j) for j in range(G.m)}
    return Coding(vertex, edge, R)


def random_edge_weights(G: Digraph, k: int, rng: SeededRng, trial: int = 0) -> List[int]:
    gen = rng.generator(trial, PURPOSE_EDGE_WEIGHT)
    return [int(x) for x in gen.integers(1, 100 * k + 1, size=G.m)]


def random_edge_weight_coding(G: Digraph, k: int, rng: SeededRng, trial: int = 0) -> Coding:
    weights = random_edge_weights(G, k, rng, trial)
    base = vandermonde_coding(max(G.n, 1), k)
    return Coding(base.vertex[: G.n], dict(enumerate(weights)), ZZ)


def random_colors(n: int, k: int, rng: SeededRng, trial: int = 0) -> List[int]:
    gen = rng.generator(trial, PURPOSE_COLOR)
    return [int(x) for x in gen.integers(1, k + 1, size=n)]


def color_coding(n: int, k: int, rng: SeededRng, trial: int = 0, ring=ZZ) -> Coding:
    """Each vertex gets the Zeon generator of a uniformly random color in 1..k."""
    colors = random_colors(n, k, rng, trial)
    return Coding([Zeon.generator(k, c, ring.one(), ring) for c in colors], ring=ring)
