"""Scaling measurements: wedge_vector time per k, walk-sum op counts per m,
and the Zeon naive/fast product crossover."""

from __future__ import annotations

import random
import time
from typing import Dict, List

import numpy as np

from .codings import vandermonde_coding
from .extensor import Extensor, ExteriorAlgebra, VectorK, wedge_vector
from .graph import Digraph, walk_sum
from .zeon import Zeon, zeon_multiply_fast, zeon_multiply_naive


def _best_time(fn, repeats: int, inner: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def wedge_vector_timings(ks=range(8, 15), repeats: int = 5, seed: int = 0) -> List[Dict]:
    """Best-of-``repeats`` seconds per wedge_vector call for each k, with the ratio to k-1."""
    rnd = random.Random(seed)
    rows = []
    prev = None
    for k in ks:
        ext = Extensor(k, [rnd.randint(-3, 3) for _ in range(1 << k)])
        vec = VectorK([rnd.randint(-3, 3) for _ in range(k)])
        wedge_vector(ext, vec)  # warm the index tables
        inner = max(1, 2 ** (14 - k))
        sec = _best_time(lambda: wedge_vector(ext, vec), repeats, inner)
        rows.append({"k": k, "seconds": sec, "ratio": None if prev is None else sec / prev})
        prev = sec
    return rows


def walk_sum_op_counts(k: int = 3, n: int = 12, ms=(12, 24, 48, 96), seed: int = 0) -> List[Dict]:
    """Ring additions and multiplications of the walk-sum at the Vandermonde coding as m grows."""
    rnd = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rows = []
    for m in ms:
        G = Digraph(n, rnd.sample(pairs, m))
        counter: Dict[str, int] = {}
        walk_sum(G, vandermonde_coding(n, k), k, ring=ExteriorAlgebra(k), counter=counter)
        rows.append({"m": m, "add": counter.get("add", 0), "mul": counter.get("mul", 0),
                     "ops": counter.get("add", 0) + counter.get("mul", 0)})
    return rows


def zeon_crossover(ts=range(2, 13), repeats: int = 3, seed: int = 0) -> List[Dict]:
    """Naive O(3^t) vs ranked-transform product times; ``fast_wins`` marks the crossover side."""
    rng = np.random.default_rng(seed)
    rows = []
    for t in ts:
        a = Zeon(t, [int(x) for x in rng.integers(-3, 4, 1 << t)])
        b = Zeon(t, [int(x) for x in rng.integers(-3, 4, 1 << t)])
        inner = max(1, 2 ** (10 - t))
        naive = _best_time(lambda: zeon_multiply_naive(a, b), repeats, inner)
        fast = _best_time(lambda: zeon_multiply_fast(a, b), repeats, inner)
        rows.append({"t": t, "naive": naive, "fast": fast, "fast_wins": fast < naive})
    return rows


def run_suite(suite: str = "all") -> Dict[str, List[Dict]]:
    out: Dict[str, List[Dict]] = {}
    if suite in ("all", "wedge"):
        out["wedge"] = wedge_vector_timings()
    if suite in ("all", "walk"):
        out["walk"] = walk_sum_op_counts()
    if suite in ("all", "zeon"):
        out["zeon"] = zeon_crossover()
    if not out:
        raise ValueError(f"unknown suite {suite!r}")
    return out
