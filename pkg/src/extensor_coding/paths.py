"""k-path detection and approximate counting.

detect_unambiguous       walk-sum at the Vandermonde coding (needs the <=1 path promise)
detect_deterministic     walk-sum at the lifted Vandermonde coding, over Lambda(Z^{2k})
approx_count_paths       lifted Bernoulli trials, averaged and normalized by k!
detect_few_paths         edge-variable circuit, expanded to integers, zero-tested
detect_random_edge_weights  Vandermonde coding with random integer edge weights
detect_representative    representative path families kept by exact row reduction
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np

from .circuit import ADD, CONST, INPUT, Circuit, CircuitBuilder, eval_circuit
from .codings import SeededRng, lift_coding, random_edge_weights, vandermonde_coding
from .extensor import (
    MAX_LIFTED_K,
    DimensionCapError,
    Extensor,
    ExteriorAlgebra,
    VectorK,
    lift_sign,
    subset_sign,
    top_coefficient,
    wedge_vector,
)
from .fastlift import LiftedPlan, walk_top_weighted
from .graph import Coding, Digraph, walk_sum_circuit, walk_sum_extensor
from .rings import ZZ, prime_field_create

KERNEL_MAX_N = 64


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # 0.2 should mean 1/5, not the nearest binary double
        return Fraction(repr(x))
    return Fraction(x)


def _check_k(G: Digraph, k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")


def _vandermonde_rows(n: int, k: int) -> List[List[int]]:
    return [[(i + 1) ** j for j in range(k)] for i in range(n)]


def _weights_matrix(G: Digraph, weights=None) -> np.ndarray:
    w = np.zeros((1, G.n, G.n), dtype=np.int64)
    for eid, (u, v) in enumerate(G.edges):
        w[0, u, v] = 1 if weights is None else weights[eid]
    return w


def _unlifted_top(G: Digraph, k: int, weights=None) -> int:
    """Top coefficient of f(G; phi) (optionally with integer edge weights)."""
    if G.n <= KERNEL_MAX_N:
        try:
            return int(walk_top_weighted(_weights_matrix(G, weights), k, _vandermonde_rows(G.n, k))[0])
        except OverflowError:
            pass
    xi = vandermonde_coding(G.n, k)
    if weights is not None:
        xi = Coding(xi.vertex, dict(enumerate(weights)), ZZ)
    return top_coefficient(walk_sum_extensor(G, xi, k))


# ----------------------------------------------------------------- Algorithm U


def detect_unambiguous(G: Digraph, k: int) -> bool:
    """True iff f(G; phi) != 0.  Correct when G has at most one k-path."""
    _check_k(G, k)
    if k > G.n:
        return False
    return _unlifted_top(G, k) != 0


# ------------------------------------------------------- deterministic lifted


def lifted_vandermonde_top(G: Digraph, k: int, engine: str = "auto") -> int:
    """Coefficient of e_[2k] in f(G; lifted phi); equals lift_sign(k) * sum_P det(Phi_P)^2."""
    if k > MAX_LIFTED_K:
        raise DimensionCapError(f"lifted dimension {k} exceeds the configured cap {MAX_LIFTED_K}")
    if engine == "auto":
        plan = LiftedPlan(walk_sum_circuit(G, k), k)
        out = plan.run_explicit(_vandermonde_rows(G.n, k))
        if out is not None:
            return out
    return top_coefficient(walk_sum_extensor(G, lift_coding(vandermonde_coding(G.n, k)), k))


def detect_deterministic(G: Digraph, k: int, engine: str = "auto") -> bool:
    """True iff G has a k-path; every path contributes det^2 with the same sign."""
    _check_k(G, k)
    if k > G.n:
        return False
    return lifted_vandermonde_top(G, k, engine) != 0


# ----------------------------------------------------------------- Algorithm C


@dataclass
class CountEstimate:
    estimate: Fraction
    trials: int
    raw: np.ndarray  # sign-normalized X_j (object array of ints)
    epsilon: Fraction
    seed: int
    k: int
    extra: Dict[str, object] = field(default_factory=dict)

    def __float__(self):
        return float(self.estimate)


def trial_count(k: int, eps) -> int:
    eps = _as_fraction(eps)
    return math.ceil(Fraction(100 * k**3) / (eps * eps))


def _lifted_trial_exact(circuit: Circuit, k: int, seed: int, trial: int, dist: str) -> int:
    """Top coefficient for one trial, computed with exact Python arithmetic."""
    rng = SeededRng(seed)
    n = circuit.n_vars
    if dist == "pm1":
        vecs = [VectorK(rng.pm1_vector(trial, v, k)) for v in range(n)]
        scale = 1
    else:
        # entries are s * sqrt3 and lift(sqrt3 * s) = 3 * lift(s)
        vecs = [VectorK(rng.sqrt3_signs(trial, v, k)) for v in range(n)]
        scale = 3
    lifted = lift_coding(Coding(vecs)).vertex
    val = eval_circuit(circuit, lifted, ExteriorAlgebra(2 * k))
    if not isinstance(val, Extensor):
        val = val.expand()
    return top_coefficient(val) * scale**k


def _chunk_worker(args):
    circuit, k, seed, lo, hi, dist, engine = args
    return _run_trials(circuit, k, seed, lo, hi, dist, engine)


def _run_trials(circuit: Circuit, k: int, seed: int, lo: int, hi: int, dist: str, engine: str) -> np.ndarray:
    """Top coefficients for trials lo..hi-1 (int64 from the kernel, else Python ints)."""
    if engine == "auto":
        plan = LiftedPlan(circuit, k)
        res = plan.run_random(dist, seed, lo, hi - lo)
        if res is not None:
            return res
    out = np.empty(hi - lo, dtype=object)
    out[:] = [_lifted_trial_exact(circuit, k, seed, j, dist) for j in range(lo, hi)]
    return out


def exact_sum(values: np.ndarray) -> int:
    """Sum without int64 wrap-around."""
    if values.dtype == np.int64 and len(values):
        if float(np.abs(values).max()) * len(values) < 2.0**62:
            return int(values.sum())
        return sum(int(x) for x in values)
    return int(sum(values))


def lifted_bernoulli_trials(circuit: Circuit, k: int, seed: int, trials: int, dist: str = "pm1",
                            engine: str = "auto", jobs: int = 1) -> np.ndarray:
    """Top coefficients of the lifted circuit for trials 0..trials-1.

    Trial j depends only on (seed, j), so ``jobs`` never changes the result.
    """
    if dist not in ("pm1", "sqrt3"):
        raise ValueError(f"unknown distribution {dist!r}")
    if k > MAX_LIFTED_K:
        raise DimensionCapError(f"lifted dimension {k} exceeds the configured cap {MAX_LIFTED_K}")
    if jobs <= 1 or trials < 2 * jobs:
        return _run_trials(circuit, k, seed, 0, trials, dist, engine)
    step = math.ceil(trials / jobs)
    chunks = [(circuit, k, seed, lo, min(trials, lo + step), dist, engine) for lo in range(0, trials, step)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_chunk_worker, chunks))
    if all(p.dtype == np.int64 for p in parts):
        return np.concatenate(parts)
    out = np.empty(trials, dtype=object)
    out[:] = [int(x) for p in parts for x in p]
    return out


def approx_count_paths(G: Digraph, k: int, eps, seed: int = 0, trials: Optional[int] = None,
                       dist: str = "pm1", engine: str = "auto", jobs: int = 1) -> CountEstimate:
    """(1 +- eps)-estimate of the number of k-paths with probability >= 99%.

    Each trial evaluates the walk-sum at a lifted random coding; its e_[2k]
    coefficient times lift_sign(k) is a sum of squared determinants whose
    expectation is k! per path.
    """
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    _check_k(G, k)
    t = trial_count(k, eps) if trials is None else int(trials)
    if t < 1:
        raise ValueError("need at least one trial")
    if k > G.n:
        raw = np.zeros(t, dtype=object)
        return CountEstimate(Fraction(0), t, raw, eps, seed, k)
    circuit = walk_sum_circuit(G, k)
    raw = lifted_bernoulli_trials(circuit, k, seed, t, dist, engine, jobs) * lift_sign(k)
    est = Fraction(exact_sum(raw), math.factorial(k) * t)
    return CountEstimate(est, t, raw, eps, seed, k, {"dist": dist})


# --------------------------------------------------------------- moment check


@dataclass
class MomentReport:
    k: int
    dist: str
    mode: str
    samples: int
    e2: Fraction
    e4: Fraction
    checks: Dict[str, bool]


def _leibniz_det_batch(mats: np.ndarray) -> np.ndarray:
    """Exact int64 determinants of a stack of small integer matrices."""
    from itertools import permutations

    k = mats.shape[1]
    out = np.zeros(mats.shape[0], dtype=np.int64)
    for perm in permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        term = np.ones(mats.shape[0], dtype=np.int64)
        for r in range(k):
            term = term * mats[:, r, perm[r]]
        out += -term if inv & 1 else term
    return out


def bernoulli_moment_check(k: int, mode: str = "exhaustive", dist: str = "pm1", samples: int = 10**6,
                           seed: int = 0, tolerance: float = 0.03) -> MomentReport:
    """E det(B)^2 and E det(B)^4 for a random k x k matrix B.

    ``dist`` is "pm1" (uniform signs) or "sqrt3" (entries -sqrt3, 0, sqrt3 with
    probabilities 1/6, 2/3, 1/6).  Exhaustive mode computes exact expectations.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if dist not in ("pm1", "sqrt3"):
        raise ValueError(f"unknown distribution {dist!r}")
    fact = math.factorial(k)
    if mode == "exhaustive":
        if dist == "pm1":
            if k > 5:
                raise ValueError("exhaustive +-1 mode supports k <= 5")
            # Flipping a row or a column keeps det^2, so fix the first row and
            # column to +1; every normalized matrix stands for 2^(2k-1) others.
            free = (k - 1) ** 2
            codes = np.arange(1 << free, dtype=np.int64)
            mats = np.ones((len(codes), k, k), dtype=np.int64)
            for idx in range(free):
                r, c = 1 + idx // (k - 1), 1 + idx % (k - 1)
                mats[:, r, c] = 1 - 2 * ((codes >> idx) & 1)
            d = _leibniz_det_batch(mats).astype(object)
            n = len(codes)
            e2 = Fraction(int(np.sum(d**2)), n)
            e4 = Fraction(int(np.sum(d**4)), n)
        else:
            if k > 2:
                raise ValueError("exhaustive sqrt3 mode supports k <= 2")
            probs = {-1: Fraction(1, 6), 0: Fraction(2, 3), 1: Fraction(1, 6)}
            e2 = e4 = Fraction(0)
            for entries in product((-1, 0, 1), repeat=k * k):
                w = Fraction(1)
                for s in entries:
                    w *= probs[s]
                mat = np.array(entries, dtype=np.int64).reshape(1, k, k)
                d = int(_leibniz_det_batch(mat)[0])
                # entries are s*sqrt3, so det B = 3^(k/2) det S
                e2 += w * 3**k * d * d
                e4 += w * 9**k * d**4
        n = None
    elif mode == "samples":
        gen = np.random.default_rng([seed, k, 0 if dist == "pm1" else 1])
        e2s = e4s = 0
        n = int(samples)
        for lo in range(0, n, 1 << 16):
            m = min(1 << 16, n - lo)
            if dist == "pm1":
                mats = 1 - 2 * gen.integers(0, 2, size=(m, k, k), dtype=np.int64)
                d = _leibniz_det_batch(mats).astype(object)
                e2s += int(np.sum(d**2))
                e4s += int(np.sum(d**4))
            else:
                r = gen.integers(0, 6, size=(m, k, k), dtype=np.int64)
                mats = np.where(r == 0, -1, np.where(r == 1, 1, 0))
                d = _leibniz_det_batch(mats).astype(object)
                e2s += 3**k * int(np.sum(d**2))
                e4s += 9**k * int(np.sum(d**4))
        e2, e4 = Fraction(e2s, n), Fraction(e4s, n)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    checks = {}
    if mode == "exhaustive":
        checks["e2_equals_k_factorial"] = e2 == fact
    else:
        checks["e2_within_tolerance"] = abs(e2 - fact) <= Fraction(repr(tolerance)) * fact
    checks["e4_below_bound"] = e4 <= fact**2 * k**3
    if dist == "sqrt3" and mode == "exhaustive":
        checks["e4_closed_form"] = e4 == Fraction(fact**2 * (k + 1) * (k + 2), 2)
    return MomentReport(k, dist, mode, n or 0, e2, e4, checks)


# ----------------------------------------------------------------- Algorithm F


def build_L(K: Circuit, n: int, k: int) -> Circuit:
    """Expand a skew circuit over Lambda(Z^k)[Y] into one over Z[Y].

    Variables 0..n-1 of K hold phi(v_1..v_n); variables n.. are the edge
    variables y_j, which become variables 0.. of L.  Gate g of K becomes the
    gates g_I with g = sum_I g_I e_I; only structurally nonzero g_I are built.
    """
    m = K.n_vars - n
    b = CircuitBuilder(m)
    comp: Dict[int, Dict[int, int]] = {}

    def leaf(gate):
        """Components of an input/constant gate of K."""
        if gate.kind == CONST:
            return {0: b.const(gate.a)} if gate.a else {}
        if gate.a < n:
            i = gate.a + 1
            # phi(v_i) = sum_j i^(j-1) e_j
            return {1 << j: b.const(i**j) for j in range(k)}
        return {0: b.input(gate.a - n)}

    for g in K.live_gates():
        gate = K.gates[g]
        if gate.kind in (INPUT, CONST):
            comp[g] = leaf(gate)
        elif gate.kind == ADD:
            x, y = comp[gate.a], comp[gate.b]
            out = {}
            for I in set(x) | set(y):
                if I in x and I in y:
                    out[I] = b.add(x[I], y[I])
                else:
                    out[I] = x[I] if I in x else y[I]
            comp[g] = out
        else:
            left, right = comp[gate.a], comp[gate.b]
            if K.gates[gate.b].kind not in (INPUT, CONST) and K.gates[gate.a].kind not in (INPUT, CONST):
                raise ValueError("circuit K must be skew")
            terms: Dict[int, Tuple[List[int], List[int]]] = {}
            for I1, g1 in left.items():
                for I2, g2 in right.items():
                    if I1 & I2:
                        continue
                    pos, neg = terms.setdefault(I1 | I2, ([], []))
                    (pos if subset_sign(I1, I2) > 0 else neg).append(b.mul(g1, g2))
            out = {}
            for I, (pos, neg) in terms.items():
                if neg:
                    minus = b.mul(b.const(-1), b.sum(neg))
                    out[I] = b.add(b.sum(pos), minus) if pos else minus
                else:
                    out[I] = b.sum(pos)
            comp[g] = out
    top = comp[K.output].get((1 << k) - 1)
    return b.build(top if top is not None else b.const(0))


def first_primes(m: int) -> List[int]:
    out: List[int] = []
    c = 2
    while len(out) < m:
        if all(c % p for p in out if p * p <= c):
            out.append(c)
        c += 1
    return out


def zero_test_prime_encoding(L: Circuit, C: int) -> bool:
    """Deterministic test for a multilinear polynomial with at most C monomials.

    Evaluates at y_j = p_j^s for s = 0..C.  Distinct monomials take distinct
    values prod p_j, so the evaluations form a nonsingular Vandermonde system
    in the monomial coefficients.  Returns True iff L is not identically zero.
    """
    if C < 0:
        raise ValueError("C must be non-negative")
    primes = first_primes(L.n_vars)
    for s in range(C + 1):
        if eval_circuit(L, [p**s for p in primes], ZZ) != 0:
            return True
    return False


def zero_test_random_prime(L: Circuit, seed: int = 0, trials: int = 1) -> bool:
    """Randomized variant: evaluate at random points modulo random 62-bit primes."""
    for t in range(trials):
        F = prime_field_create(62, rng_seed=[seed, t, 21])
        gen = np.random.default_rng([seed, t, 22])
        point = [F.from_int(int(x)) for x in gen.integers(0, 2**62, size=L.n_vars)]
        if eval_circuit(L, point, F) != 0:
            return True
    return False


def detect_few_paths(G: Digraph, k: int, C: int, fast: bool = False, seed: int = 0) -> bool:
    """Deterministic k-path detection when G has at most C k-paths.

    The walk-sum with edge variables is a sum over paths of (edge monomial) *
    det(Phi_P); distinct paths have distinct edge sets, so nothing cancels.
    """
    _check_k(G, k)
    if k > G.n:
        return False
    K = walk_sum_circuit(G, k, edge_vars=True)
    L = build_L(K, G.n, k)
    if fast:
        return zero_test_random_prime(L, seed)
    return zero_test_prime_encoding(L, C)


# ------------------------------------------------------- random edge weights


def detect_random_edge_weights(G: Digraph, k: int, seed: int = 0, trial: int = 0) -> bool:
    """One-sided randomized detection: never True without a k-path; a false
    negative needs the weights to hit a root of a nonzero degree-(k-1)
    polynomial, which happens with probability at most (k-1)/(100k)."""
    _check_k(G, k)
    if k > G.n:
        return False
    weights = random_edge_weights(G, k, SeededRng(seed), trial)
    return _unlifted_top(G, k, weights) != 0


# ----------------------------------------------------------------- Algorithm R


class RepresentativeFamily:
    """Paths ending at one vertex, with a row-reduced basis of their phi-extensors."""

    def __init__(self):
        self.paths: List[Tuple[int, ...]] = []
        self.extensors: List[Extensor] = []
        self.rows: List[Tuple[int, Dict[int, Fraction]]] = []  # (pivot, sparse row)

    def reduce(self, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        vec = dict(vec)
        for pivot, row in self.rows:
            c = vec.get(pivot)
            if c:
                f = c / row[pivot]
                for idx, val in row.items():
                    nv = vec.get(idx, 0) - f * val
                    if nv:
                        vec[idx] = nv
                    else:
                        vec.pop(idx, None)
        return vec

    def offer(self, path: Tuple[int, ...], ext: Extensor) -> bool:
        """Keep the path iff its extensor is outside the current span."""
        vec = {i: Fraction(c) for i, c in enumerate(ext.coeffs) if c != 0}
        rest = self.reduce(vec)
        if not rest:
            return False
        self.rows.append((min(rest), rest))
        self.paths.append(path)
        self.extensors.append(ext)
        return True

    def __len__(self):
        return len(self.paths)


def representative_families(G: Digraph, k: int) -> Dict[Tuple[int, int], RepresentativeFamily]:
    """Families R_v^p for p = 1..k, keyed by (v, p)."""
    _check_k(G, k)
    phi = vandermonde_coding(G.n, k)
    fams: Dict[Tuple[int, int], RepresentativeFamily] = {}
    one = Extensor.scalar(k, 1)
    for v in range(G.n):
        fam = RepresentativeFamily()
        fam.offer((v,), wedge_vector(one, phi.vertex[v]))
        fams[(v, 1)] = fam
    for p in range(1, k):
        for v in range(G.n):
            fam = RepresentativeFamily()
            for u, _ in G.in_adj[v]:
                prev = fams[(u, p)]
                for path, ext in zip(prev.paths, prev.extensors):
                    fam.offer(path + (v,), wedge_vector(ext, phi.vertex[v]))
            fams[(v, p + 1)] = fam
    return fams


def detect_representative(G: Digraph, k: int) -> bool:
    if k > G.n:
        return False
    fams = representative_families(G, k)
    return any(len(fams[(v, k)]) > 0 for v in range(G.n))
