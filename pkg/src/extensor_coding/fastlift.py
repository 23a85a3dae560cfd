"""Compiled int64 evaluation of lifted skew circuits and small walk-sums.

A product of p lifted vectors (v,0)^(0,v) lives on coordinates I | J<<k with
|I| = |J| = p, so a lifted value needs binom(2k, k) coordinates instead of
4^k, and a gate of degree p touches only binom(k, p)^2 of them.  The kernel
keeps one slot per gate, grouped by grade, and multiplies by a lifted input
through precomputed (src, dst, i, j, sign) tables whose signs come from
``subset_sign``.

Overflow is ruled out before running: the same kernel is evaluated once in
float64 on absolute values with all signs +1, which bounds every coefficient
of every gate.  If that bound reaches 2^62 the caller falls back to exact
Python arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numba
import numpy as np

from .circuit import ADD, CONST, INPUT, Circuit
from .codings import PURPOSE_PM1, PURPOSE_SQRT3
from .extensor import popcount, subset_sign

SAFE_BOUND = float(2**62)

OP_INPUT, OP_CONST, OP_ADD, OP_MULV, OP_MULC, OP_ZERO, OP_DEAD = 0, 1, 2, 3, 4, 5, 6
MODE_EXPLICIT, MODE_PM1, MODE_SQRT3 = 0, 1, 2


class NotSkewError(ValueError):
    pass


@lru_cache(maxsize=None)
def lifted_layout(k: int):
    """Grade offsets, per-mask ranks and the grade p -> p+1 pair tables."""
    subsets = [[sum(1 << i for i in c) for c in combinations(range(k), p)] for p in range(k + 1)]
    rank = {}
    for p in range(k + 1):
        for r, mask in enumerate(subsets[p]):
            rank[mask] = r
    off = np.zeros(k + 2, dtype=np.int64)
    for p in range(k + 1):
        off[p + 1] = off[p] + comb(k, p) ** 2
    src, dst, ii, jj, sg = [], [], [], [], []
    pair_off = np.zeros(k + 1, dtype=np.int64)
    for p in range(k):
        width = comb(k, p + 1)
        for I in subsets[p]:
            for J in subsets[p]:
                spos = off[p] + rank[I] * comb(k, p) + rank[J]
                M = I | (J << k)
                for i in range(k):
                    if I >> i & 1:
                        continue
                    for j in range(k):
                        if J >> j & 1:
                            continue
                        s1 = subset_sign(M, 1 << i)
                        s2 = subset_sign(M | (1 << i), 1 << (j + k))
                        I2, J2 = I | (1 << i), J | (1 << j)
                        src.append(spos)
                        dst.append(off[p + 1] + rank[I2] * width + rank[J2])
                        ii.append(i)
                        jj.append(j)
                        sg.append(s1 * s2)
        pair_off[p + 1] = len(src)
    as64 = lambda xs: np.array(xs, dtype=np.int64)
    return off, pair_off, as64(src), as64(dst), as64(ii), as64(jj), as64(sg)


def lifted_position(k: int, I: int, J: int) -> int:
    """Slot of coordinate e_{I | J<<k} in the lifted layout."""
    p = bin(I).count("1")
    if bin(J).count("1") != p:
        raise ValueError("I and J must have equal size")
    subsets = [sum(1 << i for i in c) for c in combinations(range(k), p)]
    off = lifted_layout(k)[0]
    return int(off[p] + subsets.index(I) * comb(k, p) + subsets.index(J))


@numba.njit(cache=True, inline="always")
def _mix(x):
    x = x + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


@numba.njit(cache=True)
def _fill_values(vals, mode, seed, trial, explicit, t_index):
    nvars, k = vals.shape
    if mode == MODE_EXPLICIT:
        for v in range(nvars):
            for i in range(k):
                vals[v, i] = explicit[t_index, v, i]
        return
    h0 = _mix(np.uint64(seed))
    if mode == MODE_PM1:
        h1 = _mix(_mix(h0 ^ np.uint64(PURPOSE_PM1)) ^ np.uint64(trial))
        for v in range(nvars):
            h = _mix(h1 ^ np.uint64(v))
            for i in range(k):
                vals[v, i] = 1 - 2 * np.int64((h >> np.uint64(i)) & np.uint64(1))
    else:
        h1 = _mix(_mix(h0 ^ np.uint64(PURPOSE_SQRT3)) ^ np.uint64(trial))
        for v in range(nvars):
            h2 = _mix(h1 ^ np.uint64(v))
            for i in range(k):
                r = _mix(h2 ^ np.uint64(i)) % np.uint64(6)
                if r == np.uint64(0):
                    vals[v, i] = -1
                elif r == np.uint64(1):
                    vals[v, i] = 1
                else:
                    vals[v, i] = 0


@numba.njit(cache=True, error_model="numpy", boundscheck=False)
def _run_lifted(op, arg1, arg2, cval, lo, hi, base, sum_args, out_gate, off, pair_off, psrc, pdst, pij,
                psign, k, mode, seed, trial0, ntrials, scale, explicit, buf, vals, lifted, results):
    ngates = op.shape[0]
    nvars = vals.shape[0]
    top = off[k]
    for t in range(ntrials):
        _fill_values(vals, mode, seed, trial0 + t, explicit, t)
        for v in range(nvars):
            for i in range(k):
                for j in range(k):
                    lifted[v, i * k + j] = scale * vals[v, i] * vals[v, j]
        for g in range(ngates):
            kind = op[g]
            if kind == OP_ZERO or kind == OP_DEAD:
                continue
            b = base[g]
            if kind == OP_INPUT:
                v = arg1[g]
                for q in range(k * k):
                    buf[b + off[1] + q] = lifted[v, q]
            elif kind == OP_CONST:
                buf[b] = cval[g]
            elif kind == OP_ADD:
                for pos in range(off[lo[g]], off[hi[g] + 1]):
                    buf[b + pos] = 0
                for r in range(arg1[g], arg2[g]):
                    a = sum_args[r]
                    ba = base[a]
                    for pos in range(off[lo[a]], off[hi[a] + 1]):
                        buf[b + pos] += buf[ba + pos]
            elif kind == OP_MULV:
                for pos in range(off[lo[g]], off[hi[g] + 1]):
                    buf[b + pos] = 0
                a = arg1[g]
                v = arg2[g]
                ba = base[a]
                ptop = hi[a]
                if ptop > k - 1:
                    ptop = k - 1
                for p in range(lo[a], ptop + 1):
                    for q in range(pair_off[p], pair_off[p + 1]):
                        buf[b + pdst[q]] += psign[q] * buf[ba + psrc[q]] * lifted[v, pij[q]]
            else:  # OP_MULC
                a = arg1[g]
                ba = base[a]
                c = cval[g]
                for pos in range(off[lo[g]], off[hi[g] + 1]):
                    buf[b + pos] = buf[ba + pos] * c
        if op[out_gate] != OP_ZERO and hi[out_gate] == k:
            results[t] = buf[base[out_gate] + top]
        else:
            results[t] = 0


LANES = 8
EXACT_FLOAT_BOUND = float(2**53)


@numba.njit(cache=True, error_model="numpy", boundscheck=False)
def _run_lifted_lanes(op, arg1, arg2, cval, lo, hi, base, sum_args, out_gate, off, pair_off, psrc, pdst,
                      pij, psign, k, mode, seed, trial0, ntrials, scale, buf, vals, lifted, results):
    """Float64 variant running LANES trials side by side (exact below 2^53)."""
    ngates = op.shape[0]
    nvars = vals.shape[0]
    top = off[k]
    dummy = np.zeros((1, 1, 1), np.int64)
    one_vals = np.zeros((nvars, k), np.int64)
    for t0 in range(0, ntrials, LANES):
        for lane in range(LANES):
            _fill_values(one_vals, mode, seed, trial0 + t0 + lane, dummy, 0)
            for v in range(nvars):
                for i in range(k):
                    vals[v, i, lane] = one_vals[v, i]
        for v in range(nvars):
            for i in range(k):
                for j in range(k):
                    for lane in range(LANES):
                        lifted[v, i * k + j, lane] = scale * vals[v, i, lane] * vals[v, j, lane]
        for g in range(ngates):
            kind = op[g]
            if kind == OP_ZERO or kind == OP_DEAD:
                continue
            b = base[g]
            if kind == OP_INPUT:
                v = arg1[g]
                for q in range(k * k):
                    for lane in range(LANES):
                        buf[b + off[1] + q, lane] = lifted[v, q, lane]
            elif kind == OP_CONST:
                for lane in range(LANES):
                    buf[b, lane] = cval[g]
            elif kind == OP_ADD:
                first = sum_args[arg1[g]]
                bf = base[first]
                for pos in range(off[lo[g]], off[hi[g] + 1]):
                    inside = pos >= off[lo[first]] and pos < off[hi[first] + 1]
                    for lane in range(LANES):
                        buf[b + pos, lane] = buf[bf + pos, lane] if inside else 0.0
                for r in range(arg1[g] + 1, arg2[g]):
                    a = sum_args[r]
                    ba = base[a]
                    for pos in range(off[lo[a]], off[hi[a] + 1]):
                        for lane in range(LANES):
                            buf[b + pos, lane] += buf[ba + pos, lane]
            elif kind == OP_MULV:
                for pos in range(off[lo[g]], off[hi[g] + 1]):
                    for lane in range(LANES):
                        buf[b + pos, lane] = 0.0
                a = arg1[g]
                v = arg2[g]
                ba = base[a]
                ptop = hi[a]
                if ptop > k - 1:
                    ptop = k - 1
                for p in range(lo[a], ptop + 1):
                    for q in range(pair_off[p], pair_off[p + 1]):
                        s = psign[q]
                        src = ba + psrc[q]
                        dst = b + pdst[q]
                        w = pij[q]
                        for lane in range(LANES):
                            buf[dst, lane] += s * buf[src, lane] * lifted[v, w, lane]
            else:  # OP_MULC
                a = arg1[g]
                ba = base[a]
                c = cval[g]
                for pos in range(off[lo[g]], off[hi[g] + 1]):
                    for lane in range(LANES):
                        buf[b + pos, lane] = buf[ba + pos, lane] * c
        for lane in range(LANES):
            t = t0 + lane
            if t < ntrials:
                if op[out_gate] != OP_ZERO and hi[out_gate] == k:
                    results[t] = np.int64(buf[base[out_gate] + top, lane])
                else:
                    results[t] = 0


class LiftedPlan:
    """A skew circuit compiled for lifted evaluation over Lambda(Z^{2k}).

    Variable values are k-vectors; each enters the product as
    ``scale * lift(v)``.  The output is the coefficient of e_[2k].  Chains of
    additions whose intermediate results have no other use are fused into one
    n-ary sum.
    """

    def __init__(self, circuit: Circuit, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.n_vars = circuit.n_vars
        live = circuit.live_gates()
        index = {g: i for i, g in enumerate(live)}
        n = len(live)
        op = np.zeros(n, np.int64)
        a1 = np.zeros(n, np.int64)
        a2 = np.zeros(n, np.int64)
        cv = np.zeros(n, np.int64)
        lo = np.ones(n, np.int64)
        hi = np.zeros(n, np.int64)
        uses = np.zeros(n, np.int64)
        uses[index[circuit.output]] += 1

        def empty(i):
            return op[i] == OP_ZERO

        def set_zero(i):
            op[i], lo[i], hi[i] = OP_ZERO, 1, 0

        for i, g in enumerate(live):
            gate = circuit.gates[g]
            if gate.kind == INPUT:
                op[i], a1[i], lo[i], hi[i] = OP_INPUT, gate.a, 1, 1
            elif gate.kind == CONST:
                if abs(gate.a) >= 2**62:
                    raise OverflowError("constant does not fit the int64 kernel")
                op[i], cv[i], lo[i], hi[i] = OP_CONST, gate.a, 0, 0
                if gate.a == 0:
                    set_zero(i)
            elif gate.kind == ADD:
                x, y = index[gate.a], index[gate.b]
                uses[x] += 1
                uses[y] += 1
                parts = [z for z in (x, y) if not empty(z)]
                if not parts:
                    set_zero(i)
                else:
                    op[i], a1[i], a2[i] = OP_ADD, x, y
                    lo[i] = min(lo[z] for z in parts)
                    hi[i] = max(hi[z] for z in parts)
            else:
                ga, gb = circuit.gates[gate.a], circuit.gates[gate.b]
                if gb.kind == INPUT:
                    x, var = index[gate.a], gb.a
                elif ga.kind == INPUT:
                    x, var = index[gate.b], ga.a
                else:
                    var = None
                    if gb.kind == CONST:
                        x, c = index[gate.a], gb.a
                    elif ga.kind == CONST:
                        x, c = index[gate.b], ga.a
                    else:
                        raise NotSkewError(f"gate {g} multiplies two non-input gates")
                uses[x] += 1
                if var is not None:
                    if empty(x) or lo[x] + 1 > k:
                        set_zero(i)
                    else:
                        op[i], a1[i], a2[i] = OP_MULV, x, var
                        lo[i], hi[i] = lo[x] + 1, min(hi[x] + 1, k)
                else:
                    if empty(x) or c == 0:
                        set_zero(i)
                    else:
                        op[i], a1[i], cv[i] = OP_MULC, x, c
                        lo[i], hi[i] = lo[x], hi[x]

        # fuse addition trees: an ADD operand used only here is absorbed
        leaves = {}
        for i in range(n):
            if op[i] != OP_ADD:
                continue
            acc = []
            for z in (a1[i], a2[i]):
                if empty(z):
                    continue
                if op[z] == OP_ADD and uses[z] == 1:
                    acc.extend(leaves.pop(z))
                    op[z] = OP_DEAD
                else:
                    acc.append(z)
            leaves[i] = acc
        sum_args = []
        for i, acc in leaves.items():
            a1[i], a2[i] = len(sum_args), len(sum_args) + len(acc)
            sum_args.extend(acc)

        layout = lifted_layout(k)
        off = layout[0]
        base = np.zeros(n, np.int64)
        cursor = 0
        for i in range(n):
            if op[i] in (OP_ZERO, OP_DEAD):
                continue
            base[i] = cursor - off[lo[i]]
            cursor += off[hi[i] + 1] - off[lo[i]]
        self.arrays = (op, a1, a2, cv, lo, hi, base, np.array(sum_args + [0], np.int64))
        self.bufsize = max(cursor, 1)
        self.out_gate = index[circuit.output]
        off, pair_off, psrc, pdst, pi, pj, psign = layout
        self.layout = (off, pair_off, psrc, pdst, pi * k + pj, psign)
        self._bound_cache = {}

    def size(self) -> int:
        """Number of gates the kernel actually computes."""
        return int(np.sum(~np.isin(self.arrays[0], (OP_ZERO, OP_DEAD))))

    def _call(self, mode, seed, trial0, ntrials, scale, explicit, dtype, abs_mode=False):
        op, a1, a2, cv, lo, hi, base, sum_args = self.arrays
        off, pair_off, psrc, pdst, pij, psign = self.layout
        if abs_mode:
            psign = np.ones_like(psign)
            cv = np.abs(cv)
        buf = np.zeros(self.bufsize, dtype)
        nv = max(self.n_vars, 1)
        vals = np.zeros((nv, self.k), dtype)
        lifted = np.zeros((nv, self.k * self.k), dtype)
        results = np.zeros(ntrials, dtype)
        _run_lifted(op, a1, a2, cv.astype(dtype), lo, hi, base, sum_args, self.out_gate, off, pair_off,
                    psrc, pdst, pij, psign.astype(dtype), self.k, mode, np.uint64(seed & (2**64 - 1)),
                    trial0, ntrials, dtype(scale), explicit.astype(dtype), buf, vals, lifted, results)
        return results, buf

    def coefficient_bound(self, explicit=None, scale: int = 1) -> float:
        """Upper bound on |coefficient| over every gate for the given inputs
        (``explicit``: array [nvars, k]) or for any inputs with entries in [-1, 1]."""
        if explicit is None:
            key = ("unit", scale)
            if key not in self._bound_cache:
                ones = np.ones((1, max(self.n_vars, 1), self.k))
                _, buf = self._call(MODE_EXPLICIT, 0, 0, 1, scale, ones, np.float64, abs_mode=True)
                self._bound_cache[key] = float(np.max(buf, initial=0.0))
            return self._bound_cache[key]
        ex = np.abs(np.asarray(explicit, dtype=np.float64))[None, :, :]
        _, buf = self._call(MODE_EXPLICIT, 0, 0, 1, scale, ex, np.float64, abs_mode=True)
        return float(np.max(buf, initial=0.0))

    def run_random(self, dist: str, seed: int, trial0: int, ntrials: int):
        """Top coefficients for trials trial0.., or None if int64 could overflow."""
        mode, scale = (MODE_PM1, 1) if dist == "pm1" else (MODE_SQRT3, 3)
        bound = self.coefficient_bound(None, scale)
        if bound >= SAFE_BOUND:
            return None
        if bound < EXACT_FLOAT_BOUND:
            return self._call_lanes(mode, seed, trial0, ntrials, scale)
        dummy = np.zeros((1, 1, 1), np.int64)
        res, _ = self._call(mode, seed, trial0, ntrials, scale, dummy, np.int64)
        return res

    def _call_lanes(self, mode, seed, trial0, ntrials, scale):
        op, a1, a2, cv, lo, hi, base, sum_args = self.arrays
        off, pair_off, psrc, pdst, pij, psign = self.layout
        nv = max(self.n_vars, 1)
        buf = np.zeros((self.bufsize, LANES))
        vals = np.zeros((nv, self.k, LANES))
        lifted = np.zeros((nv, self.k * self.k, LANES))
        results = np.zeros(ntrials, np.int64)
        _run_lifted_lanes(op, a1, a2, cv.astype(np.float64), lo, hi, base, sum_args, self.out_gate, off,
                          pair_off, psrc, pdst, pij, psign.astype(np.float64), self.k, mode,
                          np.uint64(seed & (2**64 - 1)), trial0, ntrials, float(scale), buf, vals, lifted,
                          results)
        return results

    def run_explicit(self, vectors):
        """Top coefficient for explicit integer vectors [nvars][k], or None on overflow risk."""
        arr = np.array([[int(x) for x in row] for row in vectors], dtype=object)
        if arr.size and np.max(np.abs(arr)) >= 2**62:
            return None
        if self.coefficient_bound(arr.astype(np.float64)) >= SAFE_BOUND:
            return None
        res, _ = self._call(MODE_EXPLICIT, 0, 0, 1, 1, arr.astype(np.int64)[None, :, :], np.int64)
        return int(res[0])


# ----------------------------------------------------------- batched walk-sums


@lru_cache(maxsize=None)
def _vector_table_arrays(k: int):
    """Wedge-by-e_i tables grouped by source grade.

    Returns (gslots, goff, rstart, src, dst, sign): the masks of grade p are
    gslots[goff[p]:goff[p+1]]; rows with a grade-p source and coordinate i
    are rstart[p, i] .. rstart[p, i+1]-1 (rstart[p, k] closes grade p).
    """
    masks = list(range(1 << k))
    by_grade = [[m for m in masks if popcount(m) == p] for p in range(k + 1)]
    gslots = [m for g in by_grade for m in g]
    goff = np.cumsum([0] + [len(g) for g in by_grade])
    src, dst, sign = [], [], []
    rstart = np.zeros((k + 1, k + 1), dtype=np.int64)
    for p in range(k + 1):
        for i in range(k):
            rstart[p, i] = len(src)
            if p == k:
                continue
            for m in by_grade[p]:
                if m >> i & 1:
                    continue
                src.append(m)
                dst.append(m | (1 << i))
                sign.append(-1 if popcount(m >> (i + 1)) & 1 else 1)
        rstart[p, k] = len(src)
    as64 = lambda xs: np.array(xs, dtype=np.int64)
    return as64(gslots), goff.astype(np.int64), rstart, as64(src), as64(dst), as64(sign)


@numba.njit(cache=True, inline="always")
def _walk_one(get_w, gi, graph, n, k, vec, gslots, goff, rstart, tsrc, tdst, tsign, cur, nxt, acc,
              track_max, out):
    full = (1 << k) - 1
    for w in range(n):
        for i in range(k):
            cur[w, 1 << i] = vec[w, i]
    best = 0
    for p in range(1, k):
        lo, hi = goff[p], goff[p + 1]
        for w in range(n):
            for q in range(lo, hi):
                acc[gslots[q]] = 0
            for u in range(n):
                c = get_w(graph, gi, u, w, n)
                if c != 0:
                    for q in range(lo, hi):
                        s = gslots[q]
                        acc[s] += cur[u, s] * c
            for q in range(goff[p + 1], goff[p + 2]):
                nxt[w, gslots[q]] = 0
            if track_max:
                for q in range(lo, hi):
                    if acc[gslots[q]] > best:
                        best = acc[gslots[q]]
            for i in range(k):
                a = vec[w, i]
                if a == 0:
                    continue
                for r in range(rstart[p, i], rstart[p, i + 1]):
                    nxt[w, tdst[r]] += tsign[r] * acc[tsrc[r]] * a
        for w in range(n):
            for q in range(goff[p + 1], goff[p + 2]):
                s = gslots[q]
                cur[w, s] = nxt[w, s]
                if track_max and cur[w, s] > best:
                    best = cur[w, s]
    total = 0
    for w in range(n):
        total += cur[w, full]
    if track_max:
        out[gi] = max(best, total)
    else:
        out[gi] = total


@numba.njit(cache=True, inline="always")
def _weight_of(weights, gi, u, w, n):
    return weights[gi, u, w]


@numba.njit(cache=True, inline="always")
def _bit_of(bits, gi, u, w, n):
    return (bits[gi] >> (u * n + w)) & 1


@numba.njit(cache=True)
def _walk_top_batch(weights, k, vec, gslots, goff, rstart, tsrc, tdst, tsign, out, track_max):
    n = vec.shape[0]
    size = 1 << k
    cur = np.zeros((n, size), vec.dtype)
    nxt = np.zeros((n, size), vec.dtype)
    acc = np.zeros(size, vec.dtype)
    for gi in range(weights.shape[0]):
        _walk_one(_weight_of, gi, weights, n, k, vec, gslots, goff, rstart, tsrc, tdst, tsign, cur, nxt,
                  acc, track_max, out)


@numba.njit(cache=True)
def _walk_top_bits_batch(bits, n, k, vec, gslots, goff, rstart, tsrc, tdst, tsign, out):
    size = 1 << k
    cur = np.zeros((n, size), vec.dtype)
    nxt = np.zeros((n, size), vec.dtype)
    acc = np.zeros(size, vec.dtype)
    for gi in range(bits.shape[0]):
        _walk_one(_bit_of, gi, bits, n, k, vec, gslots, goff, rstart, tsrc, tdst, tsign, cur, nxt,
                  acc, False, out)


def walk_top_weighted(weights, k: int, vectors):
    """Top coefficient of f(G; xi) over Lambda(Z^k) for a batch of weighted graphs.

    ``weights[g, u, v]`` is the integer code of edge u->v in graph g (0 when
    absent) and vertex v is coded by the integer k-vector ``vectors[v]``.
    Raises OverflowError when int64 could overflow: an all-positive run with
    every weight at its batch maximum bounds every intermediate coefficient.
    """
    weights = np.asarray(weights, dtype=np.int64)
    vec = np.asarray(vectors, dtype=np.int64)
    n = vec.shape[0]
    if weights.ndim != 3 or weights.shape[1:] != (n, n):
        raise ValueError("weights must have shape [graphs, n, n]")
    tables = _vector_table_arrays(k)
    wmax = np.abs(weights).max(axis=0, initial=0).astype(np.float64)
    dense = np.full((1, n, n), max(float(wmax.max(initial=0.0)), 1.0))
    if _walk_bound(dense, k, vec, tables) >= SAFE_BOUND:
        raise OverflowError("walk-sum batch could overflow int64")
    out = np.zeros(weights.shape[0], np.int64)
    _walk_top_batch(weights, k, vec, *tables, out, False)
    return out


def _walk_bound(dense, k, vec, tables) -> float:
    gslots, goff, rstart, tsrc, tdst, tsign = tables
    bound = np.zeros(1, np.float64)
    _walk_top_batch(dense, k, np.abs(vec).astype(np.float64), gslots, goff, rstart, tsrc, tdst,
                    np.ones_like(tsign), bound, True)
    return float(bound[0])


def walk_top_bits(graph_bits, n: int, k: int, vectors):
    """As ``walk_top_weighted`` for 0/1 graphs given as bitmasks (bit u*n+v for u->v)."""
    bits = np.asarray(graph_bits, dtype=np.int64)
    vec = np.asarray(vectors, dtype=np.int64)
    if n * n > 63 or vec.shape[0] != n:
        raise ValueError("bitmask graphs need n*n <= 63 and one vector per vertex")
    tables = _vector_table_arrays(k)
    if _walk_bound(np.ones((1, n, n)), k, vec, tables) >= SAFE_BOUND:
        raise OverflowError("walk-sum batch could overflow int64")
    out = np.zeros(len(bits), np.int64)
    _walk_top_bits_batch(bits, n, k, vec, *tables, out)
    return out
