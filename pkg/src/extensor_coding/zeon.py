"""The Zeon algebra Z(F^t): commutative, generators square to zero.

Coordinates are indexed by generator subsets exactly like extensors, but all
signs are +1, so the product is an ordinary subset convolution.  An optional
``max_grade`` truncates everything above that grade (a quotient by an ideal,
so it is still a ring); the multilinear detector only needs grades <= k.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .extensor import Extensor, _check_dim, popcount, wedge_general
from .rings import ZZ, Ring

MAX_T = 16
NAIVE_MAX_T = 8


@lru_cache(maxsize=None)
def _disjoint_tables(t: int, max_grade: int):
    """For every J: (targets J|K, sources K) over K disjoint from J with |J|+|K| <= max_grade."""
    full = (1 << t) - 1
    out = []
    for J in range(1 << t):
        gj = popcount(J)
        if gj > max_grade:
            out.append(None)
            continue
        rest = full & ~J
        ks = []
        K = rest
        while True:
            if gj + popcount(K) <= max_grade:
                ks.append(K)
            if K == 0:
                break
            K = (K - 1) & rest
        ks = np.array(sorted(ks), dtype=np.int64)
        out.append((ks | J, ks))
    return tuple(out)


@lru_cache(maxsize=None)
def _ranks(t: int) -> np.ndarray:
    return np.array([popcount(m) for m in range(1 << t)], dtype=np.int64)


class Zeon:
    __slots__ = ("t", "coeffs", "max_grade", "_mono")

    def __init__(self, t: int, coeffs, max_grade: int | None = None, _mono=None):
        _check_dim(t, MAX_T)
        coeffs = np.asarray(coeffs, dtype=object)
        if coeffs.shape != (1 << t,):
            raise ValueError(f"expected {1 << t} coefficients, got {coeffs.shape}")
        self.t = t
        self.coeffs = coeffs
        self.max_grade = t if max_grade is None else min(max_grade, t)
        # (mask, coeff) when the value is known to be a single monomial
        self._mono = _mono

    @classmethod
    def zeros(cls, t: int, ring: Ring = ZZ, max_grade: int | None = None) -> "Zeon":
        arr = np.empty(1 << t, dtype=object)
        arr.fill(ring.zero())
        return cls(t, arr, max_grade)

    @classmethod
    def scalar(cls, t: int, c, ring: Ring = ZZ, max_grade: int | None = None) -> "Zeon":
        z = cls.zeros(t, ring, max_grade)
        z.coeffs[0] = c
        return z

    @classmethod
    def monomial(cls, t: int, mask: int, c=1, ring: Ring = ZZ, max_grade: int | None = None) -> "Zeon":
        z = cls.zeros(t, ring, max_grade)
        if popcount(mask) <= z.max_grade:
            z.coeffs[mask] = c
        return cls(t, z.coeffs, max_grade, _mono=(mask, c))

    @classmethod
    def generator(cls, t: int, j: int, c=1, ring: Ring = ZZ, max_grade: int | None = None) -> "Zeon":
        """c * ebar_j for 1-based j."""
        return cls.monomial(t, 1 << (j - 1), c, ring, max_grade)

    def _check(self, other: "Zeon") -> None:
        if self.t != other.t:
            raise ValueError(f"dimension mismatch: {self.t} vs {other.t}")

    def __add__(self, other):
        if isinstance(other, Zeon):
            self._check(other)
            return Zeon(self.t, self.coeffs + other.coeffs, min(self.max_grade, other.max_grade))
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Zeon):
            self._check(other)
            return Zeon(self.t, self.coeffs - other.coeffs, min(self.max_grade, other.max_grade))
        return NotImplemented

    def __neg__(self):
        return Zeon(self.t, -self.coeffs, self.max_grade)

    def __mul__(self, other):
        if isinstance(other, Zeon):
            self._check(other)
            if other._mono is not None:
                return _times_monomial(self, *other._mono, other.max_grade)
            if self._mono is not None:
                return _times_monomial(other, *self._mono, self.max_grade)
            if self.t <= NAIVE_MAX_T:
                return zeon_multiply_naive(self, other)
            return zeon_multiply_fast(self, other)
        return Zeon(self.t, self.coeffs * other, self.max_grade)

    def __rmul__(self, other):
        return Zeon(self.t, other * self.coeffs, self.max_grade)

    def __eq__(self, other):
        if not isinstance(other, Zeon):
            return NotImplemented
        return self.t == other.t and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def grade_coefficients(self, r: int) -> dict:
        return {m: self.coeffs[m] for m in range(1 << self.t) if popcount(m) == r}

    def __repr__(self):
        terms = [
            f"{c}*z{''.join(str(i + 1) for i in range(self.t) if m >> i & 1) or '0'}"
            for m, c in enumerate(self.coeffs)
            if c != 0
        ]
        return f"Zeon(t={self.t}, {' + '.join(terms) or '0'})"


def _times_monomial(x: Zeon, mask: int, c, max_grade: int) -> Zeon:
    mg = min(x.max_grade, max_grade)
    z = np.empty_like(x.coeffs)
    z.fill(x.coeffs[0] * 0)
    if popcount(mask) <= mg:
        src = np.nonzero((np.arange(1 << x.t) & mask) == 0)[0]
        src = src[_ranks(x.t)[src] + popcount(mask) <= mg]
        z[src | mask] = x.coeffs[src] * c
    return Zeon(x.t, z, mg)


def zeon_multiply_naive(x: Zeon, y: Zeon) -> Zeon:
    """z_I = sum over J subset I of x_J y_{I-J}; O(3^t)."""
    if x.t != y.t:
        raise ValueError(f"dimension mismatch: {x.t} vs {y.t}")
    mg = min(x.max_grade, y.max_grade)
    z = np.empty_like(x.coeffs)
    z.fill(x.coeffs[0] * 0)
    yc = y.coeffs
    for J, entry in enumerate(_disjoint_tables(x.t, mg)):
        if entry is None:
            continue
        a = x.coeffs[J]
        if a == 0:
            continue
        tgt, src = entry
        z[tgt] += a * yc[src]
    return Zeon(x.t, z, mg)


def _ranked_zeta(c: np.ndarray, t: int, top: int) -> np.ndarray:
    ranks = _ranks(t)
    zero = c[0] * 0
    f = np.empty((top + 1, 1 << t), dtype=object)
    f.fill(zero)
    for r in range(top + 1):
        sel = ranks == r
        f[r, sel] = c[sel]
    for i in range(t):
        bit = 1 << i
        hi = np.nonzero(np.arange(1 << t) & bit)[0]
        f[:, hi] = f[:, hi] + f[:, hi ^ bit]
    return f


def zeon_multiply_fast(x: Zeon, y: Zeon) -> Zeon:
    """Rank-tracked subset convolution via zeta and Moebius transforms."""
    if x.t != y.t:
        raise ValueError(f"dimension mismatch: {x.t} vs {y.t}")
    t = x.t
    mg = min(x.max_grade, y.max_grade)
    fx = _ranked_zeta(x.coeffs, t, mg)
    fy = _ranked_zeta(y.coeffs, t, mg)
    h = np.empty_like(fx)
    for r in range(mg + 1):
        acc = fx[0] * fy[r]
        for i in range(1, r + 1):
            acc = acc + fx[i] * fy[r - i]
        h[r] = acc
    for i in range(t):
        bit = 1 << i
        hi = np.nonzero(np.arange(1 << t) & bit)[0]
        h[:, hi] = h[:, hi] - h[:, hi ^ bit]
    ranks = _ranks(t)
    z = np.empty_like(x.coeffs)
    z.fill(x.coeffs[0] * 0)
    keep = np.nonzero(ranks <= mg)[0]
    z[keep] = h[ranks[keep], keep]
    return Zeon(t, z, mg)


def zeon_to_extensor(x: Zeon) -> Extensor:
    """Image in Lambda(F^{2t}) where ebar_i = e_i ^ e_{i+t}."""
    t = x.t
    zero = x.coeffs[0] * 0
    out = np.empty(1 << (2 * t), dtype=object)
    out.fill(zero)
    for mask, c in enumerate(x.coeffs):
        if c != 0:
            # e_I ^ e_{I+t} rearranges to prod_i (e_i ^ e_{i+t}) with sign (-1)^{r(r-1)/2}
            r = popcount(mask)
            sign = -1 if (r * (r - 1) // 2) % 2 else 1
            out[mask | (mask << t)] = c * sign
    return Extensor(2 * t, out)


def zeon_embedding_check(x: Zeon, y: Zeon) -> bool:
    """Does the Zeon product agree with the wedge of the lifted images?"""
    if x.t > 7:
        raise ValueError("embedding check limited to t <= 7")
    lhs = zeon_to_extensor(zeon_multiply_naive(x, y))
    rhs = wedge_general(zeon_to_extensor(x), zeon_to_extensor(y))
    return lhs == rhs


class ZeonAlgebra(Ring):
    def __init__(self, t: int, base: Ring = ZZ, max_grade: int | None = None):
        self.t = t
        self.base = base
        self.max_grade = max_grade
        self.name = f"Z({base.name}^{t})"

    def from_int(self, n: int) -> Zeon:
        return Zeon.scalar(self.t, self.base.from_int(n), self.base, self.max_grade)

    def zero(self) -> Zeon:
        return Zeon.zeros(self.t, self.base, self.max_grade)

    def generator(self, j: int, c=1) -> Zeon:
        return Zeon.generator(self.t, j, c, self.base, self.max_grade)
