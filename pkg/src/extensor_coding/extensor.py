"""Dense exterior algebra over F^k.

An extensor is stored as ``2**k`` coefficients; index ``I`` is a bitmask with
bit ``i-1`` set iff ``i`` is in the basis set, so ``coeffs[I]`` is the
coordinate of e_I.  Coefficients live in a numpy object array so any exact
ring element (int, Fraction, Fp, QuadExtQ3, SparseMultilinearPoly) can be used.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .rings import ZZ, Ring

MAX_K = 20
MAX_LIFTED_K = 14
MAX_GENERAL_K = 12


class DimensionCapError(ValueError):
    pass


def _check_dim(k: int, cap: int = MAX_K) -> None:
    if k < 0:
        raise ValueError("dimension must be non-negative")
    if k > cap:
        raise DimensionCapError(f"dimension {k} exceeds the configured cap {cap}")


def popcount(x: int) -> int:
    return bin(x).count("1")


def subset_sign(I: int, J: int) -> int:
    """Sign of e_I ^ e_J = +-e_{I u J} for disjoint bitmasks I, J."""
    if I & J:
        raise ValueError("subset_sign needs disjoint index sets")
    inversions = 0
    j = J
    while j:
        low = j & -j
        # elements of I above this element of J must hop over it
        inversions += popcount(I & ~((low << 1) - 1))
        j ^= low
    return -1 if inversions & 1 else 1


@lru_cache(maxsize=None)
def _vector_tables(k: int):
    """Per coordinate i: (src_pos, dst_pos, src_neg, dst_neg) index arrays."""
    masks = np.arange(1 << k, dtype=np.int64)
    out = []
    for i in range(k):
        bit = 1 << i
        src = masks[(masks & bit) == 0]
        above = src >> (i + 1)
        parity = np.array([popcount(int(a)) & 1 for a in above], dtype=np.int64)
        pos, neg = src[parity == 0], src[parity == 1]
        out.append((pos, pos | bit, neg, neg | bit))
    return tuple(out)


@lru_cache(maxsize=None)
def _general_tables(k: int):
    """For every J: (targets with +, sources K with +, targets with -, sources with -)."""
    full = (1 << k) - 1
    out = []
    for J in range(1 << k):
        rest = full & ~J
        ks = []
        K = rest
        while True:
            ks.append(K)
            if K == 0:
                break
            K = (K - 1) & rest
        ks = np.array(sorted(ks), dtype=np.int64)
        signs = np.array([subset_sign(J, int(K)) for K in ks], dtype=np.int64)
        pos, neg = ks[signs == 1], ks[signs == -1]
        out.append((pos | J, pos, neg | J, neg))
    return tuple(out)


def _zeros(n: int, zero) -> np.ndarray:
    arr = np.empty(n, dtype=object)
    arr.fill(zero)
    return arr


class VectorK:
    """A grade-1 extensor (a_1, ..., a_k)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence):
        self.entries = tuple(entries)

    @property
    def k(self) -> int:
        return len(self.entries)

    def to_extensor(self) -> "Extensor":
        arr = _zeros(1 << self.k, _zero_like(self.entries))
        for i, a in enumerate(self.entries):
            arr[1 << i] = a
        return Extensor(self.k, arr)

    def padded(self, dim: int, offset: int = 0) -> "VectorK":
        """Embed into F^dim at coordinates offset+1 .. offset+k."""
        out = [_zero_like(self.entries)] * dim
        for i, a in enumerate(self.entries):
            out[offset + i] = a
        return VectorK(out)

    def __mul__(self, other):
        return self.to_extensor() * other

    def __add__(self, other):
        return self.to_extensor() + other

    def __eq__(self, other):
        return isinstance(other, VectorK) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"VectorK{self.entries}"


class Blade2:
    """A decomposable grade-2 extensor u ^ w, kept as its two factors."""

    __slots__ = ("u", "w")

    def __init__(self, u: VectorK, w: VectorK):
        if u.k != w.k:
            raise ValueError("blade factors must have equal dimension")
        self.u = u
        self.w = w

    @property
    def k(self) -> int:
        return self.u.k

    def expand(self) -> "Extensor":
        one = _zero_like(self.u.entries) + 1
        return wedge_vector(wedge_vector(Extensor.scalar(self.k, one), self.u), self.w)

    def __mul__(self, other):
        # grade 2 is central, so b ^ x = x ^ b
        if isinstance(other, Extensor):
            return wedge_blade(other, self)
        return self.expand() * other

    def __add__(self, other):
        return self.expand() + other

    def __repr__(self):
        return f"Blade2({self.u!r}, {self.w!r})"


def _zero_like(entries):
    for e in entries:
        return e * 0
    return 0


class Extensor:
    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs):
        _check_dim(k)
        coeffs = np.asarray(coeffs, dtype=object)
        if coeffs.shape != (1 << k,):
            raise ValueError(f"expected {1 << k} coefficients, got {coeffs.shape}")
        self.k = k
        self.coeffs = coeffs

    # -- constructors
    @classmethod
    def zeros(cls, k: int, ring: Ring = ZZ) -> "Extensor":
        _check_dim(k)
        return cls(k, _zeros(1 << k, ring.zero()))

    @classmethod
    def scalar(cls, k: int, c, ring: Ring = ZZ) -> "Extensor":
        x = cls.zeros(k, ring)
        x.coeffs[0] = c
        return x

    @classmethod
    def basis(cls, k: int, indices: Sequence[int], c=1, ring: Ring = ZZ) -> "Extensor":
        """c * e_{i1} ^ ... ^ e_{ir} with 1-based indices in the given order."""
        x = cls.scalar(k, c, ring)
        for i in indices:
            x = wedge_vector(x, VectorK([ring.one() if j == i - 1 else ring.zero() for j in range(k)]))
        return x

    @classmethod
    def from_dict(cls, k: int, terms: dict, ring: Ring = ZZ) -> "Extensor":
        """Build from {frozenset/tuple of 1-based indices (sorted basis) or mask: coeff}."""
        x = cls.zeros(k, ring)
        for key, c in terms.items():
            mask = key if isinstance(key, int) else sum(1 << (i - 1) for i in key)
            x.coeffs[mask] = x.coeffs[mask] + c
        return x

    # -- arithmetic
    def __add__(self, other):
        other = _as_extensor(other, self)
        if other is None:
            return NotImplemented
        _same_dim(self, other)
        return Extensor(self.k, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_extensor(other, self)
        if other is None:
            return NotImplemented
        _same_dim(self, other)
        return Extensor(self.k, self.coeffs - other.coeffs)

    def __neg__(self):
        return Extensor(self.k, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Extensor):
            return wedge_general(self, other)
        if isinstance(other, VectorK):
            return wedge_vector(self, other)
        if isinstance(other, Blade2):
            return wedge_blade(self, other)
        return Extensor(self.k, self.coeffs * other)

    def __rmul__(self, other):
        # scalars are central; even-grade blades commute with everything
        if isinstance(other, Blade2):
            return wedge_blade(self, other)
        if isinstance(other, VectorK):
            return wedge_general(other.to_extensor(), self)
        return Extensor(self.k, other * self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (VectorK, Blade2)):
            other = _as_extensor(other, self)
        if not isinstance(other, Extensor):
            return NotImplemented
        return self.k == other.k and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def grade(self, r: int) -> "Extensor":
        """Projection onto the grade-r part."""
        out = self.coeffs.copy()
        zero = self.coeffs[0] * 0
        for mask in range(1 << self.k):
            if popcount(mask) != r:
                out[mask] = zero
        return Extensor(self.k, out)

    def terms(self) -> dict:
        """Nonzero coordinates as {tuple of 1-based indices: coeff}."""
        return {
            tuple(i + 1 for i in range(self.k) if mask >> i & 1): c
            for mask, c in enumerate(self.coeffs)
            if c != 0
        }

    def __repr__(self):
        t = self.terms()
        if not t:
            return f"Extensor(k={self.k}, 0)"
        body = " + ".join(f"{c}*e{''.join(map(str, idx)) if idx else '0'}" for idx, c in t.items())
        return f"Extensor(k={self.k}, {body})"


def _as_extensor(other, like: Extensor):
    if isinstance(other, Extensor):
        return other
    if isinstance(other, VectorK):
        return other.to_extensor()
    if isinstance(other, Blade2):
        return other.expand()
    if isinstance(other, int) and other == 0:
        return Extensor.zeros(like.k)
    return None


def _same_dim(x: Extensor, y: Extensor) -> None:
    if x.k != y.k:
        raise ValueError(f"dimension mismatch: {x.k} vs {y.k}")


# ------------------------------------------------------------------ products


def wedge_vector(x: Extensor, v: VectorK) -> Extensor:
    """x ^ v for a grade-1 v, using 2^(k-1) multiplications per nonzero v_i."""
    if v.k != x.k:
        raise ValueError(f"dimension mismatch: extensor {x.k}, vector {v.k}")
    z = np.empty_like(x.coeffs)
    z.fill(x.coeffs[0] * 0)
    xc = x.coeffs
    for i, (sp, dp, sn, dn) in enumerate(_vector_tables(x.k)):
        a = v.entries[i]
        if a == 0:
            continue
        z[dp] += xc[sp] * a
        z[dn] -= xc[sn] * a
    return Extensor(x.k, z)


def wedge_general(x: Extensor, y: Extensor) -> Extensor:
    """Alternating subset convolution, O(3^k)."""
    _same_dim(x, y)
    _check_dim(x.k, MAX_GENERAL_K)
    z = np.empty_like(x.coeffs)
    z.fill(x.coeffs[0] * 0)
    yc = y.coeffs
    for J, (tp, sp, tn, sn) in enumerate(_general_tables(x.k)):
        a = x.coeffs[J]
        if a == 0:
            continue
        z[tp] += a * yc[sp]
        z[tn] -= a * yc[sn]
    return Extensor(x.k, z)


def wedge_blade(x: Extensor, b: Blade2) -> Extensor:
    if b.k != x.k:
        raise ValueError(f"dimension mismatch: extensor {x.k}, blade {b.k}")
    return wedge_vector(wedge_vector(x, b.u), b.w)


def lift(v: VectorK) -> Blade2:
    """(v, 0) ^ (0, v) in the doubled space."""
    k = v.k
    if k > MAX_LIFTED_K:
        raise DimensionCapError(f"lifted dimension {k} exceeds the configured cap {MAX_LIFTED_K}")
    return Blade2(v.padded(2 * k, 0), v.padded(2 * k, k))


def wedge_vectors_det(vs: Sequence[VectorK], ring: Ring = ZZ):
    """Coefficient d in v_1 ^ ... ^ v_k = d e_[k]."""
    if not vs:
        return ring.one()
    k = vs[0].k
    if len(vs) != k:
        raise ValueError(f"need exactly {k} vectors, got {len(vs)}")
    x = Extensor.scalar(k, ring.one(), ring)
    for v in vs:
        x = wedge_vector(x, v)
    return top_coefficient(x)


def top_coefficient(x: Extensor):
    return x.coeffs[(1 << x.k) - 1]


def lift_sign(k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    return -1 if (k * (k - 1) // 2) % 2 else 1


class ExteriorAlgebra(Ring):
    """Ring descriptor for Lambda(R^k) over a coefficient ring R."""

    def __init__(self, k: int, base: Ring = ZZ):
        _check_dim(k)
        self.k = k
        self.base = base
        self.name = f"Lambda({base.name}^{k})"

    def from_int(self, n: int) -> Extensor:
        return Extensor.scalar(self.k, self.base.from_int(n), self.base)

    def zero(self) -> Extensor:
        return Extensor.zeros(self.k, self.base)
