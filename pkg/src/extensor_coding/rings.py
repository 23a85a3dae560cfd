"""Exact coefficient rings.

Every algebra in the package is generic over a ring descriptor (``ZZ``, ``QQ``,
``PrimeField(p)``, ``QuadExtQ3Ring``, ``PolyRing(m)``).  Elements are plain
Python objects supporting ``+``, ``-``, ``*`` and ``==``; the descriptor only
knows how to build zero, one and integer constants.  Integers and
``fractions.Fraction`` are used directly for ZZ and QQ.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np


class Ring:
    name = "ring"

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class IntegerRing(Ring):
    name = "ZZ"

    def from_int(self, n: int) -> int:
        return int(n)


class RationalField(Ring):
    name = "QQ"

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)


ZZ = IntegerRing()
QQ = RationalField()


# ---------------------------------------------------------------- prime fields


class Fp:
    """Element of the prime field Z/pZ."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("prime field mismatch")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, e: int):
        return Fp(pow(self.v, e, self.p), self.p)

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Fp(o, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"


class PrimeField(Ring):
    def __init__(self, p: int):
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        self.p = p
        self.name = f"GF({p})"

    def from_int(self, n: int) -> Fp:
        return Fp(n, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


def is_probable_prime(n: int, rounds: int = 64, rng: random.Random | None = None) -> bool:
    """Miller-Rabin with random bases."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    rng = rng or random.Random(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_field_create(bit_length: int = 62, rng_seed=0, max_tries: int = 100_000) -> PrimeField:
    """Return GF(p) for a random prime p with exactly ``bit_length`` bits.

    ``rng_seed`` may be anything accepted by ``numpy.random.default_rng``
    (an int or a sequence of ints), so callers can derive per-trial moduli
    from ``(seed, trial)``.
    """
    if bit_length < 2:
        raise ValueError("bit_length must be >= 2")
    gen = np.random.default_rng(rng_seed)
    lo, hi = 1 << (bit_length - 1), 1 << bit_length
    mr_rng = random.Random(int(gen.integers(0, 2**63 - 1)))
    for _ in range(max_tries):
        cand = lo + int.from_bytes(gen.bytes(8 + bit_length // 8), "little") % (hi - lo)
        if bit_length > 2:
            cand |= 1
        if is_probable_prime(cand, rng=mr_rng):
            return PrimeField(cand)
    raise RuntimeError(f"no {bit_length}-bit prime found in {max_tries} draws; check the RNG")


# ------------------------------------------------------------- Q(sqrt 3)


class QuadExtQ3:
    """a + b*sqrt(3) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _lift(other):
        if isinstance(other, QuadExtQ3):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExtQ3(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExtQ3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExtQ3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return quadext_multiply(self, o)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExtQ3(-self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 3 * self.b * self.b

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"({self.a}+{self.b}*sqrt3)"


def quadext_multiply(x: QuadExtQ3, y: QuadExtQ3) -> QuadExtQ3:
    # (a + b r)(c + d r) = ac + 3bd + (ad + bc) r,  r = sqrt(3)
    return QuadExtQ3(x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a)


class QuadExtQ3Ring(Ring):
    name = "Q(sqrt3)"

    def from_int(self, n: int) -> QuadExtQ3:
        return QuadExtQ3(n, 0)


QQ_SQRT3 = QuadExtQ3Ring()


# ---------------------------------------------------- sparse multilinear polys


class SparseMultilinearPoly:
    """Integer polynomial in y_1..y_m whose monomials are squarefree.

    Monomials are bitmasks over the variable universe; zero coefficients are
    never stored.  Products of monomials that share a variable raise
    ``ValueError`` unless ``multilinear=True`` is passed to
    :func:`sparse_poly_multiply`, in which case they are dropped.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[int, int] | Iterable[Tuple[int, int]] = ()):
        self.m = m
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[int, int] = {}
        for mono, c in items:
            if mono >> m:
                raise ValueError("monomial outside the variable universe")
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {mono: c for mono, c in clean.items() if c}

    @classmethod
    def constant(cls, m: int, c: int) -> "SparseMultilinearPoly":
        return cls(m, {0: c})

    @classmethod
    def variable(cls, m: int, j: int, c: int = 1) -> "SparseMultilinearPoly":
        """c * y_j with 0-based variable index j."""
        return cls(m, {1 << j: c})

    def _lift(self, other):
        if isinstance(other, SparseMultilinearPoly):
            if other.m != self.m:
                raise ValueError("variable universe mismatch")
            return other
        if isinstance(other, int):
            return SparseMultilinearPoly(self.m, {0: other})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in o.terms.items():
            out[mono] = out.get(mono, 0) + c
        return SparseMultilinearPoly(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return SparseMultilinearPoly(self.m, {mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return SparseMultilinearPoly(self.m, {mono: c * other for mono, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return sparse_poly_multiply(self, o)

    __rmul__ = __mul__

    def evaluate(self, point) -> int:
        total = 0
        for mono, c in self.terms.items():
            term = c
            j = 0
            while mono:
                if mono & 1:
                    term *= point[j]
                mono >>= 1
                j += 1
            total += term
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._lift(other) if isinstance(other, (int, SparseMultilinearPoly)) else None
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            names = [f"y{j + 1}" for j in range(self.m) if mono >> j & 1]
            parts.append(f"{self.terms[mono]}" + ("*" + "*".join(names) if names else ""))
        return " + ".join(parts)


def sparse_poly_multiply(
    x: SparseMultilinearPoly, y: SparseMultilinearPoly, multilinear: bool = False
) -> SparseMultilinearPoly:
    if x.m != y.m:
        raise ValueError("variable universe mismatch")
    out: Dict[int, int] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            if mx & my:
                if multilinear:
                    continue
                raise ValueError("product of monomials sharing a variable is not multilinear")
            mono = mx | my
            out[mono] = out.get(mono, 0) + cx * cy
    return SparseMultilinearPoly(x.m, out)


class PolyRing(Ring):
    """Z[y_1, ..., y_m] restricted to multilinear polynomials."""

    def __init__(self, m: int):
        self.m = m
        self.name = f"ZZ[y1..y{m}]"

    def from_int(self, n: int) -> SparseMultilinearPoly:
        return SparseMultilinearPoly.constant(self.m, n)

    def variable(self, j: int) -> SparseMultilinearPoly:
        return SparseMultilinearPoly.variable(self.m, j)
