"""Arithmetic circuits: a gate list evaluable over any ring.

Gates are stored in topological order.  Variable indices are 0-based here and
1-based in the text format.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .rings import ZZ, Fp, Ring, prime_field_create
from .zeon import Zeon, ZeonAlgebra

INPUT, CONST, ADD, MUL = "input", "const", "add", "mul"

PURPOSE_PRIME = 11
PURPOSE_ALPHA = 12


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    a: int
    b: int = -1


class Circuit:
    def __init__(self, gates: Sequence[Gate], output: int, n_vars: int):
        self.gates = tuple(gates)
        self.output = output
        self.n_vars = n_vars
        self._validate()
        self._live = None

    def _validate(self) -> None:
        if not 0 <= self.output < len(self.gates):
            raise CircuitError("output gate out of range")
        for i, g in enumerate(self.gates):
            if g.kind == INPUT:
                if not 0 <= g.a < self.n_vars:
                    raise CircuitError(f"gate {i}: variable {g.a + 1} out of range")
            elif g.kind in (ADD, MUL):
                if not (0 <= g.a < i and 0 <= g.b < i):
                    raise CircuitError(f"gate {i}: operands must precede the gate")
            elif g.kind != CONST:
                raise CircuitError(f"gate {i}: unknown kind {g.kind!r}")

    def __len__(self):
        return len(self.gates)

    def live_gates(self) -> List[int]:
        """Indices of gates the output depends on, in topological order."""
        if self._live is None:
            need = [False] * len(self.gates)
            need[self.output] = True
            for i in range(self.output, -1, -1):
                if need[i] and self.gates[i].kind in (ADD, MUL):
                    need[self.gates[i].a] = True
                    need[self.gates[i].b] = True
            self._live = [i for i, x in enumerate(need) if x]
        return self._live

    def size(self) -> int:
        return len(self.live_gates())

    def is_skew(self) -> bool:
        """Every live multiplication has an input or constant operand."""
        leaf = (INPUT, CONST)
        for i in self.live_gates():
            g = self.gates[i]
            if g.kind == MUL and self.gates[g.a].kind not in leaf and self.gates[g.b].kind not in leaf:
                return False
        return True

    def to_text(self) -> str:
        lines = []
        for i, g in enumerate(self.gates, start=1):
            if g.kind == INPUT:
                lines.append(f"g{i} = input {g.a + 1}")
            elif g.kind == CONST:
                lines.append(f"g{i} = const {g.a}")
            else:
                lines.append(f"g{i} = {g.kind} g{g.a + 1} g{g.b + 1}")
        lines.append(f"output g{self.output + 1}")
        return "\n".join(lines) + "\n"


class CircuitBuilder:
    """Incremental construction with shared input and constant gates."""

    def __init__(self, n_vars: int):
        self.n_vars = n_vars
        self.gates: List[Gate] = []
        self._inputs: Dict[int, int] = {}
        self._consts: Dict[int, int] = {}

    def _push(self, g: Gate) -> int:
        self.gates.append(g)
        return len(self.gates) - 1

    def input(self, j: int) -> int:
        if j not in self._inputs:
            self._inputs[j] = self._push(Gate(INPUT, j))
        return self._inputs[j]

    def const(self, c: int) -> int:
        if c not in self._consts:
            self._consts[c] = self._push(Gate(CONST, int(c)))
        return self._consts[c]

    def add(self, a: int, b: int) -> int:
        return self._push(Gate(ADD, a, b))

    def mul(self, a: int, b: int) -> int:
        return self._push(Gate(MUL, a, b))

    def sum(self, terms: Sequence[int]) -> int:
        if not terms:
            return self.const(0)
        acc = terms[0]
        for t in terms[1:]:
            acc = self.add(acc, t)
        return acc

    def build(self, output: int) -> Circuit:
        return Circuit(self.gates, output, self.n_vars)


_LINE = re.compile(r"^g(\d+)\s*=\s*(\w+)\s+(.*)$")


def parse_circuit(text: str) -> Circuit:
    names: Dict[int, int] = {}
    gates: List[Gate] = []
    output = None
    n_vars = 0

    def ref(tok: str) -> int:
        m = re.fullmatch(r"g(\d+)", tok)
        if not m:
            raise CircuitError(f"bad gate reference {tok!r}")
        idx = int(m.group(1))
        if idx not in names:
            raise CircuitError(f"forward or unknown reference {tok}")
        return names[idx]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if output is not None:
            raise CircuitError(f"line {lineno}: content after the output line")
        if line.startswith("output"):
            parts = line.split()
            if len(parts) != 2:
                raise CircuitError(f"line {lineno}: malformed output line")
            output = ref(parts[1])
            continue
        m = _LINE.match(line)
        if not m:
            raise CircuitError(f"line {lineno}: cannot parse {line!r}")
        idx, kind, rest = int(m.group(1)), m.group(2), m.group(3).split()
        if idx in names:
            raise CircuitError(f"line {lineno}: gate g{idx} defined twice")
        if kind == INPUT and len(rest) == 1:
            j = int(rest[0])
            if j < 1:
                raise CircuitError(f"line {lineno}: variables are numbered from 1")
            n_vars = max(n_vars, j)
            g = Gate(INPUT, j - 1)
        elif kind == CONST and len(rest) == 1:
            g = Gate(CONST, int(rest[0]))
        elif kind in (ADD, MUL) and len(rest) == 2:
            g = Gate(kind, ref(rest[0]), ref(rest[1]))
        else:
            raise CircuitError(f"line {lineno}: unknown gate kind or arity {kind!r}")
        names[idx] = len(gates)
        gates.append(g)
    if output is None:
        raise CircuitError("missing output line")
    return Circuit(gates, output, n_vars)


def eval_circuit(c: Circuit, assignment, ring: Ring = ZZ):
    """Topological evaluation; one ring operation per live gate."""
    vals: Dict[int, object] = {}
    for i in c.live_gates():
        g = c.gates[i]
        if g.kind == INPUT:
            vals[i] = assignment[g.a]
        elif g.kind == CONST:
            vals[i] = ring.from_int(g.a)
        elif g.kind == ADD:
            vals[i] = vals[g.a] + vals[g.b]
        else:
            vals[i] = vals[g.a] * vals[g.b]
    return vals[c.output]


# ------------------------------------------------------------ expansion oracle


class BudgetExceeded(RuntimeError):
    pass


def expand_circuit_oracle(c: Circuit, degree_cap: int = 8, var_cap: int = 12, budget: int = 200_000):
    """Full symbolic expansion as {exponent tuple: int}, zero terms removed."""
    if c.n_vars > var_cap:
        raise BudgetExceeded(f"{c.n_vars} variables exceed the cap {var_cap}")
    n = c.n_vars
    zero_exp = (0,) * n
    vals: Dict[int, Dict[Tuple[int, ...], int]] = {}
    for i in c.live_gates():
        g = c.gates[i]
        if g.kind == INPUT:
            e = [0] * n
            e[g.a] = 1
            vals[i] = {tuple(e): 1}
        elif g.kind == CONST:
            vals[i] = {zero_exp: g.a} if g.a else {}
        elif g.kind == ADD:
            out = dict(vals[g.a])
            for e, x in vals[g.b].items():
                out[e] = out.get(e, 0) + x
            vals[i] = {e: x for e, x in out.items() if x}
        else:
            out = {}
            for ea, xa in vals[g.a].items():
                for eb, xb in vals[g.b].items():
                    e = tuple(p + q for p, q in zip(ea, eb))
                    if sum(e) > degree_cap:
                        raise BudgetExceeded(f"degree exceeds the cap {degree_cap}")
                    out[e] = out.get(e, 0) + xa * xb
            vals[i] = {e: x for e, x in out.items() if x}
        if len(vals[i]) > budget:
            raise BudgetExceeded(f"more than {budget} monomials")
    return vals[c.output]


def has_multilinear_term(poly: Dict[Tuple[int, ...], int], k: int) -> bool:
    return any(sum(e) == k and max(e, default=0) <= 1 for e in poly)


# --------------------------------------------------------- multilinear detection


def multilinear_trials(k: int) -> int:
    return math.ceil(5 * 1.752**k)


def multilinear_trial(c: Circuit, k: int, seed: int, trial: int, bit_length: int = 62) -> bool:
    """One randomized Zeon evaluation; True means a degree-k multilinear term is certified."""
    t = math.ceil(1.3 * k)
    field = prime_field_create(bit_length, rng_seed=[seed, trial, PURPOSE_PRIME])
    p = field.p
    rng = np.random.default_rng([seed, trial, PURPOSE_ALPHA])
    alphas = rng.integers(0, 100 * k + 1, size=c.n_vars)
    colors = rng.integers(1, t + 1, size=c.n_vars)
    assignment = [
        Zeon.generator(t, int(colors[i]), Fp(int(alphas[i]), p), field, max_grade=k)
        for i in range(c.n_vars)
    ]
    out = eval_circuit(c, assignment, ZeonAlgebra(t, field, max_grade=k))
    return any(x != 0 for x in out.grade_coefficients(k).values())


def detect_multilinear_report(c: Circuit, k: int, seed: int = 0, trials: Optional[int] = None):
    """(found, trials run); stops at the first certifying trial."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > c.n_vars:
        return False, 0
    r = multilinear_trials(k) if trials is None else trials
    for j in range(r):
        if multilinear_trial(c, k, seed, j):
            return True, j + 1
    return False, r


def detect_multilinear(c: Circuit, k: int, seed: int = 0, trials: Optional[int] = None) -> bool:
    """Does the polynomial computed by ``c`` have a degree-k multilinear term?

    One-sided: True is certified up to the chance a random 62-bit prime
    divides a nonzero coefficient; False can be wrong with a probability that
    decays with the number of trials (default ceil(5 * 1.752**k)).
    """
    return detect_multilinear_report(c, k, seed, trials)[0]
