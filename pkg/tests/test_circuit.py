import random

import pytest

from extensor_coding.circuit import (
    ADD,
    CONST,
    INPUT,
    MUL,
    CircuitBuilder,
    CircuitError,
    Gate,
    Circuit,
    detect_multilinear,
    detect_multilinear_report,
    eval_circuit,
    expand_circuit_oracle,
    has_multilinear_term,
    multilinear_trials,
    parse_circuit,
)

SQUARE = "g1 = input 1\ng2 = input 2\ng3 = add g1 g2\ng4 = mul g3 g3\noutput g4\n"
CANCEL = ("g1 = input 1\ng2 = input 2\ng3 = mul g1 g2\ng4 = const -1\ng5 = mul g3 g4\n"
          "g6 = add g3 g5\noutput g6\n")


def random_circuit(rnd, n_vars, n_gates, skew=False):
    gates = [Gate(INPUT, j) for j in range(n_vars)]
    if rnd.random() < 0.5:
        gates.append(Gate(CONST, rnd.choice([-2, -1, 2, 3])))
    while len(gates) < n_vars + n_gates:
        a, b = rnd.randrange(len(gates)), rnd.randrange(len(gates))
        if rnd.random() < 0.5:
            gates.append(Gate(ADD, a, b))
        else:
            if skew and gates[b].kind != INPUT:
                b = rnd.randrange(n_vars)
            gates.append(Gate(MUL, a, b))
    return Circuit(gates, len(gates) - 1, n_vars)


def test_parse_and_roundtrip():
    c = parse_circuit(SQUARE)
    assert c.n_vars == 2 and eval_circuit(c, [2, 3]) == 25
    assert eval_circuit(parse_circuit(c.to_text()), [2, 3]) == 25


@pytest.mark.parametrize("text", [
    "g1 = add g2 g3\noutput g1\n",
    "g1 = input 1\n",
    "g1 = input 1\ng1 = input 2\noutput g1\n",
    "g1 = frobnicate 1\noutput g1\n",
    "g1 = input 1\noutput g1\ng2 = input 2\n",
    "g1 = input 0\noutput g1\n",
])
def test_parse_errors(text):
    with pytest.raises(CircuitError):
        parse_circuit(text)


def test_builder_dedup_and_skew():
    b = CircuitBuilder(2)
    assert b.input(0) == b.input(0) and b.const(5) == b.const(5)
    c = b.build(b.mul(b.add(b.input(0), b.const(1)), b.input(1)))
    assert c.is_skew()
    d = parse_circuit(SQUARE)
    assert not d.is_skew()


def test_expansion_oracle_matches_evaluation():
    rnd = random.Random(5)
    for _ in range(100):
        c = random_circuit(rnd, 3, 6)
        try:
            poly = expand_circuit_oracle(c)
        except Exception:
            continue
        pt = [rnd.randint(-3, 3) for _ in range(3)]
        val = sum(coef * pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2] for e, coef in poly.items())
        assert val == eval_circuit(c, pt)


def test_multilinear_examples():
    assert detect_multilinear(parse_circuit(SQUARE), 2, seed=1)
    assert not detect_multilinear(parse_circuit(CANCEL), 2, seed=1)
    assert detect_multilinear_report(parse_circuit(SQUARE), 3) == (False, 0)
    assert has_multilinear_term({(1, 1): 2, (2, 0): 1}, 2)
    assert not has_multilinear_term({(2, 0): 1}, 2)


def test_trial_count_formula():
    assert multilinear_trials(1) == 9 and multilinear_trials(4) == 48


def test_multilinear_soundness_on_random_circuits():
    rnd = random.Random(11)
    for i in range(40):
        c = random_circuit(rnd, rnd.randint(2, 5), rnd.randint(3, 10))
        try:
            poly = expand_circuit_oracle(c)
        except Exception:
            continue
        for k in (1, 2, 3):
            if not has_multilinear_term(poly, k):
                assert not detect_multilinear(c, k, seed=i, trials=3)
