import random

import pytest
from hypothesis import strategies as st

from extensor_coding.graph import Digraph


def random_digraph(rnd: random.Random, n: int, p: float, loops: bool = False) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if (loops or u != v) and rnd.random() < p])


@st.composite
def digraphs(draw, max_n=6, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph(n, [e for e, b in zip(pairs, keep) if b])


@pytest.fixture
def rnd():
    return random.Random(12345)


ACCEPTANCE_LINES = []


def record_acceptance(ac: int, ok: bool, detail: str) -> None:
    line = f"AC{ac} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s[2:s.index(" ")])):
            terminalreporter.write_line(line)
