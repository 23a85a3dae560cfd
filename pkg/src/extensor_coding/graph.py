"""Directed graphs, codings and the walk-sum f(G; xi).

Vertices are 0-based internally (v_1 is vertex 0); edge ids follow file order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .extensor import Blade2, Extensor, ExteriorAlgebra, VectorK
from .rings import ZZ, Ring


class GraphFormatError(ValueError):
    pass


class Digraph:
    """Directed graph with stable edge ids 0..m-1."""

    def __init__(self, n: int, edges: Sequence[Tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self.edges: Tuple[Tuple[int, int], ...] = tuple((int(u), int(v)) for u, v in edges)
        self.out_adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        self.in_adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        seen = set()
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u + 1} {v + 1} has an endpoint outside 1..{n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {u + 1} {v + 1}")
            seen.add((u, v))
            self.out_adj[u].append((v, eid))
            self.in_adj[v].append((u, eid))
        self._edge_set = frozenset(seen)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    @classmethod
    def from_undirected(cls, n: int, edges: Sequence[Tuple[int, int]]) -> "Digraph":
        out = []
        for u, v in edges:
            out.append((u, v))
            if u != v:
                out.append((v, u))
        return cls(n, out)

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        return cls(n, [(u, v) for u in range(n) for v in range(n) if u != v])

    @classmethod
    def path(cls, n: int) -> "Digraph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"

    def to_text(self) -> str:
        lines = [f"p directed {self.n} {self.m}"]
        lines += [f"{u + 1} {v + 1}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Digraph:
    """Parse "p directed|undirected n m" followed by m 1-indexed edge lines."""
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows or rows[0][0] != "p":
        raise GraphFormatError("missing header line 'p <directed|undirected> <n> <m>'")
    head = rows[0]
    if len(head) != 4 or head[1] not in ("directed", "undirected"):
        raise GraphFormatError(f"malformed header: {' '.join(head)}")
    try:
        n, m = int(head[2]), int(head[3])
    except ValueError:
        raise GraphFormatError(f"malformed header: {' '.join(head)}") from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header")
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}")
    pairs = []
    for row in body:
        if len(row) != 2:
            raise GraphFormatError(f"malformed edge line: {' '.join(row)}")
        try:
            u, v = int(row[0]), int(row[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge line: {' '.join(row)}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"edge {u} {v} out of range 1..{n}")
        pairs.append((u - 1, v - 1))
    try:
        if head[1] == "directed":
            return Digraph(n, pairs)
        undirected = set()
        for u, v in pairs:
            key = (min(u, v), max(u, v))
            if key in undirected:
                raise ValueError(f"duplicate edge {u + 1} {v + 1}")
            undirected.add(key)
        return Digraph.from_undirected(n, pairs)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


@dataclass
class Coding:
    """Vertex values plus optional edge values; missing edges act as the unit."""

    vertex: Sequence
    edge: Optional[Dict[int, object]] = None
    ring: Optional[Ring] = field(default=None, repr=False)

    def vertex_value(self, v: int):
        return self.vertex[v]

    def edge_value(self, eid: int):
        """The edge value, or None for the implicit unit."""
        if self.edge is None:
            return None
        return self.edge.get(eid)


def _count(counter, key):
    if counter is not None:
        counter[key] = counter.get(key, 0) + 1


def walk_sum(G: Digraph, xi: Coding, k: int, ring: Ring = ZZ, counter: Optional[dict] = None):
    """f(G; xi) as a sum over k-walks, in k-1 sparse matrix-vector rounds.

    Every product is a right multiplication by a coding value, so algebras
    with a cheap skew product (vectors, blades, Zeon generators) stay cheap.
    ``counter`` (optional dict) receives "add" and "mul" ring-op counts.
    """
    if not 1 <= k <= max(G.n, 1) or G.n == 0:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={G.n}")
    one = ring.one()
    s = []
    for w in range(G.n):
        s.append(one * xi.vertex_value(w))
        _count(counter, "mul")
    for _ in range(k - 1):
        nxt = []
        for w in range(G.n):
            acc = None
            for v, eid in G.in_adj[w]:
                term = s[v]
                y = xi.edge_value(eid)
                if y is not None:
                    term = term * y
                    _count(counter, "mul")
                if acc is None:
                    acc = term
                else:
                    acc = acc + term
                    _count(counter, "add")
            if acc is None:
                nxt.append(ring.zero())
            else:
                nxt.append(acc * xi.vertex_value(w))
                _count(counter, "mul")
        s = nxt
    total = s[0]
    for x in s[1:]:
        total = total + x
        _count(counter, "add")
    return total


def coding_dimension(xi: Coding) -> int:
    for val in xi.vertex:
        if isinstance(val, (VectorK, Blade2)):
            return val.k
        if isinstance(val, Extensor):
            return val.k
    raise ValueError("coding has no extensor-valued vertex")


def walk_sum_extensor(G: Digraph, xi: Coding, k: int, base: Ring = ZZ) -> Extensor:
    """Walk-sum in the exterior algebra; non-path walks vanish for decomposable codes."""
    ring = ExteriorAlgebra(coding_dimension(xi), base)
    out = walk_sum(G, xi, k, ring)
    if not isinstance(out, Extensor):
        out = out.to_extensor() if isinstance(out, VectorK) else out.expand()
    return out


def walk_sum_circuit(G: Digraph, k: int, edge_vars: bool = False):
    """The walk-sum as a skew circuit K.

    Variables 0..n-1 are the vertex codes; with ``edge_vars`` the edge codes
    follow as variables n..n+m-1.  Every multiplication takes a variable as its
    right operand.
    """
    from .circuit import CircuitBuilder

    if not 1 <= k <= max(G.n, 1) or G.n == 0:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={G.n}")
    b = CircuitBuilder(G.n + (G.m if edge_vars else 0))
    one = b.const(1)
    s = [b.mul(one, b.input(w)) for w in range(G.n)]
    for _ in range(k - 1):
        nxt = []
        for w in range(G.n):
            terms = []
            for v, eid in G.in_adj[w]:
                if s[v] is None:
                    continue
                terms.append(b.mul(s[v], b.input(G.n + eid)) if edge_vars else s[v])
            nxt.append(b.mul(b.sum(terms), b.input(w)) if terms else None)
        s = nxt
    live = [g for g in s if g is not None]
    return b.build(b.sum(live) if live else b.const(0))
