"""Tree decompositions of a pattern H, the homomorphism-polynomial circuit,
and the approximate subgraph counter built on lifted Bernoulli trials.

Pattern vertices are 0-based internally; the ``.td`` file format uses 1-based
vertex and bag ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .circuit import Circuit, CircuitBuilder, eval_circuit
from .extensor import lift_sign
from .graph import Digraph
from .rings import ZZ
from .paths import CountEstimate, _as_fraction, exact_sum, lifted_bernoulli_trials, trial_count

MAX_PATTERN_K = 10

# measured: the largest size / (k * n^(width+1)) over all patterns k <= 4,
# hosts n <= 6, using find_td_exhaustive decompositions (see tests)
SIZE_CONSTANT = 4


class TDError(ValueError):
    pass


@dataclass
class TreeDecomposition:
    """Bags (frozensets of 0-based pattern vertices) and undirected tree edges between bag indices."""

    bags: List[FrozenSet[int]]
    edges: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_path(self) -> bool:
        return all(len(a) <= 2 for a in self.adjacency())

    def to_text(self, k: int) -> str:
        lines = [f"s td {len(self.bags)} {self.width + 1} {k}"]
        for i, b in enumerate(self.bags):
            lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(b)]))
        for a, b in self.edges:
            lines.append(f"{a + 1} {b + 1}")
        return "\n".join(lines) + "\n"


def parse_td(text: str) -> Tuple[TreeDecomposition, int]:
    """Read a PACE-style ``.td`` file; returns (decomposition, pattern vertex count)."""
    header = None
    bags: Dict[int, FrozenSet[int]] = {}
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        try:
            if tok[0] == "s":
                if header is not None or len(tok) != 5 or tok[1] != "td":
                    raise TDError(f"line {lineno}: bad header")
                header = (int(tok[2]), int(tok[3]), int(tok[4]))
            elif header is None:
                raise TDError(f"line {lineno}: content before header")
            elif tok[0] == "b":
                bid = int(tok[1])
                if not 1 <= bid <= header[0] or bid in bags:
                    raise TDError(f"line {lineno}: bad or duplicate bag id {bid}")
                verts = [int(x) for x in tok[2:]]
                if any(not 1 <= v <= header[2] for v in verts):
                    raise TDError(f"line {lineno}: vertex out of range")
                bags[bid] = frozenset(v - 1 for v in verts)
            else:
                if len(tok) != 2:
                    raise TDError(f"line {lineno}: expected a tree edge")
                a, b = int(tok[0]), int(tok[1])
                if not (1 <= a <= header[0] and 1 <= b <= header[0]):
                    raise TDError(f"line {lineno}: bag id out of range")
                edges.append((a - 1, b - 1))
        except ValueError as exc:
            if isinstance(exc, TDError):
                raise
            raise TDError(f"line {lineno}: {exc}") from None
    if header is None:
        raise TDError("missing header")
    if len(bags) != header[0]:
        raise TDError(f"header declares {header[0]} bags, found {len(bags)}")
    td = TreeDecomposition([bags[i + 1] for i in range(header[0])], edges)
    if td.width + 1 != header[1]:
        raise TDError(f"header width+1 {header[1]} does not match bags ({td.width + 1})")
    return td, header[2]


def _check_tree(n_nodes: int, edges: Sequence[Tuple[int, int]]) -> None:
    if n_nodes == 0:
        raise TDError("decomposition has no bags")
    if len(edges) != n_nodes - 1:
        raise TDError("bag graph is not a tree (wrong edge count)")
    parent = list(range(n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise TDError("bag graph is not a tree (cycle)")
        parent[ra] = rb


def validate_td(H: Digraph, td: TreeDecomposition) -> int:
    """Check the decomposition axioms for H and return the width."""
    _check_tree(len(td.bags), td.edges)
    for b in td.bags:
        if any(not 0 <= v < H.n for v in b):
            raise TDError("bag mentions a vertex outside the pattern")
    adj = td.adjacency()
    for v in range(H.n):
        holders = [i for i, b in enumerate(td.bags) if v in b]
        if not holders:
            raise TDError(f"uncovered vertex {v + 1}")
        # occurrence set must induce a connected subtree
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and v in td.bags[y]:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(holders):
            raise TDError(f"occurrences of vertex {v + 1} are disconnected")
    for u, w in H.edges:
        if not any(u in b and w in b for b in td.bags):
            raise TDError(f"uncovered edge ({u + 1},{w + 1})")
    return td.width


# ---------------------------------------------------------------- nice form

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass
class NiceNode:
    kind: str
    bag: Tuple[int, ...]  # sorted
    children: List[int]
    vertex: int = -1  # introduced or forgotten vertex


@dataclass
class NiceTreeDecomposition:
    nodes: List[NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max(len(x.bag) for x in self.nodes) - 1

    def has_join(self) -> bool:
        return any(x.kind == JOIN for x in self.nodes)

    def postorder(self) -> List[int]:
        out: List[int] = []
        stack = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in self.nodes[x].children:
                stack.append((c, False))
        return out

    def check(self) -> None:
        """Raise TDError unless every node has one of the four shapes and the root bag is empty."""
        if self.nodes[self.root].bag:
            raise TDError("root bag must be empty")
        for x in self.nodes:
            kids = [self.nodes[c] for c in x.children]
            if x.kind == LEAF:
                ok = not kids and not x.bag
            elif x.kind == INTRODUCE:
                ok = (len(kids) == 1 and x.vertex in x.bag
                      and set(kids[0].bag) == set(x.bag) - {x.vertex})
            elif x.kind == FORGET:
                ok = (len(kids) == 1 and x.vertex not in x.bag
                      and set(kids[0].bag) == set(x.bag) | {x.vertex})
            elif x.kind == JOIN:
                ok = len(kids) == 2 and all(c.bag == x.bag for c in kids)
            else:
                ok = False
            if not ok:
                raise TDError(f"malformed {x.kind} node")

    def as_td(self) -> TreeDecomposition:
        edges = [(i, c) for i, x in enumerate(self.nodes) for c in x.children]
        return TreeDecomposition([frozenset(x.bag) for x in self.nodes], edges)


def make_nice(td: TreeDecomposition, H: Optional[Digraph] = None) -> NiceTreeDecomposition:
    """Normalize to leaf/introduce/forget/join nodes with an empty root bag.

    The tree is rooted at its lowest-numbered node of degree <= 1, so a path
    decomposition yields a join-free result.
    """
    if H is not None:
        validate_td(H, td)
    else:
        _check_tree(len(td.bags), td.edges)
    adj = td.adjacency()
    root = min(i for i, a in enumerate(adj) if len(a) <= 1)
    nodes: List[NiceNode] = []

    def push(kind, bag, children, vertex=-1) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), list(children), vertex))
        return len(nodes) - 1

    def morph(x: int, target: FrozenSet[int]) -> int:
        cur = set(nodes[x].bag)
        for v in sorted(cur - target):
            cur.discard(v)
            x = push(FORGET, cur, [x], v)
        for v in sorted(target - cur):
            cur.add(v)
            x = push(INTRODUCE, cur, [x], v)
        return x

    # iterative post-order over the rooted decomposition
    parent = {root: -1}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    built: Dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [built[y] for y in adj[x] if parent.get(y) == x and y != parent[x]]
        if not kids:
            kids = [push(LEAF, (), [])]
        parts = [morph(c, bag) for c in kids]
        acc = parts[0]
        for p in parts[1:]:
            acc = push(JOIN, bag, [acc, p])
        built[x] = acc
    top = morph(built[root], frozenset())
    nice = NiceTreeDecomposition(nodes, top)
    nice.check()
    return nice


# ------------------------------------------------------- exhaustive search


def _neighbors(H: Digraph) -> List[int]:
    """Undirected neighbor bitmasks, ignoring loops."""
    nb = [0] * H.n
    for u, v in H.edges:
        if u != v:
            nb[u] |= 1 << v
            nb[v] |= 1 << u
    return nb


def _elim_q(nb: List[int], S: int, v: int, n: int) -> int:
    """Vertices outside S+v reachable from v through S (the bag size minus one when eliminating v after S)."""
    seen = 1 << v
    stack = [v]
    found = 0
    while stack:
        x = stack.pop()
        m = nb[x] & ~seen
        seen |= m
        while m:
            low = m & -m
            y = low.bit_length() - 1
            m ^= low
            if S >> y & 1:
                stack.append(y)
            else:
                found |= low
    return found


def find_td_exhaustive(H: Digraph, path: bool = False) -> TreeDecomposition:
    """Minimum-width tree (or, with ``path``, path) decomposition by DP over vertex subsets."""
    k = H.n
    if k < 1:
        raise TDError("pattern needs at least one vertex")
    if k > MAX_PATTERN_K:
        raise TDError(f"pattern size {k} exceeds the cap {MAX_PATTERN_K}")
    nb = _neighbors(H)
    full = (1 << k) - 1
    best = [0] * (1 << k)
    choice = [-1] * (1 << k)
    for S in range(1, 1 << k):
        b, c = None, -1
        m = S
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            R = S ^ low
            if path:
                # vertex separation: prefix S, boundary = members of S with a neighbor outside
                cost = sum(1 for u in range(k) if S >> u & 1 and nb[u] & ~S & full)
            else:
                cost = bin(_elim_q(nb, R, v, k)).count("1")
            val = max(best[R], cost)
            if b is None or val < b:
                b, c = val, v
        best[S], choice[S] = b, c
    order: List[int] = []
    S = full
    while S:
        v = choice[S]
        order.append(v)
        S ^= 1 << v
    order.reverse()  # order[i] is placed i-th
    pos = {v: i for i, v in enumerate(order)}
    if path:
        bags = []
        for i, v in enumerate(order):
            prev = {u for u in order[:i] if any(pos[w] >= i for w in _bits(nb[u]))}
            bags.append(frozenset(prev | {v}))
        edges = [(i, i + 1) for i in range(k - 1)]
        return TreeDecomposition(bags, edges)
    # elimination order: bag of v is v plus its later neighbors in the filled graph
    bags = []
    later = []
    for i, v in enumerate(order):
        before = 0
        for u in order[:i]:
            before |= 1 << u
        q = _elim_q(nb, before, v, k)
        bags.append(frozenset(_bits(q) | {v}))
        later.append(q)
    edges = []
    for i in range(k - 1):
        nxt = [pos[u] for u in _bits(later[i])]
        edges.append((i, min(nxt) if nxt else i + 1))
    return TreeDecomposition(bags, edges)


def _bits(m: int) -> set:
    out = set()
    while m:
        low = m & -m
        out.add(low.bit_length() - 1)
        m ^= low
    return out


# ------------------------------------------------------- homomorphism circuit


def hom_circuit(H: Digraph, G: Digraph, ntd: NiceTreeDecomposition) -> Circuit:
    """Circuit in zeta_1..zeta_n for sum over homs h: H -> G of prod_v zeta_{h(v)}.

    Only partial maps that respect the pattern edges inside the bag get a gate;
    absent maps stand for the zero polynomial.
    """
    ntd.check()
    gset = set(G.edges)
    hadj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(H.n)}
    for u, w in H.edges:
        hadj[u].append((u, w))
        if w != u:
            hadj[w].append((u, w))
    cb = CircuitBuilder(G.n)
    table: Dict[int, Dict[Tuple[int, ...], int]] = {}
    for x in ntd.postorder():
        node = ntd.nodes[x]
        if node.kind == LEAF:
            table[x] = {(): cb.const(1)}
            continue
        if node.kind == JOIN:
            t1, t2 = (table.pop(c) for c in node.children)
            table[x] = {pi: cb.mul(g, t2[pi]) for pi, g in t1.items() if pi in t2}
            continue
        child = table.pop(node.children[0])
        cbag = ntd.nodes[node.children[0]].bag
        if node.kind == INTRODUCE:
            xv = node.vertex
            at = node.bag.index(xv)
            out: Dict[Tuple[int, ...], int] = {}
            for pi_c, g in child.items():
                img = dict(zip(cbag, pi_c))
                for a in range(G.n):
                    img[xv] = a
                    if all(p not in img or q not in img or (img[p], img[q]) in gset
                           for p, q in hadj[xv]):
                        out[pi_c[:at] + (a,) + pi_c[at:]] = cb.mul(g, cb.input(a))
                del img[xv]
            table[x] = out
        else:
            at = cbag.index(node.vertex)
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for pi_c, g in child.items():
                groups.setdefault(pi_c[:at] + pi_c[at + 1:], []).append(g)
            table[x] = {pi: cb.sum(gs) for pi, gs in groups.items()}
    res = table[ntd.root]
    return cb.build(res[()] if () in res else cb.const(0))


def size_bound(H: Digraph, G: Digraph, width: int) -> int:
    return SIZE_CONSTANT * H.n * max(G.n, 1) ** (width + 1)


def aut_size(H: Digraph) -> int:
    """Number of automorphisms, by backtracking over vertex permutations."""
    k = H.n
    if k > MAX_PATTERN_K:
        raise TDError(f"pattern size {k} exceeds the cap {MAX_PATTERN_K}")
    eset = set(H.edges)
    outdeg = [0] * k
    indeg = [0] * k
    for u, v in H.edges:
        outdeg[u] += 1
        indeg[v] += 1
    sig = [(outdeg[v], indeg[v], (v, v) in eset) for v in range(k)]
    img = [-1] * k
    used = [False] * k
    count = 0

    def extend(i: int):
        nonlocal count
        if i == k:
            count += 1
            return
        for a in range(k):
            if used[a] or sig[a] != sig[i]:
                continue
            ok = all(((i, j) in eset) == ((a, img[j]) in eset) and ((j, i) in eset) == ((img[j], a) in eset)
                     for j in range(i))
            if ok:
                img[i], used[a] = a, True
                extend(i + 1)
                img[i], used[a] = -1, False

    extend(0)
    return count


def approx_count_subgraphs(H: Digraph, G: Digraph, eps, seed: int = 0, trials: Optional[int] = None,
                           td: Optional[TreeDecomposition] = None, dist: str = "pm1",
                           engine: str = "auto", jobs: int = 1) -> CountEstimate:
    """(1 +- eps)-estimate of the number of (not necessarily induced) copies of H in G.

    The hom circuit of a join-free decomposition is skew; evaluated at lifted
    random codings it keeps only injective homs, each weighted by a squared
    determinant of expectation k!.
    """
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    k = H.n
    if td is None:
        td = find_td_exhaustive(H, path=True)
    width = validate_td(H, td)
    ntd = make_nice(td)
    if ntd.has_join():
        raise TDError("a path decomposition is required (the given decomposition has join nodes)")
    aut = aut_size(H)
    t = trial_count(k, eps) if trials is None else int(trials)
    if t < 1:
        raise ValueError("need at least one trial")
    extra = {"aut": aut, "width": width, "dist": dist}
    if k > G.n:
        return CountEstimate(Fraction(0), t, np.zeros(t, dtype=object), eps, seed, k, extra)
    circuit = hom_circuit(H, G, ntd)
    extra["circuit_size"] = circuit.size()
    raw = lifted_bernoulli_trials(circuit, k, seed, t, dist, engine, jobs) * lift_sign(k)
    est = Fraction(exact_sum(raw), math.factorial(k) * t * aut)
    return CountEstimate(est, t, raw, eps, seed, k, extra)


def hom_count_via_circuit(H: Digraph, G: Digraph, td: Optional[TreeDecomposition] = None) -> int:
    """Evaluate the hom circuit at zeta = 1 over the integers."""
    if td is None:
        td = find_td_exhaustive(H)
    c = hom_circuit(H, G, make_nice(td, H))
    return int(eval_circuit(c, [1] * G.n, ZZ))


def out_star(leaves: int) -> Digraph:
    return Digraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


__all__ = [
    "TDError", "TreeDecomposition", "NiceNode", "NiceTreeDecomposition", "parse_td", "validate_td",
    "make_nice", "find_td_exhaustive", "hom_circuit", "size_bound", "aut_size",
    "approx_count_subgraphs", "hom_count_via_circuit", "out_star", "MAX_PATTERN_K", "SIZE_CONSTANT",
    "LEAF", "INTRODUCE", "FORGET", "JOIN",
]
