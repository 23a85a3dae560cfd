"""Brute-force ground truth.

Nothing here touches the algebra modules: paths come from depth-first search,
determinants from the Leibniz formula, homomorphisms from enumerating maps.
Graphs are read only through ``n`` and ``edges``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Sequence, Set, Tuple


class OracleBudgetError(RuntimeError):
    pass


def _succ(G) -> List[List[int]]:
    succ: List[List[int]] = [[] for _ in range(G.n)]
    for u, v in G.edges:
        succ[u].append(v)
    for lst in succ:
        lst.sort()
    return succ


def enumerate_k_paths(G, k: int, budget: int = 10**6) -> List[Tuple[int, ...]]:
    """All k-vertex simple directed paths (0-based vertices), lexicographic."""
    if k < 1:
        return []
    succ = _succ(G)
    out: List[Tuple[int, ...]] = []

    def dfs(path: List[int], seen: Set[int]):
        if len(path) == k:
            out.append(tuple(path))
            if len(out) > budget:
                raise OracleBudgetError(f"more than {budget} paths")
            return
        for w in succ[path[-1]]:
            if w not in seen:
                path.append(w)
                seen.add(w)
                dfs(path, seen)
                seen.discard(w)
                path.pop()

    for v in range(G.n):
        dfs([v], {v})
    return out


def count_k_walks(G, k: int) -> int:
    succ = _succ(G)
    ways = [1] * G.n
    for _ in range(k - 1):
        nxt = [0] * G.n
        for u in range(G.n):
            for w in succ[u]:
                nxt[w] += ways[u]
        ways = nxt
    return sum(ways) if k >= 1 else 0


def leibniz_det(mat: Sequence[Sequence]) -> object:
    """Determinant by the permutation expansion (exact for int/Fraction entries)."""
    k = len(mat)
    total = 0
    for perm in permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        term = 1
        for r in range(k):
            term *= mat[r][perm[r]]
        total += -term if inv % 2 else term
    return total


def vandermonde_path_det(path: Sequence[int], k: int) -> int:
    """det of the k x k matrix whose columns are (1, i, ..., i^(k-1)) for the path's 1-based ids."""
    ids = [v + 1 for v in path]
    return leibniz_det([[i**r for i in ids] for r in range(k)])


def sum_path_dets(G, k: int, power: int = 1) -> int:
    return sum(vandermonde_path_det(p, k) ** power for p in enumerate_k_paths(G, k))


def _check_caps(H, G, kcap: int = 6, ncap: int = 8) -> None:
    if H.n > kcap or G.n > ncap:
        raise OracleBudgetError(f"oracle caps are |V(H)| <= {kcap}, |V(G)| <= {ncap}")


def _is_hom(h: Sequence[int], H, gedges: Set[Tuple[int, int]]) -> bool:
    return all((h[u], h[v]) in gedges for u, v in H.edges)


def count_homomorphisms(H, G) -> int:
    _check_caps(H, G)
    gedges = set(G.edges)
    return sum(1 for h in product(range(G.n), repeat=H.n) if _is_hom(h, H, gedges))


def count_injective_homomorphisms(H, G) -> int:
    _check_caps(H, G)
    if H.n > G.n:
        return 0
    gedges = set(G.edges)
    return sum(1 for h in permutations(range(G.n), H.n) if _is_hom(h, H, gedges))


def automorphism_count(H) -> int:
    hedges = set(H.edges)
    return sum(1 for h in permutations(range(H.n)) if {(h[u], h[v]) for u, v in hedges} == hedges)


def count_subgraphs(H, G, cross_check: bool = True) -> int:
    """Copies of H in G (not necessarily induced): injective homs / |Aut(H)|.

    With ``cross_check`` the number of distinct image subgraphs is counted
    directly and must agree.
    """
    inj = count_injective_homomorphisms(H, G)
    aut = automorphism_count(H)
    if inj % aut:
        raise AssertionError("injective homomorphisms not divisible by |Aut(H)|")
    n_sub = inj // aut
    if cross_check and H.n <= G.n:
        gedges = set(G.edges)
        images = set()
        for h in permutations(range(G.n), H.n):
            if _is_hom(h, H, gedges):
                images.add((frozenset(h), frozenset((h[u], h[v]) for u, v in H.edges)))
        if len(images) != n_sub:
            raise AssertionError(f"subgraph counts disagree: {len(images)} vs {n_sub}")
    return n_sub


def expand_product_of_sums(factors: Sequence[Dict[Tuple[int, ...], int]]) -> Dict[Tuple[int, ...], int]:
    """Multiply sparse polynomials given as {exponent tuple: coeff}."""
    out: Dict[Tuple[int, ...], int] = {(): 1}
    for f in factors:
        nxt: Dict[Tuple[int, ...], int] = {}
        for ea, ca in out.items():
            for eb, cb in f.items():
                n = max(len(ea), len(eb))
                a = ea + (0,) * (n - len(ea))
                b = eb + (0,) * (n - len(eb))
                e = tuple(x + y for x, y in zip(a, b))
                nxt[e] = nxt.get(e, 0) + ca * cb
        out = {e: c for e, c in nxt.items() if c}
    return out


def exact_mean(values) -> Fraction:
    values = list(values)
    return Fraction(sum(int(v) for v in values), len(values))
