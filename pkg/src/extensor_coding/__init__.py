"""Extensor codings for k-path and subgraph problems over exterior and Zeon algebras."""

from .circuit import Circuit, CircuitBuilder, detect_multilinear, eval_circuit, parse_circuit
from .codings import SeededRng, bernoulli_coding, lift_coding, vandermonde_coding
from .extensor import (
    Blade2,
    Extensor,
    ExteriorAlgebra,
    VectorK,
    lift,
    lift_sign,
    top_coefficient,
    wedge_blade,
    wedge_general,
    wedge_vector,
)
from .graph import Coding, Digraph, parse_graph, walk_sum
from .paths import (
    CountEstimate,
    approx_count_paths,
    bernoulli_moment_check,
    detect_deterministic,
    detect_few_paths,
    detect_random_edge_weights,
    detect_representative,
    detect_unambiguous,
)
from .rings import QQ, ZZ, Fp, PrimeField
from .subgraphs import (
    TreeDecomposition,
    approx_count_subgraphs,
    aut_size,
    find_td_exhaustive,
    hom_circuit,
    make_nice,
    parse_td,
    validate_td,
)
from .zeon import Zeon, ZeonAlgebra

__version__ = "0.1.0"

__all__ = [
    "Circuit", "CircuitBuilder", "detect_multilinear", "eval_circuit", "parse_circuit",
    "SeededRng", "bernoulli_coding", "lift_coding", "vandermonde_coding",
    "Blade2", "Extensor", "ExteriorAlgebra", "VectorK", "lift", "lift_sign", "top_coefficient",
    "wedge_blade", "wedge_general", "wedge_vector",
    "Coding", "Digraph", "parse_graph", "walk_sum",
    "CountEstimate", "approx_count_paths", "bernoulli_moment_check", "detect_deterministic",
    "detect_few_paths", "detect_random_edge_weights", "detect_representative", "detect_unambiguous",
    "QQ", "ZZ", "Fp", "PrimeField",
    "TreeDecomposition", "approx_count_subgraphs", "aut_size", "find_td_exhaustive", "hom_circuit",
    "make_nice", "parse_td", "validate_td",
    "Zeon", "ZeonAlgebra",
]
