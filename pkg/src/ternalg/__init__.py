"""Ternary derivations and ternary automorphisms of evolution algebras over exact fields."""
from .errors import (
    DecompositionError,
    InfeasibleError,
    InvariantError,
    NotPerfectError,
    OracleBoundError,
    ParseError,
    TernalgError,
)
from .evolalg import EvolutionAlgebra, SquareDecomposition, load_algebra, square_analysis
from .field import GF, QQ, Field, PrimeField, RationalField, Residue, field_from_json
from .matrix import Matrix, generalized_inverse, left_null_space, right_null_space, rref
from .oracle import compare_tder, enumerate_taut_pairs, oracle_tder
from .taut import (
    MonomialMap,
    TautTriple,
    compose_taut,
    decompose_taut,
    invert_taut,
    make_taut,
    verify_taut,
)
from .tder import TernaryTriple, solve_d1, tder_basis, tder_perfect_triple, verify_tder

__version__ = "0.1.0"
