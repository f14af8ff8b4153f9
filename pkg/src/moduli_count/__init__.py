"""Exhaustive point and orbit counts for tuples of 2x2 matrices over finite fields,
checked against exact closed forms."""

from .errors import (
    BudgetExceeded,
    DivisionByZero,
    EmptyTuple,
    FieldMismatch,
    IndexOutOfRange,
    InexactDivision,
    ModuliCountError,
    NotPrime,
    TooLarge,
    UnsupportedField,
)
from .formulas import count_formula, formula_key, symbolic_suite, vhp_formula
from .gf import FieldElement, FieldSpec, enumerate_elements, frobenius, make_field
from .laurent import LaurentPoly
from .mat2 import Mat2, PglElement, char_data, conjugate, enumerate_pgl2, subalgebra_dim
from .orbits import OrbitCensus, check_free_action, orbit_census, stabilizer_order
from .registry import FormulaKey, FStratum, Kind, Space
from .stratify import Stratum, StratumCensus, census, classify, decode_tuple, encode_tuple
from .zeta import ZetaFactorization, ZetaSpace, functional_equation_check, verify_counts, zeta_factorization

__version__ = "0.1.0"
