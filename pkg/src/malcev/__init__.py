"""Exact workbench for the free Malcev algebra on x, y, z."""

__version__ = "0.1.0"

from .terms import (  # noqa: E402
    XYZ,
    Alphabet,
    AlphabetError,
    Element,
    Monomial,
    MultiDegree,
    add,
    canonicalize,
    format_element,
    get_alphabet,
    gfunc,
    jacobian,
    mul,
    multidegree_of,
    scale,
)
from .operators import GOp, LOp, OperatorSum, RightMul, apply_operator, commutator, d_operator  # noqa: E402
from .linearize import IdentityExpr, delta, multilinearize  # noqa: E402
from .lie import commutator_embed, lie_dim, lie_is_zero, witt_dim  # noqa: E402
from .octonion import build_table, eval_generic, m7_mul, oct_is_zero  # noqa: E402
from .subdirect import dim_J, dim_M, jspan_rank, zero_in_M, zero_test  # noqa: E402
from .tideal import check_identity, consequence_space, is_consequence  # noqa: E402
from .basis import BasisDescriptor, enumerate_basis, realize, verify_basis  # noqa: E402
from .parser import ParseError, parse  # noqa: E402

__all__ = [
    "__version__",
    "XYZ", "Alphabet", "AlphabetError", "Element", "Monomial", "MultiDegree",
    "add", "canonicalize", "format_element", "get_alphabet", "gfunc", "jacobian", "mul",
    "multidegree_of", "scale",
    "GOp", "LOp", "OperatorSum", "RightMul", "apply_operator", "commutator", "d_operator",
    "IdentityExpr", "delta", "multilinearize",
    "commutator_embed", "lie_dim", "lie_is_zero", "witt_dim",
    "build_table", "eval_generic", "m7_mul", "oct_is_zero",
    "dim_J", "dim_M", "jspan_rank", "zero_in_M", "zero_test",
    "check_identity", "consequence_space", "is_consequence",
    "BasisDescriptor", "enumerate_basis", "realize", "verify_basis",
    "ParseError", "parse",
]
