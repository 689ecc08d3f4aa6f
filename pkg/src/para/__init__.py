"""para: sorted first-order logic with numeric symbol codes, dot-pattern
visual encodings, tiling-grid layout, Prolog/Lean export, and a bounded
resolution prover, exposed as a library, CLI and HTTP service."""

from .corpus import Corpus, load, save
from .dictionary import (
    Category,
    Kind,
    SymbolDictionary,
    align_translate,
    classify_code,
    code_for,
    constant_category,
    export_dict,
    import_dict,
    variable_category,
)
from .errors import ParaError
from .fol import (
    Atom,
    Binary,
    Connective,
    Constant,
    Formula,
    FunctionApp,
    Not,
    Quantified,
    Quantifier,
    Sort,
    Term,
    Variable,
    expand_iff,
    free_vars,
    substitute,
    validate,
)
from .parser import parse_proto
from .printer import print_numeric, print_proto, print_sticks
from .reasoner import (
    Bounds,
    ProofResult,
    ProofStatus,
    finite_model_check,
    format_trace,
    prove,
    refute,
    to_cnf,
    unify,
)
from .render import parse_prelpara, to_prelpara_2d, to_prelpara_3d, to_svg_2d, to_svg_3d
from .smnist import SmnistPattern, block_start, code_of_pattern, pattern_of
from .tiler import TilingGrid, grid_codes, grid_from_codes, tile, untile
from .translate import to_lean_skeleton, to_prolog

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
