"""Real symmetric Holant problems on the three-letter domain {B, G, R}.

The main entry points are :func:`classify_set` (tractable class or hardness),
:func:`eval_tractable` / :func:`eval_brute` (Holant values), :func:`decompose`
and :func:`canonicalize` (orthogonal low-rank forms), and the gadget helpers.
"""

from .boolhol import BoolVerdict, classify_bool_set, eval_bool, eval_bool_brute
from .classifier import Verdict, classify_set, classify_single
from .evaluator import EvalReport, eval_auto, eval_brute, eval_tractable
from .gadgetlab import (
    gadget_signature,
    grid_to_boolean,
    local_holographic,
    realize_coeff_geneq,
    realize_plane_equality,
    realize_z_arity4,
)
from .sigcore import (
    BoolSig,
    HolantError,
    MatSig,
    SignatureGrid,
    SymSig,
    TooLarge,
    grid_from_json,
    grid_to_json,
    restrict_signature,
    sig_from_json,
    sig_from_terms,
    sig_to_json,
)
from .tensorlab import apply_binary, apply_orthogonal, canonicalize, contract_unary, decompose

__version__ = "0.1.0"

__all__ = [
    "BoolSig",
    "BoolVerdict",
    "EvalReport",
    "HolantError",
    "MatSig",
    "SignatureGrid",
    "SymSig",
    "TooLarge",
    "Verdict",
    "apply_binary",
    "apply_orthogonal",
    "canonicalize",
    "classify_bool_set",
    "classify_set",
    "classify_single",
    "contract_unary",
    "decompose",
    "eval_auto",
    "eval_bool",
    "eval_bool_brute",
    "eval_brute",
    "eval_tractable",
    "gadget_signature",
    "grid_from_json",
    "grid_to_boolean",
    "grid_to_json",
    "local_holographic",
    "realize_coeff_geneq",
    "realize_plane_equality",
    "realize_z_arity4",
    "restrict_signature",
    "sig_from_json",
    "sig_from_terms",
    "sig_to_json",
]
