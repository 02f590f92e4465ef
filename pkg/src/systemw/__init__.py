"""Reasoning over conditional belief bases.

System W inference via the preferred structure on worlds, with system Z and
p-entailment baselines, tolerance partitions, syntax-splitting detection, and
executable postulate/lemma verification.
"""

from .logic import (
    BeliefBase,
    Conditional,
    ConditionalStatus,
    Formula,
    FormulaSyntaxError,
    Signature,
    SignatureError,
    UnknownAtomError,
    World,
    evaluate_conditional,
    marginalize,
    merge_worlds,
    mod_set,
    parse_conditional,
    parse_formula,
)
from .tolerance import (
    InconsistentBeliefBaseError,
    TolerancePartition,
    is_consistent,
    is_tolerated,
    tolerance_partition,
)
from .preferred import (
    Comparison,
    PreferredStructure,
    XiProfile,
    build_order,
    compare_worlds,
    xi_profile,
)
from .inference import Engine, InferenceMode, infer, infer_p, infer_w, infer_z
from .splitting import (
    GenerationError,
    PostulateReport,
    SyntaxSplitting,
    check_di,
    check_ind,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_rel,
    check_synsplit,
    check_tv,
    detect_splitting,
    generate_split_base,
)

__all__ = [
    "BeliefBase",
    "Comparison",
    "Conditional",
    "ConditionalStatus",
    "Engine",
    "Formula",
    "FormulaSyntaxError",
    "GenerationError",
    "InconsistentBeliefBaseError",
    "InferenceMode",
    "PostulateReport",
    "PreferredStructure",
    "Signature",
    "SignatureError",
    "SyntaxSplitting",
    "TolerancePartition",
    "UnknownAtomError",
    "World",
    "XiProfile",
    "build_order",
    "check_di",
    "check_ind",
    "check_lemma1",
    "check_lemma2",
    "check_lemma3",
    "check_lemma4",
    "check_rel",
    "check_synsplit",
    "check_tv",
    "compare_worlds",
    "detect_splitting",
    "evaluate_conditional",
    "generate_split_base",
    "infer",
    "infer_p",
    "infer_w",
    "infer_z",
    "is_consistent",
    "is_tolerated",
    "marginalize",
    "merge_worlds",
    "mod_set",
    "parse_conditional",
    "parse_formula",
    "tolerance_partition",
    "xi_profile",
]

__version__ = "0.1.0"
