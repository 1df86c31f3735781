"""Graded-syntax Łukasiewicz first-order logic with linguistic hedges.

Exact rational MV-algebra arithmetic, a parser and printer for the hedge
language, hedge truth-function validation, graded proof checking with
saturation-based provability bounds, and brute-force semantics over finite
chains and domains.
"""

from .mv import MVChain, ONE, TruthValue, ZERO, as_truth, biresiduum, chain_values
from .mv import join, luk_and, luk_imp, luk_neg, luk_or, meet, multiple, power
from .syntax import (
    Apply,
    Conj,
    Const,
    Disj,
    Exists,
    Forall,
    Formula,
    HedgeApp,
    HedgeMode,
    HedgeSignature,
    Iff,
    Imp,
    Max,
    Min,
    Multiple,
    Neg,
    NotSubstitutableError,
    Power,
    Pred,
    Term,
    TruthConst,
    Var,
    expand,
    format_formula,
    format_term,
    free_vars,
    subformula_universe,
    substitute,
)
from .hedges import (
    HedgeFunction,
    HedgeModel,
    IDENTITY,
    PL_SQRT,
    PL_SQUARE,
    PRESETS,
    ValidationReport,
    Violation,
    blend,
    boundaries,
    eval_hedge,
    fitting_constant,
    validate_axioms,
    validate_shape,
)
from .theory import Theory
from .deduction import (
    BoundResult,
    ConsistencyResult,
    EvaluatedFormula,
    LogicalAxiomMatch,
    Proof,
    ProofCheckError,
    ProofStep,
    apply_rule,
    check_proof,
    detect_contradiction,
    extract_proof,
    instantiate_match,
    lax_grade,
    provability_lower_bound,
    saturate,
)
from .semantics import (
    EvalError,
    OpenFormulaError,
    SemDegreeResult,
    SpaceGuardError,
    Structure,
    check_equivalence_lemma,
    enumerate_structures,
    eval_formula,
    eval_term,
    is_model,
    sem_degree,
    tautology_degree,
)
from .parser import (
    FlnSyntaxError,
    format_proof,
    format_structure,
    parse_formula,
    parse_hedge_model,
    parse_proof,
    parse_structure,
    parse_term,
    parse_theory,
)

__version__ = "0.1.0"
