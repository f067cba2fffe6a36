"""Sequent calculi, cut elimination, interpolation, and classical
propositionalization for the pure-necessitation modal logic families."""

from .calculus import (
    CheckResult,
    LogicId,
    Partition,
    ProofNode,
    Sequent,
    check_proof,
    enumerate_partitions,
    parse_logic,
    parse_sequent,
    print_sequent,
    proof_from_json,
    proof_to_json,
    rule_set,
)
from .cutelim import CutEliminationError, eliminate_cuts, lower_box
from .formula import (
    BOT,
    TRUE,
    And,
    Atom,
    BaseAtom,
    Bot,
    Box,
    Formula,
    Imp,
    Or,
    ParseError,
    QuoteAtom,
    SignedVarSet,
    Var,
    box_decompose,
    boxes,
    negate,
    parse_formula,
    print_formula,
    quote,
    signed_vars,
    var,
)
from .interp import (
    NotProvableError,
    lyndon_interpolant,
    maehara,
    verify_interpolant,
    verify_partition_interpolant,
)
from .prop18n import (
    Translator,
    emulate,
    flat,
    sharp,
    std_subst,
    verify_propositionalization,
)
from .prover import (
    ClosureSet,
    Prover,
    ProvableSet,
    SearchBudgetExceeded,
    closure,
    decide,
    decide_classical,
    saturate_forward,
)
from .ulip import (
    ForbiddenSets,
    classical_post_interpolant,
    modal_post_interpolant,
    safety,
    verify_post_interpolant,
)

__version__ = "0.1.0"
