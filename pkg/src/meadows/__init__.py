"""Symbolic engine for fields with a partial division operator.

Parse terms and sequential formulae, evaluate them under three-valued
semantics over exact rationals and prime fields, flatten fracterms, translate
into classical logic over bot-enlargements, and brute-force the law suites
over finite carriers.
"""

from .errors import MeadowError
from .flatten import FlatteningResult, flatten, prop34_fracterm
from .semantics import (
    TriStatus,
    check_identity,
    check_totalisation_invariance,
    check_valid,
    eq_identity,
    run_axiom_suite,
    satisfy,
)
from .structures import (
    BOT,
    Enlargement,
    EvalResult,
    Fp,
    MeadowStructure,
    PrimeField,
    Rationals,
    SuppesOno,
    enl,
    enumerate_valuations,
    eval_term,
    parse_structure,
    pdt,
    sample_valuations,
    tot0,
)
from .syntax import (
    EqIdentity,
    Signature,
    parse_formula,
    parse_identity,
    parse_term,
    print_formula,
    print_term,
)
from .trivalent import TriValue, check_eqcl_suite, tri_and, tri_imp, tri_not, tri_or
from .botworld import check_correspondence, eval_fol, psi, psi_false, psi_true, run_cm_suite

__version__ = "0.1.0"
