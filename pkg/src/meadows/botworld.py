"""Classical two-valued logic over the enlarged signature.

The translation pair psi_true/psi_false turns a sequential three-valued
formula into classical first-order formulae over the carrier with bot:
psi_true(phi) is true in the enlargement exactly when phi holds in the
partial structure, psi_false(phi) exactly when phi denial-holds, and both
are false exactly when phi is undefined.  Translated output is not
simplified; the shapes follow the structural rules one for one.

Also here: the classical evaluator for enlarged (or otherwise total)
structures, and the common-meadow law suite run inside enlargements of
prime fields.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import syntax
from .errors import InfiniteCarrier, NotEnlarged, NotTotalStructure, SignatureMismatch
from .flatten import flatten
from .generate import random_term
from .report import SuiteEntry, SuiteReport
from .semantics import (
    DENIAL_HOLDS,
    FTCPM_QUANTIFIED,
    HOLDS,
    UNDEFINED,
    Valid,
    _axiom,
    check_valid,
    satisfy,
)
from .structures import (
    MeadowStructure,
    Valuation,
    _eval,
    enl,
    enumerate_valuations,
    pdt,
    value_str,
)
from .syntax import (
    Bot,
    Formula,
    Frac,
    Mul,
    Term,
    formula_contains_bot,
    free_term_vars,
    parse_term,
    print_term,
    term_to_json,
)


# ---------------------------------------------------------------------------
# classical formulae


@dataclass(frozen=True)
class TrueC:
    pass


@dataclass(frozen=True)
class FalseC:
    pass


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Neq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "FolFormula"


@dataclass(frozen=True)
class And:
    left: "FolFormula"
    right: "FolFormula"


@dataclass(frozen=True)
class Or:
    left: "FolFormula"
    right: "FolFormula"


@dataclass(frozen=True)
class Impl:
    left: "FolFormula"
    right: "FolFormula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "FolFormula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "FolFormula"


FolFormula = TrueC | FalseC | Eq | Neq | Not | And | Or | Impl | Forall | Exists


# ---------------------------------------------------------------------------
# the translation


def psi(mode: str, phi: Formula) -> FolFormula:
    if mode not in ("true", "false"):
        raise ValueError(f"mode must be 'true' or 'false', not {mode!r}")
    if formula_contains_bot(phi):
        raise SignatureMismatch("the translation source must be in the plain signature")
    return _psi_true(phi) if mode == "true" else _psi_false(phi)


def psi_true(phi: Formula) -> FolFormula:
    return psi("true", phi)


def psi_false(phi: Formula) -> FolFormula:
    return psi("false", phi)


def _not_bot(t: Term) -> Neq:
    return Neq(t, Bot())


def _psi_true(phi: Formula) -> FolFormula:
    match phi:
        case syntax.TrueC():
            return TrueC()
        case syntax.FalseC():
            return FalseC()
        case syntax.Eq(l, r):
            return And(And(_not_bot(l), _not_bot(r)), Eq(l, r))
        case syntax.Not(b):
            return _psi_false(b)
        case syntax.SOr(l, r):
            return Or(_psi_true(l), And(_psi_false(l), _psi_true(r)))
        case syntax.SAnd(l, r):
            return And(_psi_true(l), _psi_true(r))
        case syntax.SImp(l, r):
            return _psi_true(syntax.SOr(syntax.Not(l), r))
        case syntax.ForallP(v, b):
            return Forall(v, Impl(_not_bot(syntax.Var(v)), _psi_true(b)))
        case syntax.ExistsP(v, b):
            return And(
                Exists(v, And(_not_bot(syntax.Var(v)), _psi_true(b))),
                _definedness_sweep(v, b),
            )
    raise TypeError(f"not a formula: {phi!r}")


def _definedness_sweep(v: str, b: Formula) -> Forall:
    # every proper instance of b is defined, expressed through the literal
    # b-or-not-b formula; the bot instance carries no information and is
    # guarded away exactly as in the plain universal translation
    return Forall(
        v,
        Impl(_not_bot(syntax.Var(v)), _psi_true(syntax.SOr(b, syntax.Not(b)))),
    )


def _psi_false(phi: Formula) -> FolFormula:
    match phi:
        case syntax.TrueC():
            return FalseC()
        case syntax.FalseC():
            return TrueC()
        case syntax.Eq(l, r):
            return And(And(_not_bot(l), _not_bot(r)), Neq(l, r))
        case syntax.Not(b):
            return _psi_true(b)
        case syntax.SOr(l, r):
            return And(_psi_false(l), _psi_false(r))
        case syntax.SAnd(l, r):
            return Or(_psi_false(l), And(_psi_true(l), _psi_false(r)))
        case syntax.SImp(l, r):
            return _psi_false(syntax.SOr(syntax.Not(l), r))
        case syntax.ForallP(v, b):
            return And(
                Exists(v, And(_not_bot(syntax.Var(v)), _psi_false(b))),
                _definedness_sweep(v, b),
            )
        case syntax.ExistsP(v, b):
            return Forall(v, Impl(_not_bot(syntax.Var(v)), _psi_false(b)))
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# classical evaluation


def eval_fol(S: MeadowStructure, sigma: Valuation, f: FolFormula) -> bool:
    """Two-valued evaluation; quantifiers range over the whole carrier,
    bot included in enlargements (the translation supplies its own guards)."""
    if not (S.enlarged or S.total):
        raise NotTotalStructure(
            f"classical evaluation needs total operations; {S.specifier()} is partial"
        )
    return _efol(S, sigma, f)


def _efol(S, sigma, f) -> bool:
    match f:
        case TrueC():
            return True
        case FalseC():
            return False
        case Eq(l, r):
            return _eval(S, sigma, l) == _eval(S, sigma, r)
        case Neq(l, r):
            return _eval(S, sigma, l) != _eval(S, sigma, r)
        case Not(b):
            return not _efol(S, sigma, b)
        case And(l, r):
            return _efol(S, sigma, l) and _efol(S, sigma, r)
        case Or(l, r):
            return _efol(S, sigma, l) or _efol(S, sigma, r)
        case Impl(l, r):
            return (not _efol(S, sigma, l)) or _efol(S, sigma, r)
        case Forall(v, b):
            if not S.finite:
                raise InfiniteCarrier(
                    f"quantifier over the infinite carrier of {S.specifier()}"
                )
            return all(_efol(S, {**sigma, v: a}, b) for a in S.elements())
        case Exists(v, b):
            if not S.finite:
                raise InfiniteCarrier(
                    f"quantifier over the infinite carrier of {S.specifier()}"
                )
            return any(_efol(S, {**sigma, v: a}, b) for a in S.elements())
    raise TypeError(f"not a classical formula: {f!r}")


# ---------------------------------------------------------------------------
# correspondence checks


def check_correspondence(S: MeadowStructure, phi: Formula, sigma: Valuation) -> bool:
    """Status in the partial structure matches the two translations in its
    enlargement: holds <-> psi_true, denial-holds <-> psi_false, undefined
    <-> neither."""
    status = satisfy(S, sigma, phi)
    E = enl(S)
    true_side = eval_fol(E, sigma, psi_true(phi))
    false_side = eval_fol(E, sigma, psi_false(phi))
    return (
        (status is HOLDS) == true_side
        and (status is DENIAL_HOLDS) == false_side
        and (status is UNDEFINED) == (not true_side and not false_side)
    )


def check_prop46(S: MeadowStructure, phi: Formula) -> bool:
    """Validity in the stripped structure coincides with truth of psi_true in
    the enlargement, free variables ranging over the proper carrier."""
    inner = pdt(S)
    valid_partial = isinstance(check_valid(inner, phi), Valid)
    translated = psi_true(phi)
    valid_translated = all(
        eval_fol(S, sigma, translated)
        for sigma in enumerate_valuations(inner, syntax.free_formula_vars(phi))
    )
    return valid_partial == valid_translated


# ---------------------------------------------------------------------------
# the common-meadow suite


WCR_AXIOMS: list[tuple[str, str, str]] = [
    ("c1", "(x+y)+z", "x+(y+z)"),
    ("c2", "x+y", "y+x"),
    ("c3", "x+0", "x"),
    ("c4", "x+(-x)", "0*x"),
    ("c5", "(x*y)*z", "x*(y*z)"),
    ("c6", "x*y", "y*x"),
    ("c7", "1*x", "x"),
    ("c8", "x*(y+z)", "(x*y)+(x*z)"),
    ("c9", "-(-x)", "x"),
    ("c10", "x+bot", "bot"),
    ("c11", "0*(x*x)", "0*x"),
]

CM_AXIOMS: list[tuple[str, str, str]] = [
    ("cm1", "x/y", "x*(1/y)"),
    ("cm2", "x/x", "1+(0/x)"),
    ("cm3", "1/(x*y)", "(1/x)*(1/y)"),
    ("cm4", "1/(1+(0*x))", "1+(0*x)"),
    ("cm5", "bot", "1/0"),
]

FAMILIAR_CONSEQUENCES: list[tuple[str, str, str]] = [
    ("fc1", "x/1", "x"),
    ("fc2", "-(x/y)", "(-x)/y"),
    ("fc3", "(-x)/y", "x/(-y)"),
    ("fc4", "(x/y)*(u/v)", "(x*u)/(y*v)"),
    ("fc5", "x/y + u/v", "((x*v)+(y*u))/(y*v)"),
]


def _equation_entry(S: MeadowStructure, name: str, lhs: Term, rhs: Term) -> SuiteEntry:
    names = free_term_vars(lhs)
    for n in free_term_vars(rhs):
        if n not in names:
            names.append(n)
    for sigma in enumerate_valuations(S, names):
        a = _eval(S, sigma, lhs)
        b = _eval(S, sigma, rhs)
        if a != b:
            witness = {k: value_str(v) for k, v in sigma.items()}
            return SuiteEntry(name, "fail", witness=witness)
    return SuiteEntry(name, "pass")


def run_cm_suite(
    S: MeadowStructure, seed: int = 0, flatten_samples: int = 100
) -> SuiteReport:
    """Exhaustive common-meadow laws over an enlarged finite structure.

    Covers the bot-ring equations, the total-division axioms, the familiar
    fraction identities, the psi_true images of the quantified base axioms,
    and randomised flattening spot-checks using the guard-absorbing form.
    """
    if not S.enlarged:
        raise NotEnlarged(f"the common-meadow suite needs an enlargement, got {S.specifier()}")
    report = SuiteReport("cm", S.specifier())
    sig = syntax.Signature.ENLARGED
    for name, lhs, rhs in WCR_AXIOMS + CM_AXIOMS + FAMILIAR_CONSEQUENCES:
        report.entries.append(
            _equation_entry(S, name, parse_term(lhs, sig), parse_term(rhs, sig))
        )
    for name, text in FTCPM_QUANTIFIED:
        translated = psi_true(_axiom(text))
        ok = eval_fol(S, {}, translated)
        report.entries.append(SuiteEntry(f"psi({name})", "pass" if ok else "fail"))
    # flattening inside the enlargement: t agrees with (p*s)/(q*s) everywhere
    rng = random.Random(seed)
    bad = None
    for _ in range(flatten_samples):
        t = random_term(rng, 4)
        r = flatten(t)
        flat = Frac(Mul(r.numerator, r.guard), Mul(r.denominator, r.guard))
        names = free_term_vars(t)
        for sigma in enumerate_valuations(S, names):
            if _eval(S, sigma, t) != _eval(S, sigma, flat):
                bad = (t, sigma)
                break
        if bad:
            break
    if bad is None:
        report.entries.append(
            SuiteEntry("flattening-spot-checks", "pass", samples=flatten_samples)
        )
    else:
        t, sigma = bad
        report.entries.append(
            SuiteEntry(
                "flattening-spot-checks",
                "fail",
                witness={k: value_str(v) for k, v in sigma.items()},
                notes=print_term(t),
            )
        )
    return report.recompute_ok()


# ---------------------------------------------------------------------------
# printing and JSON


_L_ATOM, _L_AND, _L_OR, _L_IMP, _L_QUANT = 4, 3, 2, 1, 0


def print_fol(f: FolFormula) -> str:
    s, _ = _render(f)
    return s


def _render(f: FolFormula) -> tuple[str, int]:
    match f:
        case TrueC():
            return "T", _L_ATOM
        case FalseC():
            return "F", _L_ATOM
        case Eq(l, r):
            return f"{print_term(l)} == {print_term(r)}", _L_ATOM
        case Neq(l, r):
            return f"{print_term(l)} != {print_term(r)}", _L_ATOM
        case Not(b):
            s, lvl = _render(b)
            if lvl < _L_ATOM:
                s = f"({s})"
            return f"!{s}", _L_ATOM
        case And(l, r):
            return f"{_child(l, _L_AND)} && {_child(r, _L_ATOM)}", _L_AND
        case Or(l, r):
            return f"{_child(l, _L_OR)} || {_child(r, _L_AND)}", _L_OR
        case Impl(l, r):
            return f"{_child(l, _L_OR)} -> {_child(r, _L_IMP)}", _L_IMP
        case Forall(v, b):
            return f"forall {v}. ({print_fol(b)})", _L_QUANT
        case Exists(v, b):
            return f"exists {v}. ({print_fol(b)})", _L_QUANT
    raise TypeError(f"not a classical formula: {f!r}")


def _child(f: FolFormula, min_level: int) -> str:
    s, lvl = _render(f)
    return f"({s})" if lvl < min_level else s


def fol_to_json(f: FolFormula) -> dict:
    match f:
        case TrueC():
            return {"node": "true"}
        case FalseC():
            return {"node": "false"}
        case Eq(l, r):
            return {"node": "eq", "left": term_to_json(l), "right": term_to_json(r)}
        case Neq(l, r):
            return {"node": "neq", "left": term_to_json(l), "right": term_to_json(r)}
        case Not(b):
            return {"node": "not", "body": fol_to_json(b)}
        case And(l, r):
            return {"node": "and", "left": fol_to_json(l), "right": fol_to_json(r)}
        case Or(l, r):
            return {"node": "or", "left": fol_to_json(l), "right": fol_to_json(r)}
        case Impl(l, r):
            return {"node": "impl", "left": fol_to_json(l), "right": fol_to_json(r)}
        case Forall(v, b):
            return {"node": "forall", "var": v, "body": fol_to_json(b)}
        case Exists(v, b):
            return {"node": "exists", "var": v, "body": fol_to_json(b)}
    raise TypeError(f"not a classical formula: {f!r}")
