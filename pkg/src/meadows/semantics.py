"""Tri-valued satisfaction over partial structures, and the axiom suites.

A formula under a valuation either holds, denial-holds, or is undefined —
exactly one of the three.  Atoms compare strict term evaluations: a partial
equality holds only when both sides are defined and equal, denial-holds only
when both are defined and different, and is undefined otherwise.  The
connectives short-circuit left to right; the universal quantifier holds when
every instance holds, is undefined when some instance is undefined, and
denial-holds when some instance denial-holds with every instance defined.
The existential quantifier is evaluated through its de-Morgan rewrite
``exists x. f == !(forall x. !f)``, which carries the definedness side
condition with it.

Validity sweeps every valuation of the free variables: exhaustively on
finite carriers, by seeded sampling over the rationals.  Quantifiers over an
infinite carrier are a hard error, never silently sampled.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from . import trivalent
from .errors import EnlargedStructure, InfiniteCarrier
from .generate import random_formula, random_term, replace_subformula, subformula_paths
from .report import SuiteEntry, SuiteReport
from .structures import (
    MeadowStructure,
    Valuation,
    _eval,
    enumerate_valuations,
    sample_valuations,
    tot0,
    value_str,
)
from .syntax import (
    Add,
    Eq,
    EqIdentity,
    ExistsP,
    FalseC,
    ForallP,
    Formula,
    Frac,
    Mul,
    Neg,
    Not,
    One,
    SAnd,
    SImp,
    SOr,
    Term,
    TrueC,
    Var,
    Zero,
    free_formula_vars,
    parse_formula,
    print_formula,
    substitute,
)


class TriStatus(Enum):
    HOLDS = "holds"
    DENIAL_HOLDS = "denial-holds"
    UNDEFINED = "undefined"

    def __str__(self):
        return self.value


HOLDS = TriStatus.HOLDS
DENIAL_HOLDS = TriStatus.DENIAL_HOLDS
UNDEFINED = TriStatus.UNDEFINED

_TO_TRI = {
    HOLDS: trivalent.TT,
    DENIAL_HOLDS: trivalent.FF,
    UNDEFINED: trivalent.UU,
}


def status_to_trivalue(s: TriStatus) -> trivalent.TriValue:
    return _TO_TRI[s]


# ---------------------------------------------------------------------------
# satisfaction


def satisfy(S: MeadowStructure, sigma: Valuation, phi: Formula) -> TriStatus:
    """Satisfaction status of a formula in a partial structure.

    Quantified formulae require a finite carrier; enlarged structures are
    rejected because their evaluation is classical, never undefined.
    """
    if S.enlarged:
        raise EnlargedStructure(
            "three-valued satisfaction is defined over partial structures; "
            f"{S.specifier()} is enlarged"
        )
    return _sat(S, sigma, phi)


def _sat(S: MeadowStructure, sigma: Valuation, phi: Formula) -> TriStatus:
    match phi:
        case TrueC():
            return HOLDS
        case FalseC():
            return DENIAL_HOLDS
        case Eq(l, r):
            vl = _eval(S, sigma, l)
            if vl is None:
                return UNDEFINED
            vr = _eval(S, sigma, r)
            if vr is None:
                return UNDEFINED
            return HOLDS if vl == vr else DENIAL_HOLDS
        case Not(b):
            s = _sat(S, sigma, b)
            if s is HOLDS:
                return DENIAL_HOLDS
            if s is DENIAL_HOLDS:
                return HOLDS
            return UNDEFINED
        case SOr(l, r):
            s = _sat(S, sigma, l)
            if s is DENIAL_HOLDS:
                return _sat(S, sigma, r)
            return s
        case SAnd(l, r):
            s = _sat(S, sigma, l)
            if s is HOLDS:
                return _sat(S, sigma, r)
            return s
        case SImp(l, r):
            s = _sat(S, sigma, l)
            if s is HOLDS:
                return _sat(S, sigma, r)
            if s is DENIAL_HOLDS:
                return HOLDS
            return UNDEFINED
        case ForallP(v, b):
            if not S.finite:
                raise InfiniteCarrier(
                    f"quantifier over the infinite carrier of {S.specifier()}"
                )
            saw_denial = False
            for a in S.elements():
                s = _sat(S, {**sigma, v: a}, b)
                if s is UNDEFINED:
                    return UNDEFINED
                if s is DENIAL_HOLDS:
                    saw_denial = True
            return DENIAL_HOLDS if saw_denial else HOLDS
        case ExistsP(v, b):
            return _sat(S, sigma, Not(ForallP(v, Not(b))))
    raise TypeError(f"not a formula: {phi!r}")


def eq_identity(S: MeadowStructure, sigma: Valuation, ident: EqIdentity) -> bool:
    """True when both sides have the same satisfaction status under sigma."""
    return satisfy(S, sigma, ident.left) is satisfy(S, sigma, ident.right)


# ---------------------------------------------------------------------------
# validity


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class Refuted:
    witness: Valuation
    status: Optional[TriStatus]


@dataclass(frozen=True)
class SampledClean:
    samples: int
    seed: int


Verdict = Valid | Refuted | SampledClean


def _valuations(S, names, samples, seed):
    """Exhaustive when possible, else sampled; None = exhaustive."""
    names = list(names)
    if S.finite or not names:
        return enumerate_valuations(S, names), None
    if samples is None:
        raise InfiniteCarrier(
            f"validity over {S.specifier()} needs a sample count"
        )
    return sample_valuations(S, names, samples, seed), samples


def check_valid(
    S: MeadowStructure, phi: Formula, samples: int | None = None, seed: int = 0
) -> Verdict:
    """Valid iff every (enumerated or sampled) valuation makes phi hold.

    The reported witness is the first counterexample in the deterministic
    valuation order.
    """
    stream, sampled = _valuations(S, free_formula_vars(phi), samples, seed)
    for sigma in stream:
        status = satisfy(S, sigma, phi)
        if status is not HOLDS:
            return Refuted(sigma, status)
    return Valid() if sampled is None else SampledClean(sampled, seed)


def check_identity(
    S: MeadowStructure, ident: EqIdentity, samples: int | None = None, seed: int = 0
) -> Verdict:
    names = free_formula_vars(ident.left)
    for name in free_formula_vars(ident.right):
        if name not in names:
            names.append(name)
    stream, sampled = _valuations(S, names, samples, seed)
    for sigma in stream:
        if not eq_identity(S, sigma, ident):
            return Refuted(sigma, None)
    return Valid() if sampled is None else SampledClean(sampled, seed)


def check_consequence(
    S: MeadowStructure, premises, conclusion: Formula
) -> bool:
    """The per-structure consequence instance: if every premise is valid in
    S, the conclusion must be valid in S. Vacuously true otherwise."""
    if any(not isinstance(check_valid(S, p), Valid) for p in premises):
        return True
    return isinstance(check_valid(S, conclusion), Valid)


# ---------------------------------------------------------------------------
# axiom tables


FTCPM_AXIOMS: list[tuple[str, str]] = [
    ("pm1", "(x+y)+z == x+(y+z)"),
    ("pm2", "x+0 == x"),
    ("pm3", "x + (-x) == 0"),
    ("pm4", "x*(y*z) == (x*y)*z"),
    ("pm5", "x*y == y*x"),
    ("pm6", "1*x == x"),
    ("pm7", "x*(y+z) == (x*y)+(x*z)"),
    ("pm8", "y != 0 -> x/y == x*(1/y)"),
    ("pm9", "x != 0 -> x/x == 1"),
    ("pm10", "0 != 1"),
    ("pm11", "(x != 0 && y != 0) -> x*y != 0"),
]

ASSERTION_AXIOMS: list[tuple[str, str]] = [
    ("A1", "x+y == y+x"),
    ("A2", "0*x == 0"),
    ("A3", "x != 0 -> -x != 0"),
    ("A4", "y != 0 -> -(x/y) == (-x)/y"),
    ("A5", "(y != 0 && v != 0) -> (x/y)*(u/v) == (x*u)/(y*v)"),
    ("A6", "(y != 0 && u != 0 && v != 0) -> (x/y)/(u/v) == (x*v)/(y*u)"),
    ("A7", "(y != 0 && v != 0) -> x/y + u/v == ((x*v)+(y*u))/(y*v)"),
    ("d4", "x*y != 0 -> x != 0"),
    ("exists-mul-inverse", "x != 0 -> (exists y. x*y == 1)"),
    ("exists-unit-fraction", "x != 0 -> (exists y. y != 0 && x == 1/y)"),
]

FOUR_SQUARES = ("4sq", "1 + ((x*x + y*y) + (z*z + u*u)) != 0")

# fully quantified presentation, the input of the classical translation suite
FTCPM_QUANTIFIED: list[tuple[str, str]] = [
    ("pm1b", "forall x. forall y. forall z. (x+y)+z == x+(y+z)"),
    ("pm2b", "forall x. x+0 == x"),
    ("pm3b", "forall x. x + (-x) == 0"),
    ("pm4b", "forall x. forall y. forall z. x*(y*z) == (x*y)*z"),
    ("pm5b", "forall x. forall y. x*y == y*x"),
    ("pm6b", "forall x. 1*x == x"),
    ("pm7b", "forall x. forall y. forall z. x*(y+z) == (x*y)+(x*z)"),
    ("pm8b", "forall x. forall y. y != 0 -> x/y == x*(1/y)"),
    ("pm9b", "forall x. x != 0 -> x/x == 1"),
    ("pm10b", "0 != 1"),
    ("pm11b", "forall x. forall y. (x != 0 && y != 0) -> x*y != 0"),
]


@lru_cache(maxsize=None)
def _axiom(text: str) -> Formula:
    return parse_formula(text)


def _witness_json(sigma: Valuation) -> dict:
    return {name: value_str(v) for name, v in sigma.items()}


def _verdict_entry(name: str, verdict: Verdict) -> SuiteEntry:
    if isinstance(verdict, Valid):
        return SuiteEntry(name, "pass")
    if isinstance(verdict, SampledClean):
        return SuiteEntry(name, "pass", samples=verdict.samples)
    return SuiteEntry(
        name,
        "fail",
        witness=_witness_json(verdict.witness),
        status=None if verdict.status is None else verdict.status.value,
    )


# ---------------------------------------------------------------------------
# suites


def run_axiom_suite(
    name: str,
    S: MeadowStructure | None,
    samples: int | None = None,
    seed: int = 0,
) -> SuiteReport:
    """Run one of the named law suites against a structure.

    ``eqcl`` ignores the structure (it is about the three-element algebra);
    ``rationals`` adds the four-squares law to the base axioms and is the
    one suite meant to run sampled over q.  ``soundness`` interprets
    ``samples`` as its instance count (default 500).
    """
    label = S.specifier() if S is not None else "-"
    if name == "eqcl":
        law_report = trivalent.check_eqcl_suite()
        entries = []
        for r in law_report.results:
            witness = None
            if r.counterexample is not None:
                witness = {k: str(v) for k, v in r.counterexample.items()}
            entries.append(SuiteEntry(r.law, r.status, witness=witness))
        return SuiteReport("eqcl", label, entries, ok=law_report.ok)
    if S is None:
        raise ValueError(f"suite {name!r} needs a structure")
    if name == "ftcpm":
        axioms = FTCPM_AXIOMS
    elif name == "assertions":
        axioms = ASSERTION_AXIOMS
    elif name == "rationals":
        axioms = FTCPM_AXIOMS + [FOUR_SQUARES]
    elif name == "soundness":
        return _soundness_report(S, samples or 500, seed)
    else:
        raise ValueError(f"unknown suite: {name!r}")
    report = SuiteReport(name, label)
    for axiom_name, text in axioms:
        verdict = check_valid(S, _axiom(text), samples=samples, seed=seed)
        report.entries.append(_verdict_entry(axiom_name, verdict))
    return report.recompute_ok()


def check_totalisation_invariance(
    S: MeadowStructure,
    phi: Formula,
    trials: int | None = None,
    seed: int = 0,
) -> SuiteReport:
    """Holds carries over to the x/0 = 0 totalisation, and so does denial.

    Undefined valuations may gain a status in the totalisation; the entry
    notes how many did.
    """
    T = tot0(S)
    stream, sampled = _valuations(S, free_formula_vars(phi), trials, seed)
    gained = 0
    failure = None
    for sigma in stream:
        base = satisfy(S, sigma, phi)
        total = satisfy(T, sigma, phi)
        if base is HOLDS and total is not HOLDS:
            failure = (sigma, base, total)
            break
        if base is DENIAL_HOLDS and total is not DENIAL_HOLDS:
            failure = (sigma, base, total)
            break
        if base is UNDEFINED and total is not UNDEFINED:
            gained += 1
    name = print_formula(phi)
    if failure is not None:
        sigma, base, total = failure
        entry = SuiteEntry(
            name,
            "fail",
            witness=_witness_json(sigma),
            status=total.value,
            samples=sampled,
            notes=f"{base.value} in the partial structure, {total.value} in the totalisation",
        )
    else:
        notes = None
        if gained:
            notes = f"strict gain: undefined on {gained} valuation(s), defined in the totalisation"
        entry = SuiteEntry(name, "pass", samples=sampled, notes=notes)
    return SuiteReport("totalisation", S.specifier(), [entry]).recompute_ok()


# ---------------------------------------------------------------------------
# soundness of the deductive apparatus, checked semantically


def _defined(t: Term) -> Formula:
    return Eq(t, t)


def _conj(fs: list[Formula]) -> Formula:
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = SAnd(f, out)
    return out


def _equal_variant(rng: random.Random, t: Term) -> Term:
    """A term provably equal to t and defined whenever t is."""
    return rng.choice(
        [t, Add(t, Zero()), Mul(One(), t), Mul(t, One()), Neg(Neg(t))]
    )


def _never_refuted(S, phi) -> Optional[Valuation]:
    for sigma in enumerate_valuations(S, free_formula_vars(phi)):
        if satisfy(S, sigma, phi) is DENIAL_HOLDS:
            return sigma
    return None


_VALID_POOL_TEXTS = [
    "T",
    "x == x",
    "x == 0 || x != 0",
    "x != 0 -> x/x == 1",
    "0 != 1",
    "x*y == y*x",
]


def _soundness_report(S: MeadowStructure, instances: int, seed: int) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("soundness", S.specifier())
    add = report.entries.append
    valid_pool = [_axiom(t) for t in _VALID_POOL_TEXTS]

    def rt(depth=4, allow_div=True):
        return random_term(rng, depth, allow_div=allow_div)

    # p1/p2/a2 are fully valid
    for name, phis in (
        ("p1", [Eq(Zero(), Zero()), Eq(One(), One())]),
        ("p2", [Eq(Var("x"), Var("x"))]),
        (
            "a2",
            [
                ForallP("x", SOr(Eq(Var("x"), c), Not(Eq(Var("x"), c))))
                for c in (Zero(), One())
            ],
        ),
    ):
        verdicts = [check_valid(S, phi) for phi in phis]
        bad = next((v for v in verdicts if isinstance(v, Refuted)), None)
        if bad is None:
            add(SuiteEntry(name, "pass", samples=len(phis)))
        else:
            add(_verdict_entry(name, bad))

    # schema instances with partial terms can be undefined, so the sound
    # content is irrefutability; division-free instances must be fully valid
    def schema_entry(name, make_instance):
        checked = 0
        for i in range(instances):
            division_free = i % 3 == 0
            phi = make_instance(division_free)
            if division_free:
                verdict = check_valid(S, phi)
                if isinstance(verdict, Refuted):
                    add(_verdict_entry(name, verdict))
                    return
            witness = _never_refuted(S, phi)
            checked += 1
            if witness is not None:
                add(
                    SuiteEntry(
                        name,
                        "fail",
                        witness=_witness_json(witness),
                        status=DENIAL_HOLDS.value,
                    )
                )
                return
        add(SuiteEntry(name, "pass", samples=checked))

    def p3_instance(df):
        t1, t2 = rt(allow_div=not df), rt(allow_div=not df)
        return SImp(
            _conj([_defined(t1), _defined(t2)]),
            SImp(Eq(t1, t2), Eq(t2, t1)),
        )

    def p4_instance(df):
        t1, t2, t3 = (rt(allow_div=not df) for _ in range(3))
        return SImp(
            _conj([_defined(t1), _defined(t2), _defined(t3)]),
            SImp(SAnd(Eq(t1, t2), Eq(t2, t3)), Eq(t1, t3)),
        )

    def p5_instance(df):
        t1, t2 = rt(allow_div=not df), rt(allow_div=not df)
        f = rng.choice(["neg", "add", "mul"])
        if f == "neg":
            return SImp(_defined(t1), _defined(Neg(t1)))
        node = Add(t1, t2) if f == "add" else Mul(t1, t2)
        return SImp(_conj([_defined(t1), _defined(t2)]), _defined(node))

    def p6_instance(df):
        t1, t2 = rt(allow_div=not df), rt(allow_div=not df)
        ops = ["neg", "add", "mul"] if df else ["neg", "add", "mul", "frac"]
        f = rng.choice(ops)
        if f == "neg":
            return SImp(_defined(Neg(t1)), _defined(t1))
        node = {"add": Add, "mul": Mul, "frac": Frac}[f](t1, t2)
        return SImp(_defined(node), _conj([_defined(t1), _defined(t2)]))

    def p7_instance(df):
        t1, t2 = rt(allow_div=not df), rt(allow_div=not df)
        r1, r2 = _equal_variant(rng, t1), _equal_variant(rng, t2)
        ops = ["neg", "add", "mul"] if df else ["neg", "add", "mul", "frac"]
        f = rng.choice(ops)
        if f == "neg":
            return SImp(
                SAnd(_defined(Neg(t1)), Eq(t1, r1)), Eq(Neg(t1), Neg(r1))
            )
        ctor = {"add": Add, "mul": Mul, "frac": Frac}[f]
        return SImp(
            SAnd(_defined(ctor(t1, t2)), _conj([Eq(t1, r1), Eq(t2, r2)])),
            Eq(ctor(t1, t2), ctor(r1, r2)),
        )

    def a1_instance(df):
        body = random_formula(rng, 2, variables=("x", "y"), allow_div=not df)
        t = random_term(rng, 3, variables=("x", "y", "z"), allow_div=not df)
        return SImp(
            SAnd(_defined(t), ForallP("x", body)), substitute(body, "x", t)
        )

    schema_entry("p3", p3_instance)
    schema_entry("p4", p4_instance)
    schema_entry("p5", p5_instance)
    schema_entry("p6", p6_instance)
    schema_entry("p7", p7_instance)
    schema_entry("a1", a1_instance)

    # inference rules: whenever every premise is valid, the conclusion is
    def rule_entry(name, make_instance):
        nonvacuous = 0
        for _ in range(instances):
            premises, conclusion = make_instance()
            if all(isinstance(check_valid(S, p), Valid) for p in premises):
                nonvacuous += 1
                verdict = check_valid(S, conclusion)
                if isinstance(verdict, Refuted):
                    entry = _verdict_entry(name, verdict)
                    entry.notes = f"conclusion refuted after {nonvacuous} applicable instances"
                    add(entry)
                    return
        add(
            SuiteEntry(
                name,
                "pass",
                samples=instances,
                notes=f"premises held on {nonvacuous} instances",
            )
        )

    def random_context(hole: Formula):
        frame = random_formula(rng, 2, variables=("x", "y"))
        path = rng.choice(subformula_paths(frame))
        return replace_subformula(frame, path, hole)

    def i1_instance():
        if rng.random() < 0.5:
            t = rt(3, allow_div=False)
            r = _equal_variant(rng, t)
        else:
            t, r = rt(3), rt(3)
        s = _equal_variant(rng, r) if rng.random() < 0.7 else rt(3)
        frame = random_formula(rng, 2, variables=("x", "y"))
        path = rng.choice(subformula_paths(frame))
        c_tr = replace_subformula(frame, path, Eq(t, r))
        c_ts = replace_subformula(frame, path, Eq(t, s))
        return [c_tr, Eq(r, s)], c_ts

    def i2_instance():
        phi = (
            rng.choice(valid_pool)
            if rng.random() < 0.5
            else random_formula(rng, 2, variables=("x", "y"))
        )
        if rng.random() < 0.7:
            psi = rng.choice(
                [
                    phi,
                    Not(Not(phi)),
                    SAnd(phi, TrueC()),
                    SAnd(TrueC(), phi),
                    SOr(phi, FalseC()),
                ]
            )
        else:
            psi = random_formula(rng, 2, variables=("x", "y"))
        frame = random_formula(rng, 2, variables=("x", "y"))
        path = rng.choice(subformula_paths(frame))
        c_phi = replace_subformula(frame, path, phi)
        c_psi = replace_subformula(frame, path, psi)
        # the identity premise is checked pointwise, not just for holding
        ident = EqIdentity(phi, psi)
        ident_ok = isinstance(check_identity(S, ident), Valid)
        if not ident_ok:
            return [FalseC()], TrueC()  # vacuous: premise cannot hold
        return [c_phi], c_psi

    def i3_instance():
        phi = (
            rng.choice(valid_pool)
            if rng.random() < 0.5
            else random_formula(rng, 2, variables=("x", "y"))
        )
        if rng.random() < 0.5:
            psi = SOr(phi, random_formula(rng, 1, variables=("x", "y")))
        else:
            psi = random_formula(rng, 2, variables=("x", "y"))
        return [phi, SImp(phi, psi)], psi

    def i4_instance():
        def pick():
            if rng.random() < 0.6:
                return rng.choice(valid_pool)
            return random_formula(rng, 2, variables=("x", "y"))

        phi, psi = pick(), pick()
        return [phi, psi], SAnd(phi, psi)

    def i5_instance():
        phi = random_formula(rng, 2, variables=("x", "y"), allow_div=False)
        if rng.random() < 0.6:
            psi = SOr(phi, random_formula(rng, 1, variables=("x", "y"), allow_div=False))
        else:
            psi = random_formula(rng, 2, variables=("x", "y"), allow_div=False)
        xi = random_formula(rng, 2, variables=("x", "y"), allow_div=False)
        premises = [SImp(phi, psi), SOr(psi, Not(psi)), SOr(xi, Not(xi))]
        return premises, SImp(SOr(phi, xi), SOr(psi, xi))

    rule_entry("i1", i1_instance)
    rule_entry("i2", i2_instance)
    rule_entry("i3", i3_instance)
    rule_entry("i4", i4_instance)
    rule_entry("i5", i5_instance)

    # the defined-and-equal relation is a congruence for the total operations
    def congruence_entry():
        for _ in range(instances):
            t = rt(3, allow_div=False)
            r = _equal_variant(rng, t)
            u = rt(3, allow_div=False)
            v = _equal_variant(rng, u)
            premises = [_defined(t), _defined(u), Eq(t, r), Eq(u, v)]
            conclusions = [
                Eq(Neg(t), Neg(r)),
                Eq(Add(t, u), Add(r, v)),
                Eq(Mul(t, u), Mul(r, v)),
                Eq(r, t),  # symmetry on the relation
            ]
            if not all(isinstance(check_valid(S, p), Valid) for p in premises):
                continue
            for phi in conclusions:
                verdict = check_valid(S, phi)
                if isinstance(verdict, Refuted):
                    add(_verdict_entry("congruence", verdict))
                    return
        add(SuiteEntry("congruence", "pass", samples=instances))

    congruence_entry()
    return report.recompute_ok()
