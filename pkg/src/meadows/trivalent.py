"""The three-element short-circuit algebra {T, F, U} and its law suite.

Connectives evaluate left to right and never look at the right operand when
the left one decides the result; U (undefined) on the left is absorbing.
Laws are pairs of connective trees over metavariables, checked by exhaustive
interpretation rather than hard-coded truth tables, so new laws are cheap to
add.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum


class TriValue(Enum):
    # Definition order is the canonical iteration order.
    TT = "T"
    FF = "F"
    UU = "U"

    def __str__(self):
        return self.value


TT, FF, UU = TriValue.TT, TriValue.FF, TriValue.UU


def tri_not(a: TriValue) -> TriValue:
    if a is TT:
        return FF
    if a is FF:
        return TT
    return UU


def tri_and(a: TriValue, b: TriValue) -> TriValue:
    if a is FF:
        return FF
    if a is UU:
        return UU
    return b


def tri_or(a: TriValue, b: TriValue) -> TriValue:
    if a is TT:
        return TT
    if a is UU:
        return UU
    return b


def tri_imp(a: TriValue, b: TriValue) -> TriValue:
    return tri_or(tri_not(a), b)


# ---------------------------------------------------------------------------
# connective trees over metavariables


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PConst:
    value: TriValue


@dataclass(frozen=True)
class PNot:
    arg: "PropTerm"


@dataclass(frozen=True)
class PAnd:
    left: "PropTerm"
    right: "PropTerm"


@dataclass(frozen=True)
class POr:
    left: "PropTerm"
    right: "PropTerm"


@dataclass(frozen=True)
class PImp:
    left: "PropTerm"
    right: "PropTerm"


PropTerm = PVar | PConst | PNot | PAnd | POr | PImp


def eval_prop(t: PropTerm, env: dict[str, TriValue]) -> TriValue:
    match t:
        case PVar(name):
            return env[name]
        case PConst(v):
            return v
        case PNot(a):
            return tri_not(eval_prop(a, env))
        case PAnd(l, r):
            return tri_and(eval_prop(l, env), eval_prop(r, env))
        case POr(l, r):
            return tri_or(eval_prop(l, env), eval_prop(r, env))
        case PImp(l, r):
            return tri_imp(eval_prop(l, env), eval_prop(r, env))
    raise TypeError(f"not a connective tree: {t!r}")


def prop_metavars(t: PropTerm) -> list[str]:
    out: list[str] = []
    _metavars(t, out)
    return out


def _metavars(t: PropTerm, out: list[str]) -> None:
    match t:
        case PVar(name):
            if name not in out:
                out.append(name)
        case PNot(a):
            _metavars(a, out)
        case PAnd(l, r) | POr(l, r) | PImp(l, r):
            _metavars(l, out)
            _metavars(r, out)


@dataclass(frozen=True)
class Law:
    name: str
    lhs: PropTerm
    rhs: PropTerm
    expect: str = "pass"  # "pass" or "fail"


def check_law(law: Law) -> dict[str, TriValue] | None:
    """Return the first refuting assignment, or None when the law holds.

    Assignments run with the first metavariable varying fastest, each
    variable cycling T, F, U.
    """
    names = prop_metavars(law.lhs)
    for name in prop_metavars(law.rhs):
        if name not in names:
            names.append(name)
    values = list(TriValue)
    for combo in itertools.product(values, repeat=len(names)):
        env = dict(zip(names, reversed(combo)))
        if eval_prop(law.lhs, env) is not eval_prop(law.rhs, env):
            return env
    return None


# ---------------------------------------------------------------------------
# the law suite


def _v(name: str) -> PVar:
    return PVar(name)


_T, _F = PConst(TT), PConst(FF)
_x, _y, _z = _v("x"), _v("y"), _v("z")

LAWS: list[Law] = [
    Law("e1", _F, PNot(_T)),
    Law("e2", POr(_x, _y), PNot(PAnd(PNot(_x), PNot(_y)))),
    Law("e3", PAnd(_T, _x), _x),
    Law("e4", PAnd(_x, POr(_x, _y)), _x),
    Law("e5", PAnd(POr(_x, _y), _z), POr(PAnd(PNot(_x), PAnd(_y, _z)), PAnd(_x, _z))),
    Law("e6", POr(PAnd(_x, _y), PAnd(_y, _x)), POr(PAnd(_y, _x), PAnd(_x, _y))),
    Law("e7", PImp(_x, _y), POr(PNot(_x), _y)),
    Law("dne", PNot(PNot(_x)), _x),
    Law("Ia", PAnd(_x, _T), _x),
    Law("Ib", POr(_T, _x), _T),
    Law("II", PAnd(PAnd(_x, _y), _z), PAnd(_x, PAnd(_y, _z))),
    Law("III", PAnd(_x, PAnd(_y, _x)), PAnd(_x, _y)),
    Law("IV", PAnd(_x, POr(_y, _z)), POr(PAnd(_x, _y), PAnd(_x, _z))),
    Law("V", PAnd(_x, PNot(_x)), PAnd(PNot(_x), _x)),
    Law("VI", PImp(PAnd(_x, _y), _z), PImp(_x, PImp(_y, _z))),
    # duals of (I)-(V): swap the connectives and the constants
    Law("Ia'", POr(_x, _F), _x),
    Law("Ib'", PAnd(_F, _x), _F),
    Law("II'", POr(POr(_x, _y), _z), POr(_x, POr(_y, _z))),
    Law("III'", POr(_x, POr(_y, _x)), POr(_x, _y)),
    Law("IV'", POr(_x, PAnd(_y, _z)), PAnd(POr(_x, _y), POr(_x, _z))),
    Law("V'", POr(_x, PNot(_x)), POr(PNot(_x), _x)),
    # refutation demos: these must fail, witnessing that the algebra is
    # genuinely three-valued and the disjunction is not commutative
    Law("or-commutativity", POr(_x, _y), POr(_y, _x), expect="fail"),
    Law("and-right-false", PAnd(_x, _F), _F, expect="fail"),
]


@dataclass
class LawResult:
    law: str
    status: str  # "pass" or "fail"
    counterexample: dict[str, TriValue] | None = None
    expect: str = "pass"

    @property
    def as_expected(self) -> bool:
        return self.status == self.expect

    def to_json(self) -> dict:
        entry: dict = {"law": self.law, "status": self.status}
        if self.counterexample is not None:
            entry["counterexample"] = {k: str(v) for k, v in self.counterexample.items()}
        return entry


@dataclass
class EqclReport:
    results: list[LawResult]

    @property
    def ok(self) -> bool:
        return all(r.as_expected for r in self.results)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]


def check_eqcl_suite(laws: list[Law] | None = None) -> EqclReport:
    """Exhaustively evaluate every law; failures are data, not errors."""
    results = []
    for law in LAWS if laws is None else laws:
        witness = check_law(law)
        if witness is None:
            results.append(LawResult(law.name, "pass", None, law.expect))
        else:
            results.append(LawResult(law.name, "fail", witness, law.expect))
    return EqclReport(results)
