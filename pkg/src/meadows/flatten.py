"""Conditional fracterm flattening.

Every term t is rewritten into a division-free guard s and a flat fracterm
p/q (one division, division-free sides) such that whenever s is nonzero, t is
defined and equal to p/q, and whenever s is zero, t is undefined.  The
construction is purely structural and performs no algebraic simplification:
unit factors are kept so the output mirrors the inductive cases exactly.
Guard products associate to the left.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SignatureMismatch
from .syntax import Add, Frac, Mul, Neg, One, Term, Var, Zero, contains_bot


@dataclass(frozen=True)
class FlatteningResult:
    guard: Term
    numerator: Term
    denominator: Term

    @property
    def fracterm(self) -> Frac:
        return Frac(self.numerator, self.denominator)


def flatten(t: Term) -> FlatteningResult:
    if contains_bot(t):
        raise SignatureMismatch("flattening is defined for the plain signature")
    s, n, d = _flatten(t)
    return FlatteningResult(s, n, d)


def _flatten(t: Term) -> tuple[Term, Term, Term]:
    match t:
        case Zero() | One() | Var(_):
            return One(), t, One()
        case Neg(u):
            s, n, d = _flatten(u)
            return s, Neg(n), d
        case Add(u, v):
            su, nu, du = _flatten(u)
            sv, nv, dv = _flatten(v)
            return (
                Mul(su, sv),
                Add(Mul(nu, dv), Mul(du, nv)),
                Mul(du, dv),
            )
        case Mul(u, v):
            su, nu, du = _flatten(u)
            sv, nv, dv = _flatten(v)
            return Mul(su, sv), Mul(nu, nv), Mul(du, dv)
        case Frac(u, v):
            su, nu, du = _flatten(u)
            sv, nv, dv = _flatten(v)
            return Mul(Mul(su, sv), nv), Mul(nu, dv), Mul(du, nv)
    raise TypeError(f"not a term: {t!r}")


def prop34_fracterm(t: Term) -> Frac:
    """The guard-absorbing flat form (p*s)/(q*s).

    Matches t's satisfaction status against any term under every valuation:
    equal when the guard is nonzero, undefined on both sides when it is zero.
    """
    r = flatten(t)
    return Frac(Mul(r.numerator, r.guard), Mul(r.denominator, r.guard))


def division_free(t: Term) -> bool:
    match t:
        case Frac(_, _):
            return False
        case Neg(a):
            return division_free(a)
        case Add(l, r) | Mul(l, r):
            return division_free(l) and division_free(r)
        case _:
            return True


def count_fracs(t: Term) -> int:
    match t:
        case Frac(n, d):
            return 1 + count_fracs(n) + count_fracs(d)
        case Neg(a):
            return count_fracs(a)
        case Add(l, r) | Mul(l, r):
            return count_fracs(l) + count_fracs(r)
        case _:
            return 0


def cancel_unit_factors(t: Term) -> Term:
    """Display-only cleanup: drop 1* and *1 factors recursively."""
    match t:
        case Neg(a):
            return Neg(cancel_unit_factors(a))
        case Add(l, r):
            return Add(cancel_unit_factors(l), cancel_unit_factors(r))
        case Mul(l, r):
            left = cancel_unit_factors(l)
            right = cancel_unit_factors(r)
            if left == One():
                return right
            if right == One():
                return left
            return Mul(left, right)
        case Frac(n, d):
            return Frac(cancel_unit_factors(n), cancel_unit_factors(d))
        case _:
            return t
