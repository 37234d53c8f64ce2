"""Seeded random generation of terms and formulae.

Used by the soundness suite and by the randomised tests; everything takes an
explicit random.Random so runs are reproducible bit for bit.
"""

from __future__ import annotations

import random

from .syntax import (
    Add,
    Eq,
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
)

_DEFAULT_VARS = ("x", "y", "z")


def random_term(
    rng: random.Random,
    max_depth: int,
    variables=_DEFAULT_VARS,
    allow_div: bool = True,
) -> Term:
    if max_depth <= 0 or rng.random() < 0.2:
        roll = rng.random()
        if roll < 0.2:
            return Zero()
        if roll < 0.4:
            return One()
        return Var(rng.choice(variables))
    ops = ["neg", "add", "mul"]
    if allow_div:
        ops.append("frac")
    op = rng.choice(ops)
    if op == "neg":
        return Neg(random_term(rng, max_depth - 1, variables, allow_div))
    left = random_term(rng, max_depth - 1, variables, allow_div)
    right = random_term(rng, max_depth - 1, variables, allow_div)
    if op == "add":
        return Add(left, right)
    if op == "mul":
        return Mul(left, right)
    return Frac(left, right)


def random_formula(
    rng: random.Random,
    max_depth: int,
    variables=("x", "y"),
    quantifier_depth: int = 0,
    term_depth: int = 2,
    allow_div: bool = True,
) -> Formula:
    if max_depth <= 0:
        roll = rng.random()
        if roll < 0.1:
            return TrueC()
        if roll < 0.2:
            return FalseC()
        return Eq(
            random_term(rng, term_depth, variables, allow_div),
            random_term(rng, term_depth, variables, allow_div),
        )
    ops = ["atom", "not", "and", "or", "imp"]
    if quantifier_depth > 0:
        ops += ["forall", "exists"]
    op = rng.choice(ops)
    if op == "atom":
        return random_formula(rng, 0, variables, 0, term_depth, allow_div)
    if op == "not":
        return Not(
            random_formula(rng, max_depth - 1, variables, quantifier_depth, term_depth, allow_div)
        )
    if op in ("forall", "exists"):
        # shadowing an existing name is allowed
        var = rng.choice(variables)
        body = random_formula(
            rng, max_depth - 1, variables, quantifier_depth - 1, term_depth, allow_div
        )
        return ForallP(var, body) if op == "forall" else ExistsP(var, body)
    left = random_formula(
        rng, max_depth - 1, variables, quantifier_depth, term_depth, allow_div
    )
    right = random_formula(
        rng, max_depth - 1, variables, quantifier_depth, term_depth, allow_div
    )
    return {"and": SAnd, "or": SOr, "imp": SImp}[op](left, right)


# ---------------------------------------------------------------------------
# subformula addressing, for the replacement rules


def subformula_paths(f: Formula) -> list[tuple[int, ...]]:
    """Every position in the formula, root included, as child-index paths."""
    paths: list[tuple[int, ...]] = []

    def walk(g: Formula, path: tuple[int, ...]) -> None:
        paths.append(path)
        match g:
            case Not(b) | ForallP(_, b) | ExistsP(_, b):
                walk(b, path + (0,))
            case SAnd(l, r) | SOr(l, r) | SImp(l, r):
                walk(l, path + (0,))
                walk(r, path + (1,))

    walk(f, ())
    return paths


def subformula_at(f: Formula, path: tuple[int, ...]) -> Formula:
    for idx in path:
        match f:
            case Not(b) | ForallP(_, b) | ExistsP(_, b):
                f = b
            case SAnd(l, r) | SOr(l, r) | SImp(l, r):
                f = l if idx == 0 else r
            case _:
                raise IndexError(f"no child {idx} in {f!r}")
    return f


def replace_subformula(f: Formula, path: tuple[int, ...], new: Formula) -> Formula:
    if not path:
        return new
    idx, rest = path[0], path[1:]
    match f:
        case Not(b):
            return Not(replace_subformula(b, rest, new))
        case ForallP(v, b):
            return ForallP(v, replace_subformula(b, rest, new))
        case ExistsP(v, b):
            return ExistsP(v, replace_subformula(b, rest, new))
        case SAnd(l, r):
            return SAnd(replace_subformula(l, rest, new), r) if idx == 0 else SAnd(
                l, replace_subformula(r, rest, new)
            )
        case SOr(l, r):
            return SOr(replace_subformula(l, rest, new), r) if idx == 0 else SOr(
                l, replace_subformula(r, rest, new)
            )
        case SImp(l, r):
            return SImp(replace_subformula(l, rest, new), r) if idx == 0 else SImp(
                l, replace_subformula(r, rest, new)
            )
    raise IndexError(f"no child {idx} in {f!r}")
