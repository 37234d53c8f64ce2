"""ASTs, parser and pretty-printer for terms and sequential formulae.

Terms are built from 0, 1, variables, negation, addition, multiplication and
fraction formation; the enlarged signature adds the absorptive constant
``bot``.  Formulae combine partial-equality atoms with the short-circuit
connectives ``&&``, ``||``, ``->``, negation and the quantifiers
``forall x.`` / ``exists x.``.  ``t != r`` is sugar for ``!(t == r)`` and
integer literals n >= 2 are sugar for left-nested sums of 1; neither survives
in the AST.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ParseError, SignatureError


class Signature(Enum):
    """Whether ``bot`` belongs to the term language."""

    PLAIN = "plain"
    ENLARGED = "enlarged"


RESERVED = frozenset({"T", "F", "forall", "exists", "bot"})


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Frac:
    num: "Term"
    den: "Term"


Term = Zero | One | Bot | Var | Neg | Add | Mul | Frac


# ---------------------------------------------------------------------------
# formulae


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
class Not:
    body: "Formula"


@dataclass(frozen=True)
class SAnd:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class SOr:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class SImp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForallP:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsP:
    var: str
    body: "Formula"


Formula = TrueC | FalseC | Eq | Not | SAnd | SOr | SImp | ForallP | ExistsP


@dataclass(frozen=True)
class EqIdentity:
    """An identity between two formulae: same satisfaction status everywhere."""

    left: Formula
    right: Formula


# ---------------------------------------------------------------------------
# signature and variable queries


def contains_bot(t: Term) -> bool:
    match t:
        case Bot():
            return True
        case Neg(a):
            return contains_bot(a)
        case Add(l, r) | Mul(l, r):
            return contains_bot(l) or contains_bot(r)
        case Frac(n, d):
            return contains_bot(n) or contains_bot(d)
        case _:
            return False


def formula_contains_bot(f: Formula) -> bool:
    match f:
        case Eq(l, r):
            return contains_bot(l) or contains_bot(r)
        case Not(b) | ForallP(_, b) | ExistsP(_, b):
            return formula_contains_bot(b)
        case SAnd(l, r) | SOr(l, r) | SImp(l, r):
            return formula_contains_bot(l) or formula_contains_bot(r)
        case _:
            return False


def term_signature(t: Term) -> Signature:
    return Signature.ENLARGED if contains_bot(t) else Signature.PLAIN


def free_term_vars(t: Term) -> list[str]:
    """Free variables in first-occurrence order (terms bind nothing)."""
    out: list[str] = []
    _term_vars(t, out)
    return out


def _term_vars(t: Term, out: list[str]) -> None:
    match t:
        case Var(name):
            if name not in out:
                out.append(name)
        case Neg(a):
            _term_vars(a, out)
        case Add(l, r) | Mul(l, r):
            _term_vars(l, out)
            _term_vars(r, out)
        case Frac(n, d):
            _term_vars(n, out)
            _term_vars(d, out)


def free_formula_vars(f: Formula) -> list[str]:
    """Free variables in first-occurrence order; quantifiers bind lexically."""
    out: list[str] = []
    _formula_vars(f, frozenset(), out)
    return out


def _formula_vars(f: Formula, bound: frozenset[str], out: list[str]) -> None:
    match f:
        case Eq(l, r):
            for name in free_term_vars(l) + free_term_vars(r):
                if name not in bound and name not in out:
                    out.append(name)
        case Not(b):
            _formula_vars(b, bound, out)
        case SAnd(l, r) | SOr(l, r) | SImp(l, r):
            _formula_vars(l, bound, out)
            _formula_vars(r, bound, out)
        case ForallP(v, b) | ExistsP(v, b):
            _formula_vars(b, bound | {v}, out)


def subst_term(t: Term, name: str, replacement: Term) -> Term:
    match t:
        case Var(n) if n == name:
            return replacement
        case Neg(a):
            return Neg(subst_term(a, name, replacement))
        case Add(l, r):
            return Add(subst_term(l, name, replacement), subst_term(r, name, replacement))
        case Mul(l, r):
            return Mul(subst_term(l, name, replacement), subst_term(r, name, replacement))
        case Frac(n_, d):
            return Frac(subst_term(n_, name, replacement), subst_term(d, name, replacement))
        case _:
            return t


def substitute(f: Formula, name: str, replacement: Term) -> Formula:
    """Replace free occurrences of a variable by a term.

    Callers must ensure no variable of the replacement is bound inside f;
    quantifiers shadowing the substituted name stop the descent.
    """
    match f:
        case Eq(l, r):
            return Eq(subst_term(l, name, replacement), subst_term(r, name, replacement))
        case Not(b):
            return Not(substitute(b, name, replacement))
        case SAnd(l, r):
            return SAnd(substitute(l, name, replacement), substitute(r, name, replacement))
        case SOr(l, r):
            return SOr(substitute(l, name, replacement), substitute(r, name, replacement))
        case SImp(l, r):
            return SImp(substitute(l, name, replacement), substitute(r, name, replacement))
        case ForallP(v, b):
            return f if v == name else ForallP(v, substitute(b, name, replacement))
        case ExistsP(v, b):
            return f if v == name else ExistsP(v, substitute(b, name, replacement))
        case _:
            return f


# ---------------------------------------------------------------------------
# tokenizer


_TWO_CHAR = ("==", "!=", "&&", "||", "->")
_SINGLE = "()+-*/!.="


@dataclass
class _Token:
    kind: str  # "ident", "kw", "int", "eof" or the literal symbol
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
            continue
        two = text[i : i + 2]
        if two in _TWO_CHAR:
            tokens.append(_Token(two, two, line, col))
            i += 2
            col += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "kw" if word in RESERVED else "ident"
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        if ch in _SINGLE:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# recursive-descent parser


class _Parser:
    def __init__(self, tokens: list[_Token], sig: Signature):
        self.toks = tokens
        self.pos = 0
        self.sig = sig

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def advance(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> None:
        tok = self.peek()
        found = tok.text or "end of input"
        opts = ", ".join(sorted(expected))
        err = ParseError(f"expected {opts}, found {found!r}", tok.line, tok.col, expected, found)
        err.pos = self.pos
        raise err

    def expect(self, kind: str) -> _Token:
        if self.peek().kind != kind:
            self.fail({kind})
        return self.advance()

    def expect_eof(self) -> None:
        if self.peek().kind != "eof":
            self.fail({"end of input"})

    # terms ----------------------------------------------------------------

    def term(self) -> Term:
        t = self.muldiv()
        while self.peek().kind in ("+", "-"):
            if self.advance().kind == "+":
                t = Add(t, self.muldiv())
            else:
                t = Add(t, Neg(self.muldiv()))
        return t

    def muldiv(self) -> Term:
        t = self.unary()
        while self.peek().kind in ("*", "/"):
            if self.advance().kind == "*":
                t = Mul(t, self.unary())
            else:
                t = Frac(t, self.unary())
        return t

    def unary(self) -> Term:
        if self.peek().kind == "-":
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return _int_literal(int(tok.text))
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "kw" and tok.text == "bot":
            if self.sig is not Signature.ENLARGED:
                raise SignatureError(
                    f"{tok.line}:{tok.col}: 'bot' requires the enlarged signature"
                )
            self.advance()
            return Bot()
        if tok.kind == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        self.fail({"number", "identifier", "(", "-", "bot"})

    # formulae ---------------------------------------------------------------

    def formula(self) -> Formula:
        return self.quant()

    def quant(self) -> Formula:
        tok = self.peek()
        if tok.kind == "kw" and tok.text in ("forall", "exists"):
            self.advance()
            name = self.expect("ident").text
            self.expect(".")
            body = self.quant()
            return ForallP(name, body) if tok.text == "forall" else ExistsP(name, body)
        return self.imp()

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "->":
            self.advance()
            return SImp(left, self.imp())
        return left

    def disj(self) -> Formula:
        t = self.conj()
        while self.peek().kind == "||":
            self.advance()
            t = SOr(t, self.conj())
        return t

    def conj(self) -> Formula:
        t = self.lit()
        while self.peek().kind == "&&":
            self.advance()
            t = SAnd(t, self.lit())
        return t

    def lit(self) -> Formula:
        tok = self.peek()
        if tok.kind == "!":
            self.advance()
            return Not(self.lit())
        if tok.kind == "kw" and tok.text == "T":
            self.advance()
            return TrueC()
        if tok.kind == "kw" and tok.text == "F":
            self.advance()
            return FalseC()
        if tok.kind == "(":
            # Ambiguous: parenthesised formula or parenthesised term opening a
            # relation. Try the relation; on failure rewind and reparse.
            save = self.pos
            try:
                return self.relation()
            except ParseError as first:
                self.pos = save
                try:
                    self.expect("(")
                    f = self.formula()
                    self.expect(")")
                    return f
                except ParseError as second:
                    raise second if getattr(second, "pos", 0) >= getattr(first, "pos", 0) else first
        return self.relation()

    def relation(self) -> Formula:
        left = self.term()
        tok = self.peek()
        if tok.kind == "==":
            self.advance()
            return Eq(left, self.term())
        if tok.kind == "!=":
            self.advance()
            return Not(Eq(left, self.term()))
        self.fail({"==", "!="})


def _int_literal(n: int) -> Term:
    if n == 0:
        return Zero()
    t: Term = One()
    for _ in range(n - 1):
        t = Add(t, One())
    return t


def parse_term(text: str, sig: Signature = Signature.PLAIN) -> Term:
    p = _Parser(_tokenize(text), sig)
    t = p.term()
    p.expect_eof()
    return t


def parse_formula(text: str, sig: Signature = Signature.PLAIN) -> Formula:
    p = _Parser(_tokenize(text), sig)
    f = p.formula()
    p.expect_eof()
    return f


def parse_identity(text: str, sig: Signature = Signature.PLAIN) -> EqIdentity:
    p = _Parser(_tokenize(text), sig)
    left = p.formula()
    p.expect("=")
    right = p.formula()
    p.expect_eof()
    return EqIdentity(left, right)


# ---------------------------------------------------------------------------
# printer
#
# Minimal parenthesisation with one convention: a binary child at the same
# precedence level as its parent is always parenthesised, so ``(1+1)+1``
# prints with the explicit grouping it carries in the AST.

_ATOM, _NEG, _MULDIV, _ADD = 4, 3, 2, 1


def print_term(t: Term) -> str:
    s, _ = _render_term(t)
    return s


def _render_term(t: Term) -> tuple[str, int]:
    match t:
        case Zero():
            return "0", _ATOM
        case One():
            return "1", _ATOM
        case Bot():
            return "bot", _ATOM
        case Var(name):
            return name, _ATOM
        case Neg(a):
            s, lvl = _render_term(a)
            if lvl < _NEG:
                s = f"({s})"
            return f"-{s}", _NEG
        case Add(l, r):
            return f"{_tchild(l, _ADD)}+{_tchild(r, _ADD)}", _ADD
        case Mul(l, r):
            return f"{_tchild(l, _MULDIV)}*{_tchild(r, _MULDIV)}", _MULDIV
        case Frac(n, d):
            return f"{_tchild(n, _MULDIV)}/{_tchild(d, _MULDIV)}", _MULDIV
    raise TypeError(f"not a term: {t!r}")


def _tchild(t: Term, parent_level: int) -> str:
    s, lvl = _render_term(t)
    return f"({s})" if lvl <= parent_level else s


_F_ATOM, _F_AND, _F_OR, _F_IMP, _F_QUANT = 4, 3, 2, 1, 0


def print_formula(f: Formula) -> str:
    s, _ = _render_formula(f)
    return s


def _render_formula(f: Formula) -> tuple[str, int]:
    match f:
        case TrueC():
            return "T", _F_ATOM
        case FalseC():
            return "F", _F_ATOM
        case Not(Eq(l, r)):
            return f"{print_term(l)} != {print_term(r)}", _F_ATOM
        case Eq(l, r):
            return f"{print_term(l)} == {print_term(r)}", _F_ATOM
        case Not(b):
            s, lvl = _render_formula(b)
            if lvl < _F_ATOM:
                s = f"({s})"
            return f"!{s}", _F_ATOM
        case SAnd(l, r):
            return f"{_fchild(l, _F_AND)} && {_fchild(r, _F_ATOM)}", _F_AND
        case SOr(l, r):
            return f"{_fchild(l, _F_OR)} || {_fchild(r, _F_AND)}", _F_OR
        case SImp(l, r):
            return f"{_fchild(l, _F_OR)} -> {_fchild(r, _F_IMP)}", _F_IMP
        case ForallP(v, b):
            return f"forall {v}. {_fchild(b, _F_QUANT)}", _F_QUANT
        case ExistsP(v, b):
            return f"exists {v}. {_fchild(b, _F_QUANT)}", _F_QUANT
    raise TypeError(f"not a formula: {f!r}")


def _fchild(f: Formula, min_level: int) -> str:
    s, lvl = _render_formula(f)
    return f"({s})" if lvl < min_level else s


def print_identity(ident: EqIdentity) -> str:
    return f"({print_formula(ident.left)}) = ({print_formula(ident.right)})"


# ---------------------------------------------------------------------------
# JSON views (used by the CLI)


def term_to_json(t: Term) -> dict:
    match t:
        case Zero():
            return {"node": "zero"}
        case One():
            return {"node": "one"}
        case Bot():
            return {"node": "bot"}
        case Var(name):
            return {"node": "var", "name": name}
        case Neg(a):
            return {"node": "neg", "arg": term_to_json(a)}
        case Add(l, r):
            return {"node": "add", "left": term_to_json(l), "right": term_to_json(r)}
        case Mul(l, r):
            return {"node": "mul", "left": term_to_json(l), "right": term_to_json(r)}
        case Frac(n, d):
            return {"node": "frac", "num": term_to_json(n), "den": term_to_json(d)}
    raise TypeError(f"not a term: {t!r}")


def formula_to_json(f: Formula) -> dict:
    match f:
        case TrueC():
            return {"node": "true"}
        case FalseC():
            return {"node": "false"}
        case Eq(l, r):
            return {"node": "eq", "left": term_to_json(l), "right": term_to_json(r)}
        case Not(b):
            return {"node": "not", "body": formula_to_json(b)}
        case SAnd(l, r):
            return {"node": "and", "left": formula_to_json(l), "right": formula_to_json(r)}
        case SOr(l, r):
            return {"node": "or", "left": formula_to_json(l), "right": formula_to_json(r)}
        case SImp(l, r):
            return {"node": "imp", "left": formula_to_json(l), "right": formula_to_json(r)}
        case ForallP(v, b):
            return {"node": "forall", "var": v, "body": formula_to_json(b)}
        case ExistsP(v, b):
            return {"node": "exists", "var": v, "body": formula_to_json(b)}
    raise TypeError(f"not a formula: {f!r}")
