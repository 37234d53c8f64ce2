"""Concrete carriers with partial division, and their derived structures.

Four kinds of structure are provided: the exact rationals and the prime
fields GF(p), both with division undefined exactly on zero denominators;
the Suppes-Ono totalisation (x/0 = 0) of either; and the bot-enlargement,
which adds an absorptive element ``bot`` and makes every operation total.
All structures are immutable values, so structural equality doubles as the
round-trip check for enlargement and its inverse.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Union

from .errors import (
    AlreadyEnlarged,
    AlreadyTotal,
    CarrierTooSmall,
    InfiniteCarrier,
    InvalidStructureSpec,
    NotEnlarged,
    SignatureMismatch,
    UnboundVariable,
)
from .syntax import Add, Bot, Frac, Mul, Neg, One, Term, Var, Zero

_MAX_PRIME = 2**31


@dataclass(frozen=True)
class Fp:
    """A residue in GF(p); always reduced into [0, p)."""

    residue: int
    modulus: int

    def __str__(self):
        return str(self.residue)


@dataclass(frozen=True)
class BotV:
    """The absorptive element of an enlarged carrier."""

    def __str__(self):
        return "bot"


BOT = BotV()

Value = Union[Fraction, Fp, BotV]

Valuation = dict  # identifier -> Value


def value_str(v: Value) -> str:
    return str(v)


@dataclass(frozen=True)
class EvalResult:
    """Defined(value) or undefined; undefined never escapes an enlargement."""

    value: Optional[Value] = None

    @property
    def defined(self) -> bool:
        return self.value is not None


UNDEFINED = EvalResult(None)


# ---------------------------------------------------------------------------
# structures


class MeadowStructure:
    """A carrier plus operations; subclasses are frozen dataclasses."""

    finite = False
    enlarged = False
    total = False

    @property
    def carrier_size(self) -> Optional[int]:
        return None

    def elements(self) -> Iterator[Value]:
        raise InfiniteCarrier(f"carrier of {self.specifier()} is infinite")

    def specifier(self) -> str:
        raise NotImplementedError

    def sample(self, rng: random.Random) -> Value:
        raise NotImplementedError

    def __str__(self):
        return self.specifier()


@dataclass(frozen=True)
class Rationals(MeadowStructure):
    """Exact rational arithmetic; x/0 undefined."""

    @cached_property
    def zero(self) -> Fraction:
        return Fraction(0)

    @cached_property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return None if b == 0 else a / b

    def specifier(self):
        return "q"

    def sample(self, rng):
        # zero comes up often so undefinedness gets exercised
        if rng.random() < 0.125:
            return Fraction(0)
        return Fraction(rng.randint(-(10**6), 10**6), rng.randint(1, 10**6))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField(MeadowStructure):
    """GF(p) with a/b = a * b^(p-2) for b != 0; a/0 undefined."""

    p: int

    finite = True

    def __post_init__(self):
        if self.p > _MAX_PRIME:
            raise ValueError(f"prime {self.p} exceeds the 2**31 cap")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def carrier_size(self):
        return self.p

    @cached_property
    def _carrier(self) -> tuple[Fp, ...]:
        return tuple(Fp(i, self.p) for i in range(self.p))

    def elements(self):
        return iter(self._carrier)

    @cached_property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @cached_property
    def one(self) -> Fp:
        return Fp(1, self.p)

    def add(self, a, b):
        return self._carrier[(a.residue + b.residue) % self.p]

    def mul(self, a, b):
        return self._carrier[(a.residue * b.residue) % self.p]

    def neg(self, a):
        return self._carrier[-a.residue % self.p]

    def div(self, a, b):
        if b.residue == 0:
            return None
        return self._carrier[(a.residue * pow(b.residue, self.p - 2, self.p)) % self.p]

    def specifier(self):
        return f"gf:{self.p}"

    def sample(self, rng):
        return self._carrier[rng.randrange(self.p)]


@dataclass(frozen=True)
class SuppesOno(MeadowStructure):
    """The inner structure with division totalised by x/0 = 0."""

    inner: MeadowStructure

    total = True

    @property
    def finite(self):
        return self.inner.finite

    @property
    def carrier_size(self):
        return self.inner.carrier_size

    def elements(self):
        return self.inner.elements()

    @property
    def zero(self):
        return self.inner.zero

    @property
    def one(self):
        return self.inner.one

    def add(self, a, b):
        return self.inner.add(a, b)

    def mul(self, a, b):
        return self.inner.mul(a, b)

    def neg(self, a):
        return self.inner.neg(a)

    def div(self, a, b):
        r = self.inner.div(a, b)
        return self.inner.zero if r is None else r

    def specifier(self):
        return f"tot0:{self.inner.specifier()}"

    def sample(self, rng):
        return self.inner.sample(rng)


@dataclass(frozen=True)
class Enlargement(MeadowStructure):
    """The inner carrier plus ``bot``; bot absorbs and x/0 = bot."""

    inner: MeadowStructure

    enlarged = True
    total = True

    @property
    def finite(self):
        return self.inner.finite

    @property
    def carrier_size(self):
        n = self.inner.carrier_size
        return None if n is None else n + 1

    def elements(self):
        return itertools.chain(self.inner.elements(), (BOT,))

    @property
    def zero(self):
        return self.inner.zero

    @property
    def one(self):
        return self.inner.one

    def add(self, a, b):
        if isinstance(a, BotV) or isinstance(b, BotV):
            return BOT
        return self.inner.add(a, b)

    def mul(self, a, b):
        if isinstance(a, BotV) or isinstance(b, BotV):
            return BOT
        return self.inner.mul(a, b)

    def neg(self, a):
        if isinstance(a, BotV):
            return BOT
        return self.inner.neg(a)

    def div(self, a, b):
        if isinstance(a, BotV) or isinstance(b, BotV):
            return BOT
        r = self.inner.div(a, b)
        return BOT if r is None else r

    def specifier(self):
        return f"enl:{self.inner.specifier()}"

    def sample(self, rng):
        if rng.random() < 1 / 16:
            return BOT
        return self.inner.sample(rng)


# ---------------------------------------------------------------------------
# constructors and the specifier grammar


def tot0(structure: MeadowStructure) -> MeadowStructure:
    if structure.total or structure.enlarged:
        raise AlreadyTotal(f"{structure.specifier()} already has total division")
    return SuppesOno(structure)


def enl(structure: MeadowStructure) -> MeadowStructure:
    if structure.enlarged:
        raise AlreadyEnlarged(f"{structure.specifier()} is already enlarged")
    return Enlargement(structure)


def pdt(structure: MeadowStructure) -> MeadowStructure:
    if not structure.enlarged:
        raise NotEnlarged(f"{structure.specifier()} has no bot to strip")
    size = structure.carrier_size
    if size is not None and size <= 1:
        raise CarrierTooSmall(f"{structure.specifier()} has no proper elements")
    return structure.inner


def parse_structure(spec: str) -> MeadowStructure:
    spec = spec.strip()
    if spec == "q":
        return Rationals()
    if spec.startswith("gf:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise InvalidStructureSpec(spec) from None
        return PrimeField(p)
    if spec.startswith("tot0:"):
        return tot0(parse_structure(spec[5:]))
    if spec.startswith("enl:"):
        return enl(parse_structure(spec[4:]))
    raise InvalidStructureSpec(spec)


def parse_value(structure: MeadowStructure, text: str) -> Value:
    """Parse a CLI binding: rationals as a/b or n, field elements as residues."""
    text = text.strip()
    if text == "bot":
        if structure.enlarged:
            return BOT
        raise SignatureMismatch("'bot' is only a value of enlarged structures")
    base = structure
    while isinstance(base, (SuppesOno, Enlargement)):
        base = base.inner
    if isinstance(base, Rationals):
        return Fraction(text)
    return base._carrier[int(text) % base.p]


# ---------------------------------------------------------------------------
# term evaluation


def eval_term(structure: MeadowStructure, valuation: Valuation, term: Term) -> EvalResult:
    """Strict bottom-up evaluation: any undefined subresult is fatal."""
    v = _eval(structure, valuation, term)
    return UNDEFINED if v is None else EvalResult(v)


def _eval(S: MeadowStructure, sigma: Valuation, t: Term) -> Optional[Value]:
    # hot path: dispatch on the exact node class, most frequent first
    cls = t.__class__
    if cls is Mul:
        vl = _eval(S, sigma, t.left)
        if vl is None:
            return None
        vr = _eval(S, sigma, t.right)
        return None if vr is None else S.mul(vl, vr)
    if cls is Add:
        vl = _eval(S, sigma, t.left)
        if vl is None:
            return None
        vr = _eval(S, sigma, t.right)
        return None if vr is None else S.add(vl, vr)
    if cls is Var:
        try:
            return sigma[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if cls is One:
        return S.one
    if cls is Zero:
        return S.zero
    if cls is Frac:
        vn = _eval(S, sigma, t.num)
        if vn is None:
            return None
        vd = _eval(S, sigma, t.den)
        return None if vd is None else S.div(vn, vd)
    if cls is Neg:
        va = _eval(S, sigma, t.arg)
        return None if va is None else S.neg(va)
    if cls is Bot:
        if not S.enlarged:
            raise SignatureMismatch("'bot' evaluated in a non-enlarged structure")
        return BOT
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# valuation streams


def enumerate_valuations(structure: MeadowStructure, names) -> Iterator[Valuation]:
    """All |carrier|^|names| valuations, first name varying fastest.

    An empty name list yields the single empty valuation even over an
    infinite carrier.
    """
    names = list(names)
    if not names:
        yield {}
        return
    if not structure.finite:
        raise InfiniteCarrier(
            f"cannot enumerate valuations over {structure.specifier()}"
        )
    elems = list(structure.elements())
    for combo in itertools.product(elems, repeat=len(names)):
        yield dict(zip(names, reversed(combo)))


def sample_valuations(
    structure: MeadowStructure, names, n: int, seed: int
) -> Iterator[Valuation]:
    """n valuations from a deterministic seeded generator (repeats allowed)."""
    if n < 1:
        raise ValueError("sample count must be at least 1")
    names = list(names)
    rng = random.Random(seed)
    for _ in range(n):
        yield {name: structure.sample(rng) for name in names}
