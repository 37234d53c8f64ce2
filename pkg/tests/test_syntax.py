import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meadows.errors import ParseError, SignatureError
from meadows.generate import random_formula, random_term
from meadows.syntax import (
    Add,
    Bot,
    Eq,
    EqIdentity,
    ExistsP,
    FalseC,
    ForallP,
    Frac,
    Mul,
    Neg,
    Not,
    One,
    SAnd,
    SImp,
    SOr,
    Signature,
    TrueC,
    Var,
    Zero,
    contains_bot,
    free_formula_vars,
    free_term_vars,
    parse_formula,
    parse_identity,
    parse_term,
    print_formula,
    print_identity,
    print_term,
    substitute,
    term_signature,
)

x, y = Var("x"), Var("y")


class TestParseTerm:
    def test_self_fraction(self):
        assert parse_term("x/x") == Frac(x, x)

    def test_one_over_zero_is_a_term(self):
        assert parse_term("1/0") == Frac(One(), Zero())

    def test_integer_literals_desugar_left_nested(self):
        # 3 = (1+1)+1 by the desugaring rule; confirmed by print/re-parse
        t = parse_term("3")
        assert t == Add(Add(One(), One()), One())
        assert parse_term(print_term(t)) == t

    def test_zero_and_one_literals(self):
        assert parse_term("0") == Zero()
        assert parse_term("1") == One()

    def test_precedence_and_minus_desugar(self):
        assert parse_term("a - b") == Add(Var("a"), Neg(Var("b")))
        assert parse_term("x + y*z") == Add(x, Mul(y, Var("z")))
        assert parse_term("-x*y") == Mul(Neg(x), y)
        assert parse_term("x/y/z") == Frac(Frac(x, y), Var("z"))

    def test_bot_requires_enlarged_signature(self):
        with pytest.raises(SignatureError):
            parse_term("bot")
        assert parse_term("bot", Signature.ENLARGED) == Bot()
        assert parse_term("x + bot", Signature.ENLARGED) == Add(x, Bot())

    def test_reserved_words_are_not_variables(self):
        for word in ("T", "F", "forall", "exists"):
            with pytest.raises(ParseError):
                parse_term(word)

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_term("")

    def test_parse_error_carries_position_and_expectations(self):
        with pytest.raises(ParseError) as info:
            parse_term("x + ")
        assert info.value.line == 1
        assert info.value.column == 5
        assert info.value.expected


class TestParseFormula:
    def test_guarded_inverse_law(self):
        f = parse_formula("x != 0 -> x/x == 1")
        assert f == SImp(Not(Eq(x, Zero())), Eq(Frac(x, x), One()))

    def test_forall(self):
        assert parse_formula("forall x. x == x") == ForallP("x", Eq(x, x))

    def test_connective_precedence(self):
        # && binds tighter than ||; confirmed by printer round-trip
        f = parse_formula("T || F && F")
        assert f == SOr(TrueC(), SAnd(FalseC(), FalseC()))
        assert parse_formula(print_formula(f)) == f

    def test_imp_right_associative(self):
        f = parse_formula("T -> F -> T")
        assert f == SImp(TrueC(), SImp(FalseC(), TrueC()))

    def test_denial_inequality_is_derived(self):
        assert parse_formula("x != y") == Not(Eq(x, y))

    def test_quantifier_body_extends_right(self):
        f = parse_formula("forall x. x != 0 -> x/x == 1")
        assert isinstance(f, ForallP)
        assert isinstance(f.body, SImp)

    def test_exists(self):
        f = parse_formula("exists y. 2*y == 1")
        assert f == ExistsP("y", Eq(Mul(Add(One(), One()), y), One()))

    def test_free_variables_are_legal(self):
        # no unbound-quantifier error: free variables are part of the language
        f = parse_formula("forall x. x == y")
        assert free_formula_vars(f) == ["y"]

    def test_parenthesised_formula_vs_term(self):
        assert parse_formula("(x + 1) == y") == Eq(Add(x, One()), y)
        assert parse_formula("(x == 1) && T") == SAnd(Eq(x, One()), TrueC())
        assert parse_formula("((x == 0))") == Eq(x, Zero())

    def test_shadowing_is_permitted(self):
        f = parse_formula("forall x. (forall x. x == 0) && x == 1")
        assert free_formula_vars(f) == []


class TestPrinter:
    def test_print_fracterm(self):
        assert print_term(Frac(One(), Zero())) == "1/0"

    def test_print_desugared_literal(self):
        assert print_term(Add(Add(One(), One()), One())) == "(1+1)+1"

    def test_print_formula_with_denial(self):
        f = SImp(Not(Eq(x, Zero())), Eq(Frac(x, x), One()))
        assert print_formula(f) == "x != 0 -> x/x == 1"

    def test_negation_of_compound(self):
        assert print_term(Neg(Frac(x, y))) == "-(x/y)"
        assert print_term(Neg(Neg(x))) == "--x"

    def test_quantifier_needs_parens_as_operand(self):
        f = SAnd(ForallP("x", Eq(x, x)), TrueC())
        assert print_formula(f) == "(forall x. x == x) && T"
        assert parse_formula(print_formula(f)) == f

    def test_identity_round_trip(self):
        ident = parse_identity("(1/0 == 1) = (1/0 == 0)")
        assert ident == EqIdentity(
            Eq(Frac(One(), Zero()), One()), Eq(Frac(One(), Zero()), Zero())
        )
        assert parse_identity(print_identity(ident)) == ident


class TestRoundTrip:
    def test_terms_bulk(self):
        rng = random.Random(2024)
        for _ in range(10_000):
            t = random_term(rng, rng.randint(0, 8))
            assert parse_term(print_term(t)) == t

    def test_formulas_bulk(self):
        rng = random.Random(2025)
        for _ in range(10_000):
            f = random_formula(rng, rng.randint(0, 8), quantifier_depth=3)
            assert parse_formula(print_formula(f)) == f

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=200)
    def test_terms_hypothesis(self, seed):
        t = random_term(random.Random(seed), 6)
        assert parse_term(print_term(t)) == t

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=200)
    def test_formulas_hypothesis(self, seed):
        f = random_formula(random.Random(seed), 5, quantifier_depth=2)
        assert parse_formula(print_formula(f)) == f


class TestQueries:
    def test_free_vars_first_occurrence_order(self):
        t = parse_term("y + x*y + z")
        assert free_term_vars(t) == ["y", "x", "z"]
        f = parse_formula("1 + ((x*x + y*y) + (z*z + u*u)) != 0")
        assert free_formula_vars(f) == ["x", "y", "z", "u"]

    def test_signature_detection(self):
        assert term_signature(parse_term("x/y")) == Signature.PLAIN
        t = parse_term("x + bot", Signature.ENLARGED)
        assert contains_bot(t)
        assert term_signature(t) == Signature.ENLARGED

    def test_substitute_respects_shadowing(self):
        f = parse_formula("x == 0 && (forall x. x == 1)")
        g = substitute(f, "x", One())
        assert g == parse_formula("1 == 0 && (forall x. x == 1)")
