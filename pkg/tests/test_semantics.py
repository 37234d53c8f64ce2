import random

import pytest

from meadows.errors import EnlargedStructure, InfiniteCarrier, UnboundVariable
from meadows.generate import random_formula
from meadows.semantics import (
    DENIAL_HOLDS,
    HOLDS,
    UNDEFINED,
    Refuted,
    SampledClean,
    TriStatus,
    Valid,
    check_consequence,
    check_identity,
    check_totalisation_invariance,
    check_valid,
    eq_identity,
    run_axiom_suite,
    satisfy,
    status_to_trivalue,
)
from meadows.structures import Fp, PrimeField, Rationals, enl, tot0
from meadows.syntax import (
    ExistsP,
    ForallP,
    Not,
    SAnd,
    SImp,
    SOr,
    free_formula_vars,
    parse_formula,
    parse_identity,
)
from meadows.trivalent import tri_and, tri_imp, tri_not, tri_or

Q = Rationals()
G2 = PrimeField(2)
G3 = PrimeField(3)
G5 = PrimeField(5)


def fp(n, p):
    return Fp(n % p, p)


class TestSatisfy:
    def test_sequential_or_is_not_commutative(self):
        assert satisfy(Q, {}, parse_formula("1/0 == 1 || 0 != 1")) is UNDEFINED
        assert satisfy(Q, {}, parse_formula("0 != 1 || 1/0 == 1")) is HOLDS

    def test_guarded_forall_holds(self):
        f = parse_formula("forall x. x != 0 -> x/x == 1")
        assert satisfy(G3, {}, f) is HOLDS

    def test_unguarded_forall_undefined(self):
        f = parse_formula("forall x. x/x == 1")
        assert satisfy(G3, {}, f) is UNDEFINED

    def test_exists_with_defined_instances(self):
        # y = 2 works since 2*2 = 4 = 1 (mod 3), and every instance is defined
        assert satisfy(G3, {}, parse_formula("exists y. 2*y == 1")) is HOLDS

    def test_exists_undefined_when_an_instance_is(self):
        assert satisfy(G3, {}, parse_formula("exists x. x/x == 1")) is UNDEFINED

    def test_denial_of_forall_requires_all_defined(self):
        assert satisfy(G3, {}, parse_formula("forall x. x == 1")) is DENIAL_HOLDS

    def test_atoms(self):
        assert satisfy(Q, {}, parse_formula("T")) is HOLDS
        assert satisfy(Q, {}, parse_formula("F")) is DENIAL_HOLDS
        assert satisfy(Q, {}, parse_formula("1/0 == 1/0")) is UNDEFINED

    def test_rejects_enlarged_structures(self):
        with pytest.raises(EnlargedStructure):
            satisfy(enl(G3), {}, parse_formula("T"))

    def test_quantifier_over_rationals_is_hard_error(self):
        with pytest.raises(InfiniteCarrier):
            satisfy(Q, {}, parse_formula("forall x. x == x"))

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariable):
            satisfy(Q, {}, parse_formula("x == 0"))


class TestEqIdentity:
    def test_undefined_sides_agree(self):
        ident = parse_identity("(1/0 == 1) = (1/0 == 0)")
        assert eq_identity(Q, {}, ident)

    def test_holds_vs_denial_disagree(self):
        ident = parse_identity("(T) = (F)")
        assert not eq_identity(Q, {}, ident)

    def test_check_identity_closed_over_rationals(self):
        ident = parse_identity("(1/0 == 1) = (1/0 == 0)")
        assert isinstance(check_identity(Q, ident), Valid)


class TestCheckValid:
    def test_guarded_inverse_axiom(self):
        assert isinstance(check_valid(G5, parse_formula("x != 0 -> x/x == 1")), Valid)

    def test_four_squares_fails_in_characteristic_two(self):
        verdict = check_valid(G2, parse_formula("1 + ((x*x + y*y) + (z*z + u*u)) != 0"))
        assert isinstance(verdict, Refuted)
        assert verdict.status is DENIAL_HOLDS
        assert verdict.witness == {"x": fp(1, 2), "y": fp(0, 2), "z": fp(0, 2), "u": fp(0, 2)}

    def test_four_squares_sampled_clean_over_rationals(self):
        f = parse_formula("1 + ((x*x + y*y) + (z*z + u*u)) != 0")
        verdict = check_valid(Q, f, samples=10_000, seed=7)
        assert verdict == SampledClean(10_000, 7)

    def test_infinite_carrier_needs_samples(self):
        with pytest.raises(InfiniteCarrier):
            check_valid(Q, parse_formula("x == x"))

    def test_witness_is_first_in_enumeration_order(self):
        verdict = check_valid(G3, parse_formula("x == 0"))
        assert isinstance(verdict, Refuted)
        assert verdict.witness == {"x": fp(1, 3)}


class TestProperties:
    def test_trichotomy_and_negation_consistency(self):
        rng = random.Random(11)
        fields = [G2, G3, G5]
        swap = {HOLDS: DENIAL_HOLDS, DENIAL_HOLDS: HOLDS, UNDEFINED: UNDEFINED}
        for _ in range(10_000):
            S = rng.choice(fields)
            phi = random_formula(rng, 5, variables=("x", "y"), quantifier_depth=1)
            sigma = {n: S.sample(rng) for n in free_formula_vars(phi)}
            status = satisfy(S, sigma, phi)
            assert isinstance(status, TriStatus)
            assert satisfy(S, sigma, Not(phi)) is swap[status]

    def test_connectives_agree_with_the_three_valued_tables(self):
        rng = random.Random(12)
        table = {"or": tri_or, "and": tri_and, "imp": tri_imp}
        ctor = {"or": SOr, "and": SAnd, "imp": SImp}
        for _ in range(2000):
            S = rng.choice([G2, G3])
            f1 = random_formula(rng, 3, variables=("x", "y"))
            f2 = random_formula(rng, 3, variables=("x", "y"))
            names = free_formula_vars(SAnd(f1, f2))
            sigma = {n: S.sample(rng) for n in names}
            s1 = status_to_trivalue(satisfy(S, sigma, f1))
            s2 = status_to_trivalue(satisfy(S, sigma, f2))
            for name in ("or", "and", "imp"):
                combined = satisfy(S, sigma, ctor[name](f1, f2))
                assert status_to_trivalue(combined) is table[name](s1, s2)
            assert status_to_trivalue(satisfy(S, sigma, Not(f1))) is tri_not(s1)

    def test_quantifier_free_validity_matches_closure(self):
        rng = random.Random(13)
        for _ in range(300):
            S = rng.choice([G2, G3])
            phi = random_formula(rng, 3, variables=("x", "y"))
            direct = isinstance(check_valid(S, phi), Valid)
            closed = isinstance(check_valid(S, ForallP("x", phi)), Valid)
            assert direct == closed

    def test_exists_is_the_negated_forall(self):
        rng = random.Random(14)
        for _ in range(500):
            S = rng.choice([G2, G3])
            phi = random_formula(rng, 3, variables=("x", "y"))
            sigma = {n: S.sample(rng) for n in free_formula_vars(ExistsP("x", phi))}
            lhs = satisfy(S, sigma, ExistsP("x", phi))
            rhs = satisfy(S, sigma, Not(ForallP("x", Not(phi))))
            assert lhs is rhs

    def test_undefined_instance_poisons_the_quantifier(self):
        rng = random.Random(15)
        found = 0
        for _ in range(800):
            S = rng.choice([G2, G3])
            phi = random_formula(rng, 3, variables=("x", "y"))
            sigma = {n: S.sample(rng) for n in free_formula_vars(ForallP("x", phi))}
            some_undefined = any(
                satisfy(S, {**sigma, "x": a}, phi) is UNDEFINED for a in S.elements()
            )
            if not some_undefined:
                continue
            found += 1
            assert satisfy(S, sigma, ForallP("x", phi)) is UNDEFINED
            assert satisfy(S, sigma, ForallP("x", Not(phi))) is UNDEFINED
        assert found > 50


class TestSuites:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_base_axioms_valid(self, p):
        report = run_axiom_suite("ftcpm", PrimeField(p))
        assert report.ok
        assert len(report.entries) == 11
        assert all(e.verdict == "pass" for e in report.entries)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_assertions_valid(self, p):
        report = run_axiom_suite("assertions", PrimeField(p))
        assert report.ok
        names = [e.name for e in report.entries]
        assert names[:7] == ["A1", "A2", "A3", "A4", "A5", "A6", "A7"]
        assert "d4" in names
        assert "exists-mul-inverse" in names
        assert "exists-unit-fraction" in names

    def test_rationals_suite_sampled(self):
        report = run_axiom_suite("rationals", Q, samples=2000, seed=3)
        assert report.ok
        assert report.entries[-1].name == "4sq"
        assert report.entries[-1].samples == 2000

    def test_rationals_suite_negative_control(self):
        report = run_axiom_suite("rationals", G2)
        four_sq = next(e for e in report.entries if e.name == "4sq")
        assert four_sq.verdict == "fail"
        assert four_sq.witness == {"x": "1", "y": "0", "z": "0", "u": "0"}
        assert not report.ok

    def test_soundness_suite(self):
        report = run_axiom_suite("soundness", G3, samples=500, seed=1)
        assert report.ok
        names = {e.name for e in report.entries}
        assert {"p1", "p2", "p3", "p4", "p5", "p6", "p7", "a1", "a2",
                "i1", "i2", "i3", "i4", "i5", "congruence"} <= names
        # the rule checks must actually have fired on non-vacuous instances
        for rule in ("i1", "i2", "i3", "i4", "i5"):
            entry = next(e for e in report.entries if e.name == rule)
            held = int(entry.notes.split("premises held on ")[1].split()[0])
            assert held > 20, rule

    def test_eqcl_suite_through_the_axiom_runner(self):
        report = run_axiom_suite("eqcl", None)
        assert report.ok
        assert report.suite == "eqcl"
        fails = {e.name for e in report.entries if e.verdict == "fail"}
        assert fails == {"or-commutativity", "and-right-false"}

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_axiom_suite("nope", G3)

    def test_suite_json_shape(self):
        payload = run_axiom_suite("ftcpm", G3).to_json()
        assert set(payload) == {"suite", "structure", "entries"}
        assert payload["structure"] == "gf:3"
        assert all(set(e) <= {"name", "verdict", "witness", "status", "samples", "notes"}
                   for e in payload["entries"])


class TestConsequence:
    def test_modus_ponens_instance(self):
        phi = parse_formula("x != 0")
        psi_f = parse_formula("x != 0 -> x/x == 1")
        # premise set not all valid, so vacuously fine
        assert check_consequence(G3, [phi, psi_f], parse_formula("x/x == 1"))

    def test_valid_premises_force_conclusion(self):
        premises = [parse_formula("x == x"), parse_formula("0 != 1")]
        assert check_consequence(G3, premises, parse_formula("x == x && 0 != 1"))
        assert not check_consequence(G3, premises, parse_formula("x == 0"))


class TestTotalisationInvariance:
    def test_guarded_axiom_transfers(self):
        rep = check_totalisation_invariance(G5, parse_formula("x != 0 -> x/x == 1"))
        assert rep.ok

    def test_strict_gain_is_reported(self):
        rep = check_totalisation_invariance(G3, parse_formula("1/0 == 0"))
        assert rep.ok
        assert "strict gain" in (rep.entries[0].notes or "")
        # direct confirmation of the gain
        assert satisfy(G3, {}, parse_formula("1/0 == 0")) is UNDEFINED
        assert satisfy(tot0(G3), {}, parse_formula("1/0 == 0")) is HOLDS

    def test_trivial_formula(self):
        rep = check_totalisation_invariance(G3, parse_formula("T"))
        assert rep.ok
        assert rep.entries[0].notes is None

    def test_random_formulas_transfer(self):
        rng = random.Random(21)
        for _ in range(200):
            S = rng.choice([G3, G5])
            phi = random_formula(rng, 4, variables=("x", "y"), quantifier_depth=1)
            assert check_totalisation_invariance(S, phi).ok

    def test_sampled_over_rationals(self):
        rep = check_totalisation_invariance(Q, parse_formula("x/x == 1"), trials=200, seed=2)
        assert rep.ok
        assert rep.entries[0].samples == 200
