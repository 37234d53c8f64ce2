import json

from meadows.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_undefined_division(self, capsys):
        code, out, _ = run(capsys, "eval", "--structure", "q", "1/0")
        assert code == 0
        assert out == "undefined\n"

    def test_rational_value(self, capsys):
        code, out, _ = run(capsys, "eval", "--structure", "q", "-b", "x=1/2", "x + 1/3")
        assert code == 0
        assert out == "5/6\n"

    def test_field_value(self, capsys):
        code, out, _ = run(capsys, "eval", "--structure", "tot0:gf:5", "2/3")
        assert code == 0
        assert out == "4\n"

    def test_bot_output(self, capsys):
        code, out, _ = run(capsys, "eval", "--structure", "enl:gf:3", "1/0")
        assert code == 0
        assert out == "bot\n"

    def test_bad_binding(self, capsys):
        code, _, err = run(capsys, "eval", "--structure", "q", "-b", "x", "x")
        assert code == 2
        assert err.startswith("error:")


class TestCheck:
    def test_valid(self, capsys):
        code, out, _ = run(capsys, "check", "--structure", "gf:5", "x != 0 -> x/x == 1")
        assert code == 0
        assert out == "valid\n"

    def test_refuted_with_witness(self, capsys):
        code, out, _ = run(
            capsys, "check", "--structure", "gf:2",
            "1 + ((x*x + y*y) + (z*z + u*u)) != 0",
        )
        assert code == 1
        assert out == "refuted (denial-holds) at x=1, y=0, z=0, u=0\n"

    def test_sampled_clean(self, capsys):
        code, out, _ = run(
            capsys, "check", "--structure", "q", "--samples", "500", "--seed", "7",
            "1 + ((x*x + y*y) + (z*z + u*u)) != 0",
        )
        assert code == 0
        assert out == "sampled-clean (500 samples, seed 7)\n"

    def test_parse_error_exit_code(self, capsys):
        code, _, err = run(capsys, "check", "--structure", "gf:5", "x ==")
        assert code == 2
        assert "error:" in err

    def test_bad_structure_exit_code(self, capsys):
        code, _, err = run(capsys, "check", "--structure", "gf:9", "T")
        assert code == 2


class TestEq:
    def test_closed_identity_over_rationals(self, capsys):
        code, out, _ = run(capsys, "eq", "--structure", "q", "(1/0 == 1) = (1/0 == 0)")
        assert code == 0
        assert out == "valid\n"

    def test_refuted_identity(self, capsys):
        code, out, _ = run(capsys, "eq", "--structure", "gf:3", "(x == 0) = (T)")
        assert code == 1
        assert out.startswith("refuted at x=")


class TestFlatten:
    def test_two_line_output(self, capsys):
        code, out, _ = run(capsys, "flatten", "1/x")
        assert code == 0
        assert out == "(1*1)*x\n(1*1)/(1*x)\n"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "flatten", "--json", "1/x")
        assert code == 0
        assert json.loads(out) == {
            "guard": "(1*1)*x",
            "numerator": "1*1",
            "denominator": "1*x",
        }

    def test_simplified_display(self, capsys):
        code, out, _ = run(capsys, "flatten", "--simplify", "1/x")
        assert code == 0
        assert out == "x\n1/x\n"


class TestTranslate:
    def test_true_mode(self, capsys):
        code, out, _ = run(capsys, "translate", "x == y")
        assert code == 0
        assert out == "x != bot && y != bot && x == y\n"

    def test_false_mode(self, capsys):
        code, out, _ = run(capsys, "translate", "--mode", "false", "x == y")
        assert code == 0
        assert out == "x != bot && y != bot && x != y\n"

    def test_forall(self, capsys):
        code, out, _ = run(capsys, "translate", "forall x. x == x")
        assert code == 0
        assert out == "forall x. (x != bot -> x != bot && x != bot && x == x)\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "translate", "--json", "T")
        assert json.loads(out) == {"node": "true"}


class TestParse:
    def test_formula_canonical_form(self, capsys):
        code, out, _ = run(capsys, "parse", "T||F&&F")
        assert code == 0
        assert out == "T || F && F\n"

    def test_term(self, capsys):
        code, out, _ = run(capsys, "parse", "--kind", "term", "3")
        assert out == "(1+1)+1\n"

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "parse", "--kind", "identity", "(T) = (F)")
        assert out == "(T) = (F)\n"

    def test_json_ast(self, capsys):
        code, out, _ = run(capsys, "parse", "--kind", "term", "--json", "x/y")
        assert json.loads(out)["node"] == "frac"


class TestAxioms:
    def test_ftcpm_json(self, capsys):
        code, out, _ = run(capsys, "axioms", "--suite", "ftcpm", "--structure", "gf:7", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["suite"] == "ftcpm"
        assert len(payload["entries"]) == 11
        assert all(e["verdict"] == "pass" for e in payload["entries"])

    def test_eqcl_json_schema(self, capsys):
        code, out, _ = run(capsys, "axioms", "--suite", "eqcl", "--json")
        assert code == 0
        payload = json.loads(out)
        assert all(set(e) <= {"law", "status", "counterexample"} for e in payload)
        fails = [e for e in payload if e["status"] == "fail"]
        assert {e["law"] for e in fails} == {"or-commutativity", "and-right-false"}

    def test_cm_suite(self, capsys):
        code, out, _ = run(capsys, "axioms", "--suite", "cm", "--structure", "enl:gf:2")
        assert code == 0
        assert "cm5: pass" in out

    def test_rationals_negative_control_exit(self, capsys):
        code, out, _ = run(capsys, "axioms", "--suite", "rationals", "--structure", "gf:2")
        assert code == 1
        assert "4sq: fail" in out

    def test_missing_structure(self, capsys):
        code, _, err = run(capsys, "axioms", "--suite", "ftcpm")
        assert code == 2

    def test_soundness_suite_runs(self, capsys):
        code, out, _ = run(
            capsys, "axioms", "--suite", "soundness", "--structure", "gf:2",
            "--samples", "40",
        )
        assert code == 0
        assert "congruence: pass" in out

    def test_rationals_sampled_by_default(self, capsys):
        code, out, _ = run(capsys, "axioms", "--suite", "rationals",
                           "--structure", "q", "--samples", "200")
        assert code == 0
        assert "4sq: pass" in out


class TestDeterminism:
    def test_identical_invocations_identical_output(self, capsys):
        args = ("check", "--structure", "q", "--samples", "300", "--seed", "11",
                "1 + ((x*x + y*y) + (z*z + u*u)) != 0")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_env_seed_used_and_overridden(self, capsys, monkeypatch):
        monkeypatch.setenv("MEADOW_SEED", "9")
        _, out, _ = run(capsys, "check", "--structure", "q", "--samples", "10", "x == x")
        assert "seed 9" in out
        _, out, _ = run(capsys, "check", "--structure", "q", "--samples", "10",
                        "--seed", "3", "x == x")
        assert "seed 3" in out
