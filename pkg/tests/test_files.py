from fractions import Fraction
from pathlib import Path

import pytest

from nmr.errors import CapExceededError, ParseError, UnknownAtomError, WeightError
from nmr.files import load_theory, load_weights, parse_theory, parse_weights
from nmr.logic import TOP, And, Atom, Not, Signature, parse_formula

FIXTURES = Path(__file__).parent / "fixtures"
a, ap, b = Atom("a"), Atom("a'"), Atom("b")
SIG = Signature(("a", "a'", "b"))


class TestTheory:
    def test_nixon_fixture(self):
        tf = load_theory(FIXTURES / "nixon.theory")
        assert tf.sig.props == ("a", "a'", "b")
        assert tf.facts == (a, ap)
        d1, d2 = tf.defaults
        assert (d1.name, d1.prerequisite, d1.justifications, d1.consequent) == ("d1", a, (b,), b)
        assert (d2.name, d2.consequent) == ("d2", Not(b))
        assert tf.thresholds == (b, Not(b))
        assert tf.theory.is_normal
        assert tf.collection.facts == tf.facts

    def test_comments_and_blank_lines(self):
        tf = parse_theory("# header\n\nfact a   # trailing\n   \n")
        assert tf.facts == (a,) and tf.defaults == ()

    def test_inferred_signature_in_first_occurrence_order(self):
        tf = parse_theory("default d: c :: b / b\nfact a & c\n")
        assert tf.sig.props == ("c", "b", "a")

    def test_empty_prerequisite_and_justifications(self):
        tf = parse_theory("prop a\ndefault d:  ::  / a\n")
        (d,) = tf.defaults
        assert d.prerequisite == TOP and d.justifications == ()

    def test_true_prerequisite(self):
        (d,) = parse_theory("prop a\ndefault d: true :: a / !a\n").defaults
        assert d.prerequisite == TOP and d.consequent == Not(a)

    def test_several_justifications(self):
        (d,) = parse_theory("prop a, b\ndefault d: a :: b, !a & b / b\n").defaults
        assert d.justifications == (b, And(Not(a), b))

    def test_semi_normal_fixture(self):
        tf = load_theory(FIXTURES / "penguin_seminormal.theory")
        assert tf.defaults[0].justifications == (parse_formula("!penguin & fly"),)
        assert not tf.theory.is_normal

    def test_primed_default_name(self):
        (d,) = parse_theory("prop a\ndefault d': a :: a / a\n").defaults
        assert d.name == "d'"


class TestTheoryErrors:
    def error(self, text):
        with pytest.raises(ParseError) as info:
            parse_theory(text, source="t.theory")
        return info.value

    def test_unknown_keyword(self):
        e = self.error("prop a\n  rule a\n")
        assert (e.line, e.col) == (2, 3)

    def test_formula_error_position_is_in_file_coordinates(self):
        e = self.error("prop a, b\nfact a & & b\n")
        assert (e.line, e.col) == (2, 10)

    def test_consequent_error_position(self):
        e = self.error("prop a\ndefault d: a :: a / a |\n")
        assert e.line == 2 and e.col > len("default d: a :: a / a")

    def test_undeclared_atom(self):
        with pytest.raises(UnknownAtomError) as info:
            parse_theory("prop a\nfact b\n")
        assert info.value.line == 2

    def test_malformed_default(self):
        assert self.error("prop a\ndefault d a / a\n").line == 2

    def test_duplicate_default_name(self):
        assert self.error("prop a\ndefault d: :: / a\ndefault d: :: / !a\n").line == 3

    def test_duplicate_threshold(self):
        assert self.error("prop a\nthreshold a\nthreshold a\n").line == 3

    @pytest.mark.parametrize("line", ["prop a, a", "prop 1a", "prop true"])
    def test_bad_prop_lines(self, line):
        with pytest.raises(ParseError):
            parse_theory(line + "\n")

    def test_message_mentions_source(self):
        assert "t.theory" in str(self.error("bogus\n"))

    def test_cap(self):
        props = ", ".join(f"p{i}" for i in range(5))
        with pytest.raises(CapExceededError):
            parse_theory(f"prop {props}\n", max_props=4)


class TestWeights:
    def test_penguin_fixture(self):
        m = load_weights(FIXTURES / "penguin.weights", SIG)
        assert m.weight(SIG.world_id({"a": True, "a'": True, "b": False})) == 99
        assert m.weight(SIG.world_id({"a": True, "a'": True, "b": True})) == 1
        assert m.total == 106

    def test_default_weight_and_decimals(self):
        m = parse_weights("default_weight 0.5\nweight a=0 a'=0 b=0 : 1/3\n", SIG)
        assert m.weight(0) == Fraction(1, 3)
        assert m.weight(7) == Fraction(1, 2)

    def test_assignment_order_is_free(self):
        m = parse_weights("weight b=1 a=0 a'=1 : 5\n", SIG)
        assert m.weight(SIG.world_id({"a": False, "a'": True, "b": True})) == 5

    def test_empty_file_is_uniform(self):
        assert parse_weights("# nothing\n", SIG).weights == (1,) * 8

    @pytest.mark.parametrize(
        "text, line",
        [
            ("default_weight 1\ndefault_weight 2\n", 2),
            ("weight a=1 a'=1 : 3\n", 1),
            ("weight a=1 a'=1 b=2 : 3\n", 1),
            ("weight a=1 a'=1 c=1 : 3\n", 1),
            ("weight a=1 a=1 b=1 : 3\n", 1),
            ("\nweight a=1 a'=1 b=1 : x\n", 2),
            ("weight a=1 a'=1 b=1 3\n", 1),
            ("scale 2\n", 1),
        ],
    )
    def test_syntax_errors(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_weights(text, SIG)
        assert info.value.line == line

    def test_semantic_errors(self):
        with pytest.raises(WeightError):
            parse_weights("weight a=1 a'=1 b=1 : 1\nweight b=1 a'=1 a=1 : 2\n", SIG)
        with pytest.raises(WeightError):
            parse_weights("weight a=1 a'=1 b=1 : -1\n", SIG)
        with pytest.raises(WeightError):
            parse_weights("default_weight 0\n", SIG)
