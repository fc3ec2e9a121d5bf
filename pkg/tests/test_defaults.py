import random

import pytest

from nmr.defaults import (
    DefaultRule,
    DefaultTheory,
    Extension,
    RuleKind,
    candidate_models,
    enumerate_extensions,
    gamma_fixpoint,
    gamma_trace,
    generating_orderings,
    is_extension,
    normal_default,
    replay,
)
from nmr.errors import CapExceededError, TheoryError
from nmr.logic import BOTTOM, TOP, And, Atom, Not, Signature, models_of, parse_formula

from generators import random_theory
from oracles import oracle_extensions, oracle_gamma

a, ap, b = Atom("a"), Atom("a'"), Atom("b")
SIG = Signature(("a", "a'", "b"))


@pytest.fixture
def nixon():
    return DefaultTheory(
        SIG,
        (a, ap),
        (normal_default("d1", a, b), normal_default("d2", ap, Not(b))),
    )


def seminormal_penguin():
    sig = Signature(("bird", "penguin", "fly"))
    bird, penguin, fly = (Atom(p) for p in sig)
    return DefaultTheory(
        sig,
        (bird, penguin),
        (
            DefaultRule("d1", bird, (And(Not(penguin), fly),), fly),
            DefaultRule("d2", penguin, (Not(fly),), Not(fly)),
        ),
    )


class TestRuleKinds:
    def test_normal(self):
        assert normal_default("d", a, b).kind is RuleKind.NORMAL

    def test_semi_normal(self):
        assert seminormal_penguin().rule("d1").kind is RuleKind.SEMI_NORMAL

    @pytest.mark.parametrize("justs", [(), (b, b), (Not(b),), (And(a, ap),)])
    def test_general(self, justs):
        assert DefaultRule("d", a, justs, b).kind is RuleKind.GENERAL

    def test_duplicate_names(self):
        with pytest.raises(TheoryError):
            DefaultTheory(SIG, (), (normal_default("d", a, b), normal_default("d", a, ap)))


class TestGamma:
    def test_e1_is_a_fixed_point(self, nixon):
        e1 = models_of([a, ap, b], SIG)
        assert gamma_fixpoint(nixon, e1) == e1

    def test_facts_only_both_rules_fire(self, nixon):
        # neither ¬b nor b is in Th({a, a'}), so both defaults fire
        assert gamma_fixpoint(nixon, models_of([a, ap], SIG)) == frozenset()

    def test_no_defaults_gives_facts(self):
        theory = DefaultTheory(SIG, (a,), ())
        for e in (frozenset(), frozenset({0}), SIG.all_worlds()):
            assert gamma_fixpoint(theory, e) == models_of([a], SIG)

    def test_chaining_needs_prerequisite_in_gamma(self):
        # d2's prerequisite comes only from d1's consequent
        theory = DefaultTheory(SIG, (), (normal_default("d1", TOP, a), normal_default("d2", a, b)))
        e = models_of([a, b], SIG)
        assert gamma_fixpoint(theory, e) == e
        assert [n for n, _ in gamma_trace(theory, e)] == [None, "d1", "d2"]

    def test_trace_is_monotone(self, nixon):
        rng = random.Random(3)
        for _ in range(50):
            e = frozenset(w for w in range(8) if rng.random() < 0.5)
            sets = [ms for _, ms in gamma_trace(nixon, e)]
            assert all(later <= earlier for earlier, later in zip(sets, sets[1:]))


class TestIsExtension:
    def test_e1(self, nixon):
        assert is_extension(nixon, models_of([a, ap, b], SIG))

    def test_facts_alone(self, nixon):
        assert not is_extension(nixon, models_of([a, ap], SIG))

    def test_no_defaults(self):
        theory = DefaultTheory(SIG, (a, Not(b)), ())
        assert is_extension(theory, models_of([a, Not(b)], SIG))


class TestEnumerate:
    def test_nixon_has_two(self, nixon):
        exts = enumerate_extensions(nixon)
        assert [e.model_set for e in exts] == [frozenset({3}), frozenset({7})]
        assert [e.generating for e in exts] == [("d2",), ("d1",)]

    def test_self_defeating_default_has_none(self):
        sig = Signature(("a",))
        theory = DefaultTheory(sig, (), (DefaultRule("d", TOP, (Atom("a"),), Not(Atom("a"))),))
        assert enumerate_extensions(theory) == []

    def test_seminormal_penguin(self):
        theory = seminormal_penguin()
        (ext,) = enumerate_extensions(theory)
        assert ext.generating == ("d2",)
        assert ext.model_set == models_of([parse_formula("bird & penguin & !fly")], theory.sig)

    def test_inconsistent_facts(self, nixon):
        theory = DefaultTheory(SIG, (a, Not(a)), nixon.defaults)
        (ext,) = enumerate_extensions(theory)
        assert ext.inconsistent and ext.model_set == frozenset()

    def test_cap(self):
        sig = Signature(tuple(f"p{i}" for i in range(13)))
        rules = tuple(normal_default(f"d{i}", TOP, Atom(f"p{i}")) for i in range(13))
        with pytest.raises(CapExceededError):
            enumerate_extensions(DefaultTheory(sig, (), rules))
        assert len(enumerate_extensions(DefaultTheory(sig, (), rules), max_defaults=13)) == 1


class TestOrderings:
    def test_nixon(self, nixon):
        e1 = next(e for e in enumerate_extensions(nixon) if e.generating == ("d1",))
        assert generating_orderings(nixon, e1) == [("d1",)]

    def test_empty_generating_set(self):
        theory = DefaultTheory(SIG, (a,), ())
        assert generating_orderings(theory, Extension((), models_of([a], SIG))) == [()]

    def test_independent_rules_both_orders(self):
        theory = DefaultTheory(SIG, (), (normal_default("d1", TOP, a), normal_default("d2", TOP, b)))
        (ext,) = enumerate_extensions(theory)
        assert generating_orderings(theory, ext) == [("d1", "d2"), ("d2", "d1")]

    def test_chained_rules_one_order(self):
        theory = DefaultTheory(SIG, (), (normal_default("d2", a, b), normal_default("d1", TOP, a)))
        (ext,) = enumerate_extensions(theory)
        assert generating_orderings(theory, ext) == [("d1", "d2")]


class TestProperties:
    def test_gamma_agrees_with_closure_oracle(self):
        rng = random.Random(11)
        for _ in range(150):
            theory = random_theory(rng, normal=rng.random() < 0.5)
            n = theory.sig.world_count
            e = frozenset(w for w in range(n) if rng.random() < 0.5)
            assert gamma_fixpoint(theory, e) == oracle_gamma(theory, e)

    def test_extensions_agree_with_oracle_and_are_exhaustive(self):
        rng = random.Random(12)
        for _ in range(150):
            theory = random_theory(rng, normal=rng.random() < 0.5)
            exts = enumerate_extensions(theory)
            found = {e.model_set for e in exts}
            assert found == oracle_extensions(theory)
            names = [d.name for d in theory.defaults]
            for mask in range(1 << len(names)):
                subset = [n for k, n in enumerate(names) if mask >> k & 1]
                cand = candidate_models(theory, subset)
                assert is_extension(theory, cand) == (cand in found)

    def test_normal_theories_have_incomparable_extensions(self):
        rng = random.Random(13)
        for _ in range(150):
            theory = random_theory(rng, normal=True)
            exts = enumerate_extensions(theory)
            assert exts
            for x in exts:
                for y in exts:
                    if x is not y:
                        assert not x.model_set <= y.model_set

    def test_orderings_replay_to_the_extension(self):
        rng = random.Random(14)
        for _ in range(150):
            theory = random_theory(rng, normal=rng.random() < 0.5)
            for ext in enumerate_extensions(theory):
                orders = generating_orderings(theory, ext)
                assert orders
                for order in orders:
                    assert sorted(order) == sorted(ext.generating)
                    assert replay(theory, order) == ext.model_set

    def test_inconsistent_facts_unique_inconsistent_extension(self):
        rng = random.Random(15)
        for _ in range(50):
            base = random_theory(rng)
            theory = DefaultTheory(base.sig, (*base.facts, BOTTOM), base.defaults)
            exts = enumerate_extensions(theory)
            assert len(exts) == 1 and exts[0].inconsistent

    def test_output_is_canonically_ordered(self):
        rng = random.Random(16)
        for _ in range(50):
            theory = random_theory(rng)
            keys = [e.key() for e in enumerate_extensions(theory)]
            assert keys == sorted(keys)
