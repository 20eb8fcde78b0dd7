import random

import pytest
from hypothesis import given, settings, strategies as st

import dfakit as dk
from dfakit import samples
from dfakit.invariants import (
    And,
    Contains,
    Empty,
    FirstIs,
    Implies,
    LastIs,
    LenCmp,
    Not,
    Or,
)
from helpers import ALPHABET, all_words, random_expr, ref_eval


def word(text):
    return tuple(text.split())


class TestParse:
    def test_atomic_forms(self):
        assert dk.parse_invariant("(empty)") == Empty()
        assert dk.parse_invariant("true") == dk.parse_invariant(" true ")
        assert dk.parse_invariant("(len>= 3)") == LenCmp(">=", 3)

    def test_first_last_conjunction(self):
        got = dk.parse_invariant("(and (not (empty)) (first= a) (last= a))")
        assert got == And((Not(Empty()), FirstIs("a"), LastIs("a")))

    def test_implies_with_contains(self):
        got = dk.parse_invariant("(implies (len> 3) (not (contains b a b a)))")
        assert got == Implies(
            LenCmp(">", 3), Not(Contains(("b", "a", "b", "a")))
        )

    def test_syntax_errors_carry_position(self):
        with pytest.raises(dk.ExprSyntaxError) as exc:
            dk.parse_invariant("(and (empty)")
        assert exc.value.position == len("(and (empty)")
        with pytest.raises(dk.ExprSyntaxError):
            dk.parse_invariant("(empty) junk")
        with pytest.raises(dk.ExprSyntaxError):
            dk.parse_invariant(")")

    def test_arity_and_unknown_forms(self):
        with pytest.raises(dk.ArityError):
            dk.parse_invariant("(not)")
        with pytest.raises(dk.ArityError):
            dk.parse_invariant("(implies (empty))")
        with pytest.raises(dk.ArityError):
            dk.parse_invariant("(contains)")
        with pytest.raises(dk.UnknownFormError):
            dk.parse_invariant("(frobnicate 3)")
        with pytest.raises(dk.UnknownFormError):
            dk.parse_invariant("maybe")

    @given(st.integers(0, 100_000))
    @settings(max_examples=300, deadline=None)
    def test_print_parse_round_trip(self, seed):
        e = random_expr(random.Random(seed))
        assert dk.parse_invariant(dk.print_invariant(e)) == e


class TestEval:
    def test_final_state_invariant_examples(self):
        f_inv = dk.parse_invariant("(and (not (empty)) (first= a) (last= a))")
        assert dk.eval_invariant(f_inv, word("a b a"))
        assert not dk.eval_invariant(f_inv, word("b b b"))
        assert not dk.eval_invariant(f_inv, ())
        assert dk.eval_invariant(f_inv, word("a"))

    def test_empty_on_empty_word(self):
        assert dk.eval_invariant(Empty(), ())
        assert not dk.eval_invariant(Empty(), word("a b a"))

    def test_contains_requires_contiguous_subword(self):
        # Expected values computed with the all-window reference scan.
        c = Contains(word("b a b a"))
        assert not dk.eval_invariant(c, ())
        assert not dk.eval_invariant(c, word("b a b"))
        assert not dk.eval_invariant(c, word("a b b a b b"))
        assert not dk.eval_invariant(c, word("b b a a b a"))
        assert dk.eval_invariant(c, word("a b b a b a b"))
        assert dk.eval_invariant(c, word("a b a b a"))

    def test_first_last_false_on_empty(self):
        assert not dk.eval_invariant(FirstIs("a"), ())
        assert not dk.eval_invariant(LastIs("a"), ())

    @given(st.integers(0, 100_000))
    @settings(max_examples=300, deadline=None)
    def test_differential_against_reference_evaluator(self, seed):
        rng = random.Random(seed)
        e = random_expr(rng)
        w = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(0, 10)))
        assert dk.eval_invariant(e, w) == ref_eval(e, w)

    def test_implication_equals_or_not_exhaustive(self):
        rng = random.Random(5)
        for _ in range(10):
            p = random_expr(rng, depth=2)
            q = random_expr(rng, depth=2)
            for w in all_words(ALPHABET, 8):
                assert dk.eval_invariant(Implies(p, q), w) == dk.eval_invariant(
                    Or((Not(p), q)), w
                )

    def test_de_morgan_exhaustive(self):
        rng = random.Random(6)
        for _ in range(10):
            p = random_expr(rng, depth=2)
            q = random_expr(rng, depth=2)
            for w in all_words(ALPHABET, 8):
                assert dk.eval_invariant(Not(And((p, q))), w) == dk.eval_invariant(
                    Or((Not(p), Not(q))), w
                )


class TestAnnotateTrace:
    def test_verdict_holds_after_consuming_aaba(self):
        m = samples.starts_ends_a()
        binding = dk.parse_binding(m, samples.STARTS_ENDS_A_INVARIANTS)
        at = dk.annotate_trace(m, binding, word("a a b a b a"))
        step = at.steps[4]
        assert step.consumed == word("a a b a")
        assert step.state == "F"
        assert step.verdict == dk.HOLDS
        assert at.result == dk.ACCEPT

    def test_first_failure_is_at_dead_state_entry(self):
        m = samples.starts_ends_a_buggy()
        binding = dk.parse_binding(m, samples.STARTS_ENDS_A_BUGGY_INVARIANTS)
        at = dk.annotate_trace(m, binding, word("a b b a b a"))
        first_fail = next(i for i, s in enumerate(at.steps) if s.verdict == dk.FAILS)
        assert at.steps[first_fail].state == "ds"
        assert at.steps[first_fail - 1].state != "ds"

    def test_empty_binding_all_unbound(self):
        m = samples.starts_ends_a()
        at = dk.annotate_trace(m, {}, word("a b a"))
        assert all(s.verdict == dk.UNBOUND for s in at.steps)
        assert at.result == dk.apply(m, word("a b a"))

    def test_binding_key_must_be_a_state(self):
        m = samples.starts_ends_a()
        with pytest.raises(dk.UndeclaredReferenceError):
            dk.annotate_trace(m, {"Z": Empty()}, ())

    def test_steps_match_show_transitions(self):
        m = samples.baba_matcher()
        binding = dk.parse_binding(m, samples.BABA_MATCHER_INVARIANTS)
        w = word("a b a b a b")
        at = dk.annotate_trace(m, binding, w)
        t = dk.show_transitions(m, w)
        assert len(at.steps) == len(t.steps)
        for astep, conf in zip(at.steps, t.steps):
            assert astep.state == conf.state
            assert astep.unconsumed == conf.unconsumed
            assert astep.consumed + astep.unconsumed == w

    def test_rule_used_none_only_on_initial_step(self):
        m = samples.starts_with_a()
        at = dk.annotate_trace(m, {}, word("a b"))
        assert at.steps[0].rule_used is None
        assert at.steps[1].rule_used == dk.Rule("S", "a", "F")
        assert at.steps[2].rule_used == dk.Rule("F", "b", "F")
