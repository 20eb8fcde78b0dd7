import random

import pytest
from hypothesis import given, settings, strategies as st

import dfakit as dk
from dfakit import samples
from helpers import ALPHABET, all_words, naive_accepts, random_machine, random_word


def word(text):
    return tuple(text.split())


class TestConstruction:
    def test_dead_state_completion_adds_ds_and_rules(self):
        m = samples.starts_with_a()
        assert m.dead_added and m.dead_state == "ds"
        assert m.states == ("S", "F", "ds")
        added = set(m.rules) - set(m.declared_rules)
        assert added == {
            dk.Rule("S", "b", "ds"),
            dk.Rule("ds", "a", "ds"),
            dk.Rule("ds", "b", "ds"),
        }
        assert len(m.rules) == 6

    def test_total_rule_set_adds_no_state(self):
        m = samples.baba_matcher()
        assert not m.dead_added
        assert m.states == ("A", "B", "C", "D", "F")
        assert m.rules == m.declared_rules

    def test_completion_idempotent(self):
        m = samples.starts_with_a()
        again = dk.make_machine(m.states, m.alphabet, m.start, m.finals, m.rules)
        assert again.states == m.states
        assert not again.dead_added

    def test_nondeterminism_reports_all_violating_pairs(self):
        with pytest.raises(dk.NondeterminismError) as exc:
            dk.make_machine(
                ["S", "F"], ALPHABET, "S", ["F"],
                [("S", "a", "F"), ("S", "a", "S"), ("F", "a", "F"), ("F", "b", "F")],
            )
        groups = exc.value.groups
        assert len(groups) == 1
        assert set(groups[0]) == {dk.Rule("S", "a", "F"), dk.Rule("S", "a", "S")}
        assert "(S a F)" in str(exc.value) and "(S a S)" in str(exc.value)

    def test_undeclared_references(self):
        with pytest.raises(dk.UndeclaredReferenceError):
            dk.make_machine(["S"], ALPHABET, "S", [], [("S", "a", "X")])
        with pytest.raises(dk.UndeclaredReferenceError):
            dk.make_machine(["S"], ALPHABET, "S", [], [("S", "c", "S")])
        with pytest.raises(dk.UndeclaredReferenceError):
            dk.make_machine(["S"], ALPHABET, "X", [], [])
        with pytest.raises(dk.UndeclaredReferenceError):
            dk.make_machine(["S"], ALPHABET, "S", ["X"], [])

    def test_empty_alphabet_rejected(self):
        with pytest.raises(dk.EmptyAlphabetError):
            dk.make_machine(["S"], [], "S", [], [])

    def test_bad_symbol_tokens_rejected(self):
        with pytest.raises(dk.InvalidSymbolError):
            dk.make_machine(["a state"], ALPHABET, "a state", [], [])
        with pytest.raises(dk.InvalidSymbolError):
            dk.make_machine(["S"], ["("], "S", [], [])

    def test_dead_name_collision_picks_fresh_name(self):
        m = dk.make_machine(["S", "ds"], ALPHABET, "S", ["S"], [("ds", "a", "S")])
        assert m.dead_added and m.dead_state == "ds0"
        assert "ds0" in m.states

    def test_multi_character_state_names(self):
        m = dk.make_machine(["start", "loop"], ALPHABET, "start", ["loop"],
                            [("start", "a", "loop")])
        assert dk.apply(m, ("a",)) == dk.ACCEPT


class TestAccessors:
    def test_components_returned_unchanged(self):
        a_star = samples.starts_with_a()
        assert a_star.finals == ("F",)
        assert samples.starts_ends_a().start == "S"
        assert a_star.alphabet == ("a", "b")
        assert len(a_star.rules) == 6  # 3 declared + 3 dead-state


class TestApply:
    def test_reject_word_not_starting_with_a(self):
        assert dk.apply(samples.starts_with_a(), word("b a a b")) == dk.REJECT

    def test_starts_ends_a_unit_tests(self):
        m = samples.starts_ends_a()
        assert dk.apply(m, ()) == dk.REJECT
        assert dk.apply(m, word("b a a")) == dk.REJECT
        assert dk.apply(m, word("a b a b")) == dk.REJECT
        assert dk.apply(m, word("a")) == dk.ACCEPT
        assert dk.apply(m, word("a b a a")) == dk.ACCEPT
        assert dk.apply(m, word("a a a")) == dk.ACCEPT

    def test_foreign_symbol_errors_with_position(self):
        with pytest.raises(dk.ForeignSymbolError) as exc:
            dk.apply(samples.starts_with_a(), ("a", "c", "a"))
        assert exc.value.symbol == "c" and exc.value.position == 1

    def test_no_dead_machine_rejects_when_stuck(self):
        m = dk.make_machine(["S", "F"], ALPHABET, "S", ["F"],
                            [("S", "a", "F")], no_dead=True)
        assert not m.is_total
        assert dk.apply(m, word("a")) == dk.ACCEPT
        assert dk.apply(m, word("b a")) == dk.REJECT


class TestShowTransitions:
    def test_trace_of_ababa(self):
        t = dk.show_transitions(samples.starts_with_a(), word("a b a b a"))
        assert [(c.unconsumed, c.state) for c in t.steps] == [
            (word("a b a b a"), "S"),
            (word("b a b a"), "F"),
            (word("a b a"), "F"),
            (word("b a"), "F"),
            (word("a"), "F"),
            ((), "F"),
        ]
        assert t.result == dk.ACCEPT

    def test_empty_word_single_configuration(self):
        t = dk.show_transitions(samples.starts_with_a(), ())
        assert t.steps == (dk.Configuration((), "S"),)
        assert t.result == dk.REJECT

    def test_buggy_machine_enters_dead_state_at_second_b(self):
        m = samples.starts_ends_a_buggy()
        t = dk.show_transitions(m, word("a b b a b a"))
        assert [c.state for c in t.steps] == ["J", "K", "J", "ds", "ds", "ds", "ds"]
        assert t.result == dk.REJECT

    def test_stuck_trace_is_shorter_and_flagged(self):
        m = dk.make_machine(["S", "F"], ALPHABET, "S", ["F"],
                            [("S", "a", "F")], no_dead=True)
        t = dk.show_transitions(m, word("a b a"))
        assert t.result == dk.STUCK_REJECT
        assert len(t.steps) == 2
        assert t.steps[-1].unconsumed == word("b a")


class TestProperties:
    @given(st.integers(0, 10_000))
    @settings(max_examples=200, deadline=None)
    def test_apply_matches_trace_terminal(self, seed):
        rng = random.Random(seed)
        m = random_machine(rng, allow_partial=True)
        w = random_word(rng)
        t = dk.show_transitions(m, w)
        expected = dk.REJECT if t.result == dk.STUCK_REJECT else t.result
        assert dk.apply(m, w) == expected

    @given(st.integers(0, 10_000))
    @settings(max_examples=200, deadline=None)
    def test_trace_steps_consume_one_symbol_via_delta(self, seed):
        rng = random.Random(seed)
        m = random_machine(rng)
        w = random_word(rng)
        t = dk.show_transitions(m, w)
        assert t.steps[0].unconsumed == w
        assert t.steps[0].state == m.start
        for prev, cur in zip(t.steps, t.steps[1:]):
            head = prev.unconsumed[0]
            assert cur.unconsumed == prev.unconsumed[1:]
            assert cur.state == m.delta[(prev.state, head)]

    @given(st.integers(0, 10_000))
    @settings(max_examples=100, deadline=None)
    def test_at_most_one_applicable_rule(self, seed):
        rng = random.Random(seed)
        m = random_machine(rng, allow_partial=True)
        keys = [(r.src, r.sym) for r in m.rules]
        assert len(keys) == len(set(keys))

    def test_stuck_agrees_with_completed_machine(self):
        # Completion soundness: explicit dead-state runs decide like stuck runs.
        rng = random.Random(42)
        for _ in range(50):
            m = random_machine(rng, allow_partial=True)
            full = dk.completed(m)
            for _ in range(20):
                w = random_word(rng)
                assert dk.apply(m, w) == dk.apply(full, w)

    def test_apply_matches_rule_scan_oracle(self):
        rng = random.Random(7)
        for _ in range(100):
            m = random_machine(rng, allow_partial=True)
            w = random_word(rng)
            expected = dk.ACCEPT if naive_accepts(m, w) else dk.REJECT
            assert dk.apply(m, w) == expected

    def test_exhaustive_small_words_on_samples(self):
        for m in (samples.starts_with_a(), samples.starts_ends_a()):
            for w in all_words(ALPHABET, 5):
                expected = dk.ACCEPT if naive_accepts(m, w) else dk.REJECT
                assert dk.apply(m, w) == expected
