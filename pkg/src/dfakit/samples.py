"""Built-in example machines and their state invariants.

These are the machines used throughout the docs and golden tests: two
correct classroom machines, two buggy drafts kept as debugging exercises,
and the substring matcher for the pattern `b a b a`.
"""

from __future__ import annotations

from .machine import Machine, make_machine

ALPHABET = ("a", "b")


def starts_with_a() -> Machine:
    """Accepts words over {a, b} that start with an a."""
    return make_machine(
        ("S", "F"),
        ALPHABET,
        "S",
        ("F",),
        [("S", "a", "F"), ("F", "a", "F"), ("F", "b", "F")],
    )


def starts_ends_a() -> Machine:
    """Accepts words that start and end with an a."""
    return make_machine(
        ("S", "F", "A"),
        ALPHABET,
        "S",
        ("F",),
        [
            ("S", "a", "F"),
            ("F", "a", "F"),
            ("F", "b", "A"),
            ("A", "a", "F"),
            ("A", "b", "A"),
        ],
    )


STARTS_ENDS_A_INVARIANTS = {
    "S": "(empty)",
    "F": "(and (not (empty)) (first= a) (last= a))",
    "A": "(and (not (empty)) (first= a) (not (last= a)))",
    "ds": "(and (not (empty)) (not (first= a)))",
}


def starts_ends_a_buggy() -> Machine:
    """A buggy draft of starts_ends_a: the missing (J b ...) rule falls into
    the dead state, so any b after the leading a kills the word."""
    return make_machine(
        ("J", "K"),
        ALPHABET,
        "J",
        ("K",),
        [("J", "a", "K"), ("K", "a", "K"), ("K", "b", "J")],
    )


STARTS_ENDS_A_BUGGY_INVARIANTS = {
    "J": "(or (empty) (not (last= a)))",
    "K": "(and (first= a) (last= a))",
    "ds": "(and (not (empty)) (not (first= a)))",
}


def baba_matcher() -> Machine:
    """Accepts words containing `b a b a` as a contiguous subword.

    Each state records the longest suffix of the consumed input that is a
    prefix of the pattern: A none, B `b`, C `b a`, D `b a b`, F matched.
    """
    return make_machine(
        ("A", "B", "C", "D", "F"),
        ALPHABET,
        "A",
        ("F",),
        [
            ("A", "a", "A"),
            ("A", "b", "B"),
            ("B", "a", "C"),
            ("B", "b", "B"),
            ("C", "a", "A"),
            ("C", "b", "D"),
            ("D", "a", "F"),
            ("D", "b", "B"),
            ("F", "a", "F"),
            ("F", "b", "F"),
        ],
    )


# Refined invariants: each state's condition covers the entire consumed
# input, not just its tail.
BABA_MATCHER_INVARIANTS = {
    "A": "(and (not (suffix= b)) (not (suffix= b a)) (not (suffix= b a b))"
         " (not (contains b a b a)))",
    "B": "(and (suffix= b) (not (suffix= b a b)) (not (contains b a b a)))",
    "C": "(and (suffix= b a) (not (suffix= b a b)) (not (contains b a b a)))",
    "D": "(and (suffix= b a b) (not (contains b a b a)))",
    "F": "(contains b a b a)",
}


def baba_matcher_buggy() -> Machine:
    """The first draft of the matcher: (B b A) and (D b A) wrongly forget
    that the just-read b can start a new match."""
    return make_machine(
        ("A", "B", "C", "D", "F"),
        ALPHABET,
        "A",
        ("F",),
        [
            ("A", "a", "A"),
            ("A", "b", "B"),
            ("B", "a", "C"),
            ("B", "b", "A"),
            ("C", "a", "A"),
            ("C", "b", "D"),
            ("D", "a", "F"),
            ("D", "b", "A"),
            ("F", "a", "F"),
            ("F", "b", "F"),
        ],
    )


# The draft's invariants only look at the tail of the consumed input; they
# are too weak to support a correctness argument but are kept for the
# debugging walkthrough.
BABA_MATCHER_BUGGY_INVARIANTS = {
    "A": "(and (not (suffix= b)) (not (suffix= b a)) (not (suffix= b a b))"
         " (not (suffix= b a b a)))",
    "B": "(suffix= b)",
    "C": "(suffix= b a)",
    "D": "(suffix= b a b)",
    "F": "(contains b a b a)",
}

BUILTIN_MACHINES = {
    "a-star": (starts_with_a, {}),
    "a-star-a": (starts_ends_a, STARTS_ENDS_A_INVARIANTS),
    "a-star-a-buggy": (starts_ends_a_buggy, STARTS_ENDS_A_BUGGY_INVARIANTS),
    "baba": (baba_matcher, BABA_MATCHER_INVARIANTS),
    "baba-buggy": (baba_matcher_buggy, BABA_MATCHER_BUGGY_INVARIANTS),
}
