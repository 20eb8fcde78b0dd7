"""Deterministic finite automata: the data model, construction, and execution.

A machine is the usual quintuple (states, alphabet, start, finals, rules).
Construction validates everything and, unless asked not to, completes a
partial transition function by adding a non-final sink state with self-loops
(the "dead state"). Machines and traces are immutable values; all operations
here are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .errors import (
    EmptyAlphabetError,
    ForeignSymbolError,
    InvalidSymbolError,
    NondeterminismError,
    UndeclaredReferenceError,
)

Word = tuple[str, ...]

ACCEPT = "accept"
REJECT = "reject"
STUCK_REJECT = "stuck-reject"

# Symbols are single case-sensitive tokens. Parens, quotes, and semicolons
# are excluded so symbols survive the s-expression surface syntax.
_TOKEN_RE = re.compile(r"[^\s()'\";]+\Z")


def is_symbol_token(name) -> bool:
    return isinstance(name, str) and bool(_TOKEN_RE.match(name))


def _require_token(name, role):
    if not is_symbol_token(name):
        raise InvalidSymbolError(f"{role} {name!r} is not a valid symbol token")


class Rule(NamedTuple):
    """One transition: in state `src`, on input `sym`, go to state `dst`."""

    src: str
    sym: str
    dst: str

    def __str__(self):
        return f"({self.src} {self.sym} {self.dst})"


class Configuration(NamedTuple):
    """A point in a run: the input not yet consumed and the current state."""

    unconsumed: Word
    state: str


@dataclass(frozen=True)
class Trace:
    """The full run of a machine on a word: one configuration per step plus
    the terminal result (`stuck-reject` when a no-dead machine ran out of
    rules before consuming the whole word)."""

    steps: tuple[Configuration, ...]
    result: str


@dataclass(frozen=True)
class Machine:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    start: str
    finals: tuple[str, ...]
    rules: tuple[Rule, ...]  # complete, including any dead-state rules
    declared_rules: tuple[Rule, ...]  # the rules the caller supplied
    no_dead: bool = False
    dead_added: bool = False
    dead_state: Optional[str] = None

    # Derived lookup tables, rebuilt on construction; excluded from equality.
    delta: dict = field(init=False, compare=False, repr=False)
    rule_by_key: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "delta", {(r.src, r.sym): r.dst for r in self.rules}
        )
        object.__setattr__(
            self, "rule_by_key", {(r.src, r.sym): r for r in self.rules}
        )

    @property
    def is_total(self) -> bool:
        return len(self.delta) == len(self.states) * len(self.alphabet)

    def rule_for(self, state: str, sym: str) -> Optional[Rule]:
        return self.rule_by_key.get((state, sym))


def _dedupe(items: Iterable[str]) -> tuple[str, ...]:
    seen = {}
    for it in items:
        seen.setdefault(it, None)
    return tuple(seen)


def _sort_rules(rules, states: tuple[str, ...], alphabet: tuple[str, ...]):
    """Normalize rule order: by source state in declaration order, then by
    input symbol in alphabet order. Keeps traces, diffs, and generated code
    reproducible."""
    sidx = {s: i for i, s in enumerate(states)}
    aidx = {a: i for i, a in enumerate(alphabet)}
    return tuple(sorted(rules, key=lambda r: (sidx[r.src], aidx[r.sym])))


def _fresh_dead_name(taken) -> str:
    if "ds" not in taken:
        return "ds"
    n = 0
    while f"ds{n}" in taken:
        n += 1
    return f"ds{n}"


def make_machine(
    states,
    alphabet,
    start,
    finals,
    rules,
    no_dead: bool = False,
) -> Machine:
    """Validate and build a machine.

    Unless `no_dead` is set, any missing (state, symbol) transition is routed
    to a fresh dead state that loops to itself on every alphabet symbol.
    Raises NondeterminismError, UndeclaredReferenceError, EmptyAlphabetError,
    or InvalidSymbolError on bad input.
    """
    states = _dedupe(states)
    alphabet = _dedupe(alphabet)
    finals = _dedupe(finals)

    for s in states:
        _require_token(s, "state")
    for a in alphabet:
        _require_token(a, "alphabet symbol")
    if not alphabet:
        raise EmptyAlphabetError("the alphabet must not be empty")
    if not states:
        raise UndeclaredReferenceError("the state set must not be empty")

    state_set = set(states)
    alpha_set = set(alphabet)
    if start not in state_set:
        raise UndeclaredReferenceError(f"start state {start!r} is not a declared state")
    for f in finals:
        if f not in state_set:
            raise UndeclaredReferenceError(f"final state {f!r} is not a declared state")

    normalized = []
    seen_rules = set()
    for r in rules:
        r = Rule(*r)
        if r.src not in state_set:
            raise UndeclaredReferenceError(f"rule {r} uses undeclared state {r.src!r}")
        if r.dst not in state_set:
            raise UndeclaredReferenceError(f"rule {r} uses undeclared state {r.dst!r}")
        if r.sym not in alpha_set:
            raise UndeclaredReferenceError(f"rule {r} uses undeclared symbol {r.sym!r}")
        if r not in seen_rules:
            seen_rules.add(r)
            normalized.append(r)

    by_key = {}
    for r in normalized:
        by_key.setdefault((r.src, r.sym), []).append(r)
    conflicts = [g for g in by_key.values() if len(g) > 1]
    if conflicts:
        raise NondeterminismError(conflicts)

    declared = _sort_rules(normalized, states, alphabet)
    missing = [
        (q, a) for q in states for a in alphabet if (q, a) not in by_key
    ]

    dead_added = False
    dead_state = None
    all_rules = declared
    if missing and not no_dead:
        dead_state = _fresh_dead_name(state_set | alpha_set)
        dead_added = True
        states = states + (dead_state,)
        added = [Rule(q, a, dead_state) for q, a in missing]
        added += [Rule(dead_state, a, dead_state) for a in alphabet]
        all_rules = _sort_rules(list(declared) + added, states, alphabet)

    return Machine(
        states=states,
        alphabet=alphabet,
        start=start,
        finals=finals,
        rules=all_rules,
        declared_rules=declared,
        no_dead=no_dead,
        dead_added=dead_added,
        dead_state=dead_state,
    )


def check_word(m: Machine, word) -> Word:
    """Reject words containing symbols outside the machine's alphabet."""
    word = tuple(word)
    alpha = set(m.alphabet)
    for i, sym in enumerate(word):
        if sym not in alpha:
            raise ForeignSymbolError(sym, i)
    return word


def apply(m: Machine, word) -> str:
    """Run `m` on `word`; accept iff the run ends in a final state.

    A missing transition (possible only on no-dead machines) rejects.
    """
    word = check_word(m, word)
    delta = m.delta
    state = m.start
    for sym in word:
        nxt = delta.get((state, sym))
        if nxt is None:
            return REJECT
        state = nxt
    return ACCEPT if state in m.finals else REJECT


def show_transitions(m: Machine, word) -> Trace:
    """Run `m` on `word` recording every configuration.

    The first configuration holds the whole word in the start state; each
    step consumes one leading symbol. A no-dead machine that hits a missing
    rule stops early with result `stuck-reject`.
    """
    word = check_word(m, word)
    state = m.start
    steps = [Configuration(word, state)]
    for i, sym in enumerate(word):
        nxt = m.delta.get((state, sym))
        if nxt is None:
            return Trace(tuple(steps), STUCK_REJECT)
        state = nxt
        steps.append(Configuration(word[i + 1 :], state))
    result = ACCEPT if state in m.finals else REJECT
    return Trace(tuple(steps), result)
