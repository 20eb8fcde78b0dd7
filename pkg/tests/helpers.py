"""Shared test helpers: brute-force oracles kept deliberately independent
of the library's execution path, plus small random-machine generators."""

from __future__ import annotations

import itertools
import random

from dfakit import Rule, make_machine
from dfakit.invariants import (
    And,
    Contains,
    Empty,
    FalseExpr,
    FirstIs,
    Implies,
    LastIs,
    LenCmp,
    Not,
    Or,
    PrefixIs,
    SuffixIs,
    TrueExpr,
)


def all_words(alphabet, max_len):
    """Every word up to max_len in shortlex order (alphabet order for ties)."""
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield combo


def naive_accepts(machine, word):
    """Membership oracle that re-scans the raw rule list at every step
    instead of using the machine's transition table."""
    state = machine.start
    for sym in word:
        nxt = None
        for r in machine.rules:
            if r.src == state and r.sym == sym:
                nxt = r.dst
                break
        if nxt is None:
            return False
        state = nxt
    return state in machine.finals


def brute_shortest_difference(m1, m2, alphabet, max_len):
    """Shortest word (shortlex) accepted by exactly one machine, or None."""
    for w in all_words(alphabet, max_len):
        if naive_accepts(m1, w) != naive_accepts(m2, w):
            return w
    return None


def ref_contains(pattern, word):
    """Second, recursive-style subword check used as differential oracle."""
    pattern = tuple(pattern)
    word = tuple(word)
    if word[: len(pattern)] == pattern:
        return True
    if not word:
        return False
    return ref_contains(pattern, word[1:])


def ref_eval(expr, word):
    """Reference evaluator, written independently of eval_invariant."""
    word = tuple(word)
    match expr:
        case TrueExpr():
            return True
        case FalseExpr():
            return False
        case Empty():
            return word == ()
        case LenCmp(op=op, count=k):
            n = len(word)
            return {
                "=": n == k, "!=": n != k, "<": n < k,
                "<=": n <= k, ">": n > k, ">=": n >= k,
            }[op]
        case FirstIs(sym=s):
            return bool(word) and word[0] == s
        case LastIs(sym=s):
            return bool(word) and word[-1] == s
        case PrefixIs(word=p):
            return word[: len(p)] == p
        case SuffixIs(word=p):
            return len(word) >= len(p) and word[len(word) - len(p):] == p
        case Contains(word=p):
            return ref_contains(p, word)
        case Not(inner=e):
            return not ref_eval(e, word)
        case And(parts=ps):
            return all(ref_eval(p, word) for p in ps)
        case Or(parts=ps):
            return any(ref_eval(p, word) for p in ps)
        case Implies(antecedent=p, consequent=q):
            return ref_eval(q, word) if ref_eval(p, word) else True
    raise TypeError(expr)


ALPHABET = ("a", "b")


def random_machine(rng: random.Random, max_states=5, allow_partial=False):
    """A small random DFA over {a, b}."""
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    rules = []
    no_dead = False
    for q in states:
        for a in ALPHABET:
            if allow_partial and rng.random() < 0.2:
                continue
            rules.append(Rule(q, a, rng.choice(states)))
    if allow_partial:
        no_dead = rng.random() < 0.5
    finals = [q for q in states if rng.random() < 0.4]
    start = rng.choice(states)
    return make_machine(states, ALPHABET, start, finals, rules, no_dead=no_dead)


def random_word(rng: random.Random, max_len=8):
    return tuple(rng.choice(ALPHABET) for _ in range(rng.randint(0, max_len)))


def random_expr(rng: random.Random, depth=3):
    """A random invariant AST for differential and round-trip testing."""
    leaves = [
        lambda: TrueExpr(),
        lambda: FalseExpr(),
        lambda: Empty(),
        lambda: LenCmp(rng.choice(["=", "!=", "<", "<=", ">", ">="]), rng.randint(0, 6)),
        lambda: FirstIs(rng.choice(ALPHABET)),
        lambda: LastIs(rng.choice(ALPHABET)),
        lambda: PrefixIs(tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 3)))),
        lambda: SuffixIs(tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 3)))),
        lambda: Contains(tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 3)))),
    ]
    if depth <= 0:
        return rng.choice(leaves)()
    branches = [
        lambda: Not(random_expr(rng, depth - 1)),
        lambda: And(tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(1, 3)))),
        lambda: Or(tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(1, 3)))),
        lambda: Implies(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
    ]
    return rng.choice(leaves + branches)()
