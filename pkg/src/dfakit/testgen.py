"""Machine testing support: random words, transition-cover generation, the
invariant sweep, and the matcher scaling benchmark."""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import EmptyAlphabetError, IncompleteError
from .invariants import FAILS, annotate_trace
from .machine import ACCEPT, Machine, Rule, Word, apply, make_machine


def random_words(alphabet, n: int, seed: int, max_len: int = 10) -> list[Word]:
    """Generate `n` words: length uniform on [0, max_len], symbols uniform
    over the alphabet. Fully determined by the seed; duplicates are kept."""
    alphabet = tuple(alphabet)
    if not alphabet:
        raise EmptyAlphabetError("cannot draw words from an empty alphabet")
    if n < 0 or max_len < 0:
        raise ValueError("n and max_len must be nonnegative")
    rng = random.Random(seed)
    words = []
    for _ in range(n):
        length = rng.randint(0, max_len)
        words.append(tuple(rng.choice(alphabet) for _ in range(length)))
    return words


@dataclass(frozen=True)
class TestReport:
    entries: tuple  # (word, result) pairs
    seed: int
    count: int


def random_test(m: Machine, n: int = 100, seed: Optional[int] = None,
                max_len: int = 10) -> TestReport:
    """Apply `m` to `n` randomly generated words over its own alphabet."""
    if seed is None:
        seed = random.randrange(2**32)
    words = random_words(m.alphabet, n, seed, max_len)
    entries = tuple((w, apply(m, w)) for w in words)
    return TestReport(entries=entries, seed=seed, count=n)


@dataclass(frozen=True)
class TransitionCover:
    """Per-rule access words: running the machine on words[r] uses rule r at
    the step right after r's source state's shortest access string. Rules
    whose source state is unreachable appear in `uncovered`."""

    words: dict
    uncovered: tuple[Rule, ...]


def _access_strings(m: Machine) -> dict:
    access = {m.start: ()}
    queue = deque([m.start])
    while queue:
        q = queue.popleft()
        for a in m.alphabet:
            nxt = m.delta.get((q, a))
            if nxt is not None and nxt not in access:
                access[nxt] = access[q] + (a,)
                queue.append(nxt)
    return access


def transition_cover(m: Machine) -> TransitionCover:
    """A word per reachable rule, exercising that rule when executed."""
    if not m.is_total:
        raise IncompleteError(
            "transition cover requires a total transition function"
        )
    access = _access_strings(m)
    words = {}
    uncovered = []
    for r in m.rules:
        if r.src in access:
            words[r] = access[r.src] + (r.sym,)
        else:
            uncovered.append(r)
    return TransitionCover(words=words, uncovered=tuple(uncovered))


@dataclass(frozen=True)
class SweepFailure:
    word: Word
    step_index: int
    state: str
    consumed: Word


@dataclass(frozen=True)
class SweepReport:
    failures: tuple[SweepFailure, ...]
    words_run: int
    transitions_covered: int


def invariant_sweep(m: Machine, binding: dict,
                    extra_words: Iterable[Word] = ()) -> SweepReport:
    """Run the transition-cover words plus any extra words, collecting every
    step whose state invariant evaluates to false on the consumed prefix."""
    cover = transition_cover(m)
    words = list(cover.words.values()) + [tuple(w) for w in extra_words]
    failures = []
    for w in words:
        annotated = annotate_trace(m, binding, w)
        for i, step in enumerate(annotated.steps):
            if step.verdict == FAILS:
                failures.append(
                    SweepFailure(
                        word=w,
                        step_index=i,
                        state=step.state,
                        consumed=step.consumed,
                    )
                )
    return SweepReport(
        failures=tuple(failures),
        words_run=len(words),
        transitions_covered=len(cover.words),
    )


def pattern_machine(pattern) -> Machine:
    """Compile a substring pattern into its matcher automaton.

    State k records that the longest suffix of the consumed input matching a
    prefix of the pattern has length k; the last state is an accepting sink.
    Next states are found by direct longest-suffix search, which is plenty
    for desk-size patterns.
    """
    pattern = tuple(pattern)
    if not pattern:
        raise ValueError("pattern must be nonempty")
    alphabet = []
    for s in pattern:
        if s not in alphabet:
            alphabet.append(s)
    n = len(pattern)
    states = [f"p{k}" for k in range(n + 1)]
    rules = []
    for k in range(n):
        for a in alphabet:
            tail = pattern[:k] + (a,)
            nxt = max(
                j for j in range(len(tail) + 1) if tail[len(tail) - j :] == pattern[:j]
            )
            rules.append((states[k], a, states[nxt]))
    for a in alphabet:
        rules.append((states[n], a, states[n]))
    return make_machine(states, alphabet, states[0], (states[n],), rules)


def naive_contains(pattern, word) -> bool:
    """Substring search by checking every suffix, rebuilding the remaining
    word one symbol at a time. Deliberately quadratic: the per-step rebuild
    mirrors a linked-list matcher that re-walks the remaining input on each
    recursive call. Used as the benchmark baseline and differential oracle."""
    pattern = list(pattern)
    rest = list(word)
    k = len(pattern)
    while len(rest) >= k:
        if rest[:k] == pattern:
            return True
        rest = rest[1:]
    return False


def dfa_contains(m: Machine, word) -> bool:
    return apply(m, word) == ACCEPT


@dataclass(frozen=True)
class BenchmarkRow:
    n: int
    dfa_ms: float
    naive_ms: float


def _median_ms(fn, runs: int) -> float:
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1000.0)
    times.sort()
    return times[len(times) // 2]


def matcher_benchmark(pattern, sizes: Sequence[int], runs: int = 5) -> list[BenchmarkRow]:
    """Time the compiled matcher against naive_contains on all-`a` words of
    the given lengths (worst case for the naive matcher: no match, full
    scan). Medians over `runs` wall-clock measurements."""
    pattern = tuple(pattern)
    machine = pattern_machine(pattern)
    rows = []
    for n in sizes:
        word = ["a"] * n
        dfa_ms = _median_ms(lambda: dfa_contains(machine, word), runs)
        naive_ms = _median_ms(lambda: naive_contains(pattern, word), runs)
        rows.append(BenchmarkRow(n=n, dfa_ms=dfa_ms, naive_ms=naive_ms))
    return rows


def benchmark_csv(rows: Iterable[BenchmarkRow]) -> str:
    lines = ["n,dfa_ms,naive_ms"]
    for r in rows:
        lines.append(f"{r.n},{r.dfa_ms:.3f},{r.naive_ms:.3f}")
    return "\n".join(lines) + "\n"
