"""Closure operations on regular languages and the equivalence decider.

Union and intersection use the reachable product construction; equivalence
is decided by building the symmetric-difference machine and checking its
language for emptiness via breadth-first reachability. Keeping only
reachable product states makes the finals-based and reachability-based
emptiness checks coincide.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import AlphabetMismatchError
from .machine import ACCEPT, Machine, Rule, Word, apply, make_machine

UNION = "union"
INTERSECTION = "intersection"


def completed(m: Machine) -> Machine:
    """Return `m` with a total transition function, adding a dead state if
    it was built with no_dead and left partial."""
    if m.is_total:
        return m
    return make_machine(
        m.states, m.alphabet, m.start, m.finals, m.declared_rules, no_dead=False
    )


def complement(m: Machine) -> Machine:
    """Swap final and non-final states; accepts exactly the words `m` rejects."""
    m = completed(m)
    finals = tuple(s for s in m.states if s not in set(m.finals))
    return make_machine(m.states, m.alphabet, m.start, finals, m.rules, no_dead=False)


def _check_alphabets(m1: Machine, m2: Machine):
    a1, a2 = set(m1.alphabet), set(m2.alphabet)
    if a1 != a2:
        raise AlphabetMismatchError(a1 - a2, a2 - a1)


def _fused(left: str, right: str) -> str:
    return f"{left}&{right}"


def product(m1: Machine, m2: Machine, mode: str) -> Machine:
    """Build the product machine over the states reachable from the fused
    start. `mode` is `union` (either component final) or `intersection`
    (both components final)."""
    if mode not in (UNION, INTERSECTION):
        raise ValueError(f"mode must be {UNION!r} or {INTERSECTION!r}, got {mode!r}")
    _check_alphabets(m1, m2)
    m1 = completed(m1)
    m2 = completed(m2)
    alphabet = m1.alphabet

    start = (m1.start, m2.start)
    order = [start]
    seen = {start}
    rules = []
    queue = deque([start])
    while queue:
        l, r = queue.popleft()
        for a in alphabet:
            nxt = (m1.delta[(l, a)], m2.delta[(r, a)])
            rules.append(Rule(_fused(l, r), a, _fused(*nxt)))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)

    names = [_fused(l, r) for l, r in order]
    if len(set(names)) != len(names):
        raise ValueError("fused product state names collide; rename the inputs")
    f1, f2 = set(m1.finals), set(m2.finals)
    if mode == UNION:
        finals = [_fused(l, r) for l, r in order if l in f1 or r in f2]
    else:
        finals = [_fused(l, r) for l, r in order if l in f1 and r in f2]
    return make_machine(names, alphabet, _fused(*start), finals, rules, no_dead=False)


def is_empty(m: Machine) -> tuple[bool, Optional[Word]]:
    """Decide whether the machine's language is empty by reachability.

    When nonempty, also return a shortest accepted word; ties are broken
    lexicographically in the machine's declared alphabet order (BFS
    expanding symbols in that order yields exactly this witness).
    """
    access = {m.start: ()}
    queue = deque([m.start])
    finals = set(m.finals)
    while queue:
        q = queue.popleft()
        if q in finals:
            return False, access[q]
        for a in m.alphabet:
            nxt = m.delta.get((q, a))
            if nxt is not None and nxt not in access:
                access[nxt] = access[q] + (a,)
                queue.append(nxt)
    return True, None


LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class LanguageComparison:
    """Outcome of an equivalence check. When the languages differ, `witness`
    is a shortest word in the symmetric difference and `accepted_by` names
    the machine (`left` or `right`) that accepts it."""

    equivalent: bool
    witness: Optional[Word] = None
    accepted_by: Optional[str] = None


def symmetric_difference(m1: Machine, m2: Machine) -> Machine:
    """Machine for the words accepted by exactly one of the inputs."""
    _check_alphabets(m1, m2)
    m1 = completed(m1)
    m2 = completed(m2)
    only_right = product(complement(m1), m2, INTERSECTION)
    only_left = product(m1, complement(m2), INTERSECTION)
    return product(only_left, only_right, UNION)


def same_language(m1: Machine, m2: Machine) -> LanguageComparison:
    """Decide whether two machines accept the same language.

    A non-equivalence witness is re-verified against both machines before
    being returned.
    """
    diff = symmetric_difference(m1, m2)
    empty, witness = is_empty(diff)
    if empty:
        return LanguageComparison(equivalent=True)
    left_accepts = apply(m1, witness) == ACCEPT
    right_accepts = apply(m2, witness) == ACCEPT
    if left_accepts == right_accepts:
        raise AssertionError(
            f"witness {witness!r} is not accepted by exactly one machine"
        )
    return LanguageComparison(
        equivalent=False,
        witness=witness,
        accepted_by=LEFT if left_accepts else RIGHT,
    )
