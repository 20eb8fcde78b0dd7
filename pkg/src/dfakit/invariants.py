"""A small expression language for state invariants over the consumed input.

Invariants are data, not host-language callables, so they can live inside
machine documents and travel over the wire to the debugger UI. The grammar
is parenthesized prefix notation:

    true | false
    (empty)
    (len= k) (len!= k) (len< k) (len<= k) (len> k) (len>= k)
    (first= s) (last= s)
    (prefix= s ...) (suffix= s ...) (contains s ...)
    (not e) (and e ...) (or e ...) (implies e e)

The single implicit free variable is the consumed part of the input word.
`first=` and `last=` are false on the empty word; `prefix=`/`suffix=`/
`contains` require a nonempty pattern (an empty pattern is vacuously true
and rejected at parse time).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    ArityError,
    ExprSyntaxError,
    UndeclaredReferenceError,
    UnknownFormError,
)
from .machine import Machine, Rule, Word, is_symbol_token, show_transitions


@dataclass(frozen=True)
class TrueExpr:
    pass


@dataclass(frozen=True)
class FalseExpr:
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class LenCmp:
    op: str  # one of = != < <= > >=
    count: int


@dataclass(frozen=True)
class FirstIs:
    sym: str


@dataclass(frozen=True)
class LastIs:
    sym: str


@dataclass(frozen=True)
class PrefixIs:
    word: Word


@dataclass(frozen=True)
class SuffixIs:
    word: Word


@dataclass(frozen=True)
class Contains:
    word: Word


@dataclass(frozen=True)
class Not:
    inner: "InvariantExpr"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    antecedent: "InvariantExpr"
    consequent: "InvariantExpr"


InvariantExpr = Union[
    TrueExpr, FalseExpr, Empty, LenCmp, FirstIs, LastIs,
    PrefixIs, SuffixIs, Contains, Not, And, Or, Implies,
]

_LEN_OPS = {"len=": "=", "len!=": "!=", "len<": "<",
            "len<=": "<=", "len>": ">", "len>=": ">="}
_LEN_FORMS = {v: k for k, v in _LEN_OPS.items()}


def _tokenize(text: str):
    """Yield (token, position) pairs; parens are their own tokens."""
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    return tokens


class _Reader:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", self.length)
        self.pos += 1
        return tok


def _read_sexpr(reader: _Reader):
    tok, pos = reader.next()
    if tok == "(":
        items = []
        while True:
            nxt = reader.peek()
            if nxt is None:
                raise ExprSyntaxError("missing closing parenthesis", reader.length)
            if nxt[0] == ")":
                reader.next()
                return items, pos
            items.append(_read_sexpr(reader))
    if tok == ")":
        raise ExprSyntaxError("unexpected ')'", pos)
    return tok, pos


def _expect_symbol(item, pos):
    value, at = item if isinstance(item, tuple) and not isinstance(item, list) else (item, pos)
    if isinstance(value, list):
        raise ExprSyntaxError("expected a symbol, got a list", at)
    if not is_symbol_token(value):
        raise ExprSyntaxError(f"{value!r} is not a valid symbol", at)
    return value


def _expr_from_sexpr(node, pos) -> InvariantExpr:
    if not isinstance(node, list):
        if node == "true":
            return TrueExpr()
        if node == "false":
            return FalseExpr()
        raise UnknownFormError(f"unknown atom {node!r}; expected true or false")
    if not node:
        raise ExprSyntaxError("empty form", pos)
    head, head_pos = node[0]
    if isinstance(head, list):
        raise ExprSyntaxError("form head must be a symbol", head_pos)
    args = node[1:]

    def need(n):
        if len(args) != n:
            raise ArityError(f"({head} ...) takes {n} argument(s), got {len(args)}")

    def word_args(minimum=1):
        if len(args) < minimum:
            raise ArityError(f"({head} ...) needs at least {minimum} symbol(s)")
        return tuple(_expect_symbol(a, head_pos) for a in args)

    if head == "empty":
        need(0)
        return Empty()
    if head in _LEN_OPS:
        need(1)
        raw = _expect_symbol(args[0], head_pos)
        if not raw.isdigit():
            raise ExprSyntaxError(f"{head} expects a nonnegative integer, got {raw!r}", head_pos)
        return LenCmp(_LEN_OPS[head], int(raw))
    if head == "first=":
        need(1)
        return FirstIs(_expect_symbol(args[0], head_pos))
    if head == "last=":
        need(1)
        return LastIs(_expect_symbol(args[0], head_pos))
    if head == "prefix=":
        return PrefixIs(word_args())
    if head == "suffix=":
        return SuffixIs(word_args())
    if head == "contains":
        return Contains(word_args())
    if head == "not":
        need(1)
        return Not(_sub(args[0]))
    if head == "and":
        if not args:
            raise ArityError("(and ...) needs at least one argument")
        return And(tuple(_sub(a) for a in args))
    if head == "or":
        if not args:
            raise ArityError("(or ...) needs at least one argument")
        return Or(tuple(_sub(a) for a in args))
    if head == "implies":
        need(2)
        return Implies(_sub(args[0]), _sub(args[1]))
    raise UnknownFormError(f"unknown form {head!r}")


def _sub(item):
    node, pos = item
    return _expr_from_sexpr(node, pos)


def parse_invariant(text: str) -> InvariantExpr:
    """Parse invariant source text into an AST; inverse of print_invariant."""
    reader = _Reader(_tokenize(text), len(text))
    item = _read_sexpr(reader)
    leftover = reader.peek()
    if leftover is not None:
        raise ExprSyntaxError(f"trailing input {leftover[0]!r}", leftover[1])
    return _sub(item)


def print_invariant(e: InvariantExpr) -> str:
    """Render an AST back to canonical source text."""
    if isinstance(e, TrueExpr):
        return "true"
    if isinstance(e, FalseExpr):
        return "false"
    if isinstance(e, Empty):
        return "(empty)"
    if isinstance(e, LenCmp):
        return f"({_LEN_FORMS[e.op]} {e.count})"
    if isinstance(e, FirstIs):
        return f"(first= {e.sym})"
    if isinstance(e, LastIs):
        return f"(last= {e.sym})"
    if isinstance(e, PrefixIs):
        return "(prefix= %s)" % " ".join(e.word)
    if isinstance(e, SuffixIs):
        return "(suffix= %s)" % " ".join(e.word)
    if isinstance(e, Contains):
        return "(contains %s)" % " ".join(e.word)
    if isinstance(e, Not):
        return f"(not {print_invariant(e.inner)})"
    if isinstance(e, And):
        return "(and %s)" % " ".join(print_invariant(p) for p in e.parts)
    if isinstance(e, Or):
        return "(or %s)" % " ".join(print_invariant(p) for p in e.parts)
    if isinstance(e, Implies):
        return "(implies %s %s)" % (
            print_invariant(e.antecedent),
            print_invariant(e.consequent),
        )
    raise TypeError(f"not an invariant expression: {e!r}")


_CMP = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def eval_invariant(e: InvariantExpr, consumed) -> bool:
    """Evaluate an invariant on the consumed input. Total on all words."""
    consumed = tuple(consumed)
    if isinstance(e, TrueExpr):
        return True
    if isinstance(e, FalseExpr):
        return False
    if isinstance(e, Empty):
        return len(consumed) == 0
    if isinstance(e, LenCmp):
        return _CMP[e.op](len(consumed), e.count)
    if isinstance(e, FirstIs):
        return len(consumed) > 0 and consumed[0] == e.sym
    if isinstance(e, LastIs):
        return len(consumed) > 0 and consumed[-1] == e.sym
    if isinstance(e, PrefixIs):
        return consumed[: len(e.word)] == e.word
    if isinstance(e, SuffixIs):
        return len(consumed) >= len(e.word) and consumed[-len(e.word) :] == e.word
    if isinstance(e, Contains):
        k = len(e.word)
        return any(consumed[i : i + k] == e.word for i in range(len(consumed) - k + 1))
    if isinstance(e, Not):
        return not eval_invariant(e.inner, consumed)
    if isinstance(e, And):
        return all(eval_invariant(p, consumed) for p in e.parts)
    if isinstance(e, Or):
        return any(eval_invariant(p, consumed) for p in e.parts)
    if isinstance(e, Implies):
        return (not eval_invariant(e.antecedent, consumed)) or eval_invariant(
            e.consequent, consumed
        )
    raise TypeError(f"not an invariant expression: {e!r}")


HOLDS = "holds"
FAILS = "fails"
UNBOUND = "unbound"


@dataclass(frozen=True)
class AnnotatedStep:
    """One trace step enriched with the consumed prefix, the rule that got
    us here (None for the initial step), and the invariant verdict for the
    current state."""

    consumed: Word
    unconsumed: Word
    state: str
    rule_used: Optional[Rule]
    verdict: str


@dataclass(frozen=True)
class AnnotatedTrace:
    steps: tuple[AnnotatedStep, ...]
    result: str


def check_binding(m: Machine, binding: dict) -> dict:
    """Ensure every bound state exists on the machine."""
    for state in binding:
        if state not in m.states:
            raise UndeclaredReferenceError(
                f"invariant bound to undeclared state {state!r}"
            )
    return binding


def annotate_trace(m: Machine, binding: dict, word) -> AnnotatedTrace:
    """Run `m` on `word` and evaluate each state's invariant on the consumed
    prefix at every step. The binding may be partial; unbound states get the
    verdict `unbound`."""
    check_binding(m, binding)
    trace = show_transitions(m, word)
    full = trace.steps[0].unconsumed if trace.steps else tuple(word)
    steps = []
    for i, conf in enumerate(trace.steps):
        consumed = full[: len(full) - len(conf.unconsumed)]
        if i == 0:
            rule = None
        else:
            rule = m.rule_for(trace.steps[i - 1].state, consumed[-1])
        expr = binding.get(conf.state)
        if expr is None:
            verdict = UNBOUND
        elif eval_invariant(expr, consumed):
            verdict = HOLDS
        else:
            verdict = FAILS
        steps.append(
            AnnotatedStep(
                consumed=consumed,
                unconsumed=conf.unconsumed,
                state=conf.state,
                rule_used=rule,
                verdict=verdict,
            )
        )
    return AnnotatedTrace(tuple(steps), trace.result)


def parse_binding(m: Machine, sources: dict) -> dict:
    """Parse a {state: invariant source} map into a {state: AST} binding."""
    binding = {state: parse_invariant(src) for state, src in sources.items()}
    return check_binding(m, binding)
