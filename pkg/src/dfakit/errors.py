"""Exception taxonomy shared across the toolkit.

Every error raised on bad user input derives from DfaError so callers
(CLI, HTTP service) can map the whole family to one exit code / status.
"""


class DfaError(Exception):
    """Base class for all domain errors."""


class InvalidSymbolError(DfaError):
    """A name is not a legal symbol token (empty, whitespace, parens, quotes)."""


class EmptyAlphabetError(DfaError):
    """A machine was declared with an empty alphabet."""


class UndeclaredReferenceError(DfaError):
    """A rule, start state, final state, or invariant key names something
    outside the declared state set / alphabet."""


class NondeterminismError(DfaError):
    """Two or more rules share the same (source state, input symbol)."""

    def __init__(self, groups):
        self.groups = tuple(tuple(g) for g in groups)
        listing = "; ".join(
            "{" + ", ".join(f"({r.src} {r.sym} {r.dst})" for r in g) + "}"
            for g in self.groups
        )
        super().__init__(f"nondeterministic transitions: {listing}")


class IncompleteError(DfaError):
    """An operation requires a total transition function but the machine
    was built with no_dead and is missing rules."""


class ForeignSymbolError(DfaError):
    """An input word contains a symbol outside the machine's alphabet."""

    def __init__(self, symbol, position):
        self.symbol = symbol
        self.position = position
        super().__init__(
            f"symbol {symbol!r} at position {position} is not in the alphabet"
        )


class AlphabetError(DfaError):
    """A machine cannot be completed to a total transition function."""


class AlphabetMismatchError(DfaError):
    """Two machines combined by an algebra operation have different alphabets."""

    def __init__(self, only_left, only_right):
        self.only_left = tuple(only_left)
        self.only_right = tuple(only_right)
        super().__init__(
            "alphabets differ: only in left %s, only in right %s"
            % (sorted(self.only_left), sorted(self.only_right))
        )


class ExprError(DfaError):
    """Base class for invariant-expression errors."""


class ExprSyntaxError(ExprError):
    """Malformed invariant source text."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class ArityError(ExprError):
    """A known form received the wrong number of arguments."""


class UnknownFormError(ExprError):
    """An s-expression head is not a recognized form."""


class ParseError(DfaError):
    """Malformed machine document or generated-source text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class InvalidDocumentError(DfaError):
    """A machine document is structurally well-formed but violates a
    document-level constraint."""
