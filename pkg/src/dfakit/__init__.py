"""dfakit: deterministic finite automata with machine-checked state invariants.

Build machines, execute them step by step, combine them with the regular
closure operations, decide language equivalence with shortest
counterexamples, test them with random words and transition covers, and
debug them interactively in the bundled web UI.
"""

from .algebra import (
    INTERSECTION,
    LEFT,
    RIGHT,
    UNION,
    LanguageComparison,
    complement,
    completed,
    is_empty,
    product,
    same_language,
    symmetric_difference,
)
from .docio import (
    MachineDocument,
    append_versioned,
    document_from_payload,
    emit_source,
    load_document,
    load_document_file,
    load_generated,
    new_document,
    parse_source,
    save_document,
    save_document_file,
)
from .errors import (
    AlphabetError,
    AlphabetMismatchError,
    ArityError,
    DfaError,
    EmptyAlphabetError,
    ExprError,
    ExprSyntaxError,
    ForeignSymbolError,
    IncompleteError,
    InvalidDocumentError,
    InvalidSymbolError,
    NondeterminismError,
    ParseError,
    UndeclaredReferenceError,
    UnknownFormError,
)
from .invariants import (
    FAILS,
    HOLDS,
    UNBOUND,
    AnnotatedStep,
    AnnotatedTrace,
    annotate_trace,
    eval_invariant,
    parse_binding,
    parse_invariant,
    print_invariant,
)
from .machine import (
    ACCEPT,
    REJECT,
    STUCK_REJECT,
    Configuration,
    Machine,
    Rule,
    Trace,
    apply,
    make_machine,
    show_transitions,
)
from .testgen import (
    BenchmarkRow,
    SweepFailure,
    SweepReport,
    TestReport,
    TransitionCover,
    benchmark_csv,
    invariant_sweep,
    matcher_benchmark,
    naive_contains,
    pattern_machine,
    random_test,
    random_words,
    transition_cover,
)

__version__ = "0.1.0"
