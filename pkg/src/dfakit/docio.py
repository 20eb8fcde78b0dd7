"""Machine documents on disk and generated machine-definition source.

Two formats live here:

* `.fsmx` documents — JSON (UTF-8) carrying the declared machine, named
  invariant sources, and metadata. See docs/FORMATS.md for the schema.
* generated `.gen.rkt` source — append-only files of
  `(define <name> (make-dfa ...))` blocks, each preceded by a
  `;; generated <ISO-8601 UTC timestamp> revision <k>` comment line.

Documents store the machine as declared: synthesized dead-state rules are
never written, and re-loading reconstructs them deterministically.
"""

from __future__ import annotations

import fcntl
import json
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from .errors import InvalidDocumentError, ParseError
from .invariants import parse_binding
from .machine import Machine, Rule, is_symbol_token, make_machine

FORMAT_NAME = "fsmx"
FORMAT_VERSION = 1

GENERATED_MARKER = ";; generated"


def _utc_now() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


@dataclass(frozen=True)
class MachineDocument:
    """A named machine plus its invariant sources and metadata."""

    name: str
    machine: Machine
    invariants: dict  # state -> invariant source string
    created: str
    revision: int = 0

    def declared_states(self) -> tuple[str, ...]:
        if self.machine.dead_added:
            return tuple(
                s for s in self.machine.states if s != self.machine.dead_state
            )
        return self.machine.states


def new_document(name: str, machine: Machine, invariants=None,
                 created=None, revision: int = 0) -> MachineDocument:
    doc = MachineDocument(
        name=name,
        machine=machine,
        invariants=dict(invariants or {}),
        created=created or _utc_now(),
        revision=revision,
    )
    _validate_document(doc)
    return doc


def _validate_document(doc: MachineDocument):
    if not is_symbol_token(doc.name):
        raise InvalidDocumentError(f"machine name {doc.name!r} is not a valid token")
    # Raises on unparsable sources or keys outside the state set.
    parse_binding(doc.machine, doc.invariants)


def save_document(doc: MachineDocument) -> bytes:
    """Serialize a document; inverse of load_document."""
    _validate_document(doc)
    m = doc.machine
    payload = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "name": doc.name,
        "machine": {
            "states": list(doc.declared_states()),
            "alphabet": list(m.alphabet),
            "start": m.start,
            "finals": list(m.finals),
            "rules": [[r.src, r.sym, r.dst] for r in m.declared_rules],
            "no_dead": m.no_dead,
        },
        "invariants": dict(doc.invariants),
        "metadata": {"created": doc.created, "revision": doc.revision},
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def document_from_payload(payload: dict) -> MachineDocument:
    """Build and validate a document from already-parsed JSON."""
    try:
        name = payload["name"]
        mdef = payload["machine"]
        states = mdef["states"]
        alphabet = mdef["alphabet"]
        start = mdef["start"]
        finals = mdef["finals"]
        rules = [Rule(*r) for r in mdef["rules"]]
        no_dead = bool(mdef.get("no_dead", False))
        meta = payload.get("metadata", {})
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed machine document: {exc}") from None
    machine = make_machine(states, alphabet, start, finals, rules, no_dead=no_dead)
    return new_document(
        name,
        machine,
        payload.get("invariants", {}),
        created=meta.get("created") or _utc_now(),
        revision=int(meta.get("revision", 0)),
    )


def load_document(data) -> MachineDocument:
    """Parse `.fsmx` bytes or text; constructor validation applies."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(payload, dict):
        raise ParseError("machine document must be a JSON object")
    return document_from_payload(payload)


def load_document_file(path) -> MachineDocument:
    return load_document(Path(path).read_bytes())


def save_document_file(path, doc: MachineDocument):
    Path(path).write_bytes(save_document(doc))


# --- generated definition source -------------------------------------------

def emit_source(doc: MachineDocument) -> str:
    """Render the document as a `(define <name> (make-dfa ...))` block.

    Only the rules the author declared are listed; synthesized dead-state
    rules are left implicit. Output is deterministic for a given document.
    """
    m = doc.machine
    pad = " " * (len(f"(define {doc.name} (make-dfa "))
    rule_pad = pad + "  "
    rule_lines = [f"({r.src} {r.sym} {r.dst})" for r in m.declared_rules]
    if rule_lines:
        rules_text = "'(" + ("\n" + rule_pad).join(rule_lines) + ")"
    else:
        rules_text = "'()"
    lines = [
        f"(define {doc.name} (make-dfa '({' '.join(doc.declared_states())})",
        pad + f"'({' '.join(m.alphabet)})",
        pad + f"'{m.start}",
        pad + f"'({' '.join(m.finals)})",
        pad + rules_text,
    ]
    if m.no_dead:
        lines.append(pad + "'no-dead")
    return "\n".join(lines) + "))\n"


def _tokenize_source(text: str):
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c.isspace():
            col += 1
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()'":
            tokens.append((c, line, col))
            col += 1
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()';":
                j += 1
            tokens.append((text[i:j], line, col))
            col += j - i
            i = j
    return tokens


class _SourceReader:
    def __init__(self, text):
        self.tokens = _tokenize_source(text)
        self.pos = 0

    def at_end(self):
        return self.pos >= len(self.tokens)

    def next(self):
        if self.at_end():
            raise ParseError("unexpected end of input")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def read(self):
        """One datum; quote reads through to the quoted datum."""
        tok, line, col = self.next()
        if tok == "'":
            return self.read()
        if tok == "(":
            items = []
            while True:
                if self.at_end():
                    raise ParseError("missing closing parenthesis", line, col)
                if self.tokens[self.pos][0] == ")":
                    self.pos += 1
                    return items
                items.append(self.read())
        if tok == ")":
            raise ParseError("unexpected ')'", line, col)
        return tok


def _symbol_list(datum, what):
    if not isinstance(datum, list) or any(isinstance(x, list) for x in datum):
        raise ParseError(f"{what} must be a flat list of symbols")
    return list(datum)


def parse_source(text: str) -> MachineDocument:
    """Parse one `(define <name> (make-dfa ...))` block into a document."""
    reader = _SourceReader(text)
    form = reader.read()
    if not reader.at_end():
        extra = reader.tokens[reader.pos]
        raise ParseError(f"trailing input {extra[0]!r}", extra[1], extra[2])
    return _document_from_define(form)


def _document_from_define(form) -> MachineDocument:
    if not isinstance(form, list) or len(form) != 3 or form[0] != "define":
        raise ParseError("expected (define <name> (make-dfa ...))")
    name = form[1]
    if isinstance(name, list):
        raise ParseError("machine name must be a symbol")
    ctor = form[2]
    if not isinstance(ctor, list) or not ctor or ctor[0] != "make-dfa":
        raise ParseError("expected a make-dfa constructor call")
    args = ctor[1:]
    no_dead = False
    if args and args[-1] == "no-dead":
        no_dead = True
        args = args[:-1]
    if len(args) != 5:
        raise ParseError(
            f"make-dfa takes 5 arguments plus optional 'no-dead, got {len(args)}"
        )
    states = _symbol_list(args[0], "the state list")
    alphabet = _symbol_list(args[1], "the alphabet")
    start = args[2]
    if isinstance(start, list):
        raise ParseError("the start state must be a symbol")
    finals = _symbol_list(args[3], "the final-state list")
    if not isinstance(args[4], list):
        raise ParseError("the rule list must be a list")
    rules = []
    for r in args[4]:
        if not isinstance(r, list) or len(r) != 3 or any(isinstance(x, list) for x in r):
            raise ParseError(f"malformed rule {r!r}")
        rules.append(Rule(*r))
    machine = make_machine(states, alphabet, start, finals, rules, no_dead=no_dead)
    return new_document(name, machine)


def append_versioned(path, doc: MachineDocument) -> int:
    """Append the document's generated source to `path` with a timestamped
    header; returns the new revision number (1 + count of existing blocks).

    The file is only ever appended to; an advisory lock serializes
    concurrent writers on the same path.
    """
    path = Path(path)
    source = emit_source(doc)
    with open(path, "a+", encoding="utf-8") as fh:
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        try:
            fh.seek(0)
            existing = fh.read()
            revision = existing.count(GENERATED_MARKER + " ") + 1
            fh.seek(0, 2)
            fh.write(f"{GENERATED_MARKER} {_utc_now()} revision {revision}\n")
            fh.write(source)
            fh.write("\n")
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)
    return revision


def load_generated(path) -> list[MachineDocument]:
    """Parse every generated block in an append_versioned file, in order,
    with each document's revision taken from its header line."""
    text = Path(path).read_text(encoding="utf-8")
    docs = []
    current = []
    revision = 0
    for line in text.splitlines():
        if line.startswith(GENERATED_MARKER + " "):
            if current:
                docs.append(_finish_block(current, revision))
                current = []
            parts = line.split()
            revision = int(parts[-1]) if parts[-1].isdigit() else 0
        elif line.strip():
            current.append(line)
    if current:
        docs.append(_finish_block(current, revision))
    return docs


def _finish_block(lines, revision) -> MachineDocument:
    doc = parse_source("\n".join(lines))
    return replace(doc, revision=revision)
