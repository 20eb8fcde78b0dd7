"""HTTP service backing the step debugger UI.

Sessions are in-memory and hold a *draft* machine definition that the user
edits piece by piece; RUN builds the machine (surfacing constructor errors
verbatim) and produces the annotated trace the UI steps through. Editing
anything invalidates the trace until the next RUN.

Status codes: 404 unknown session, 409 step/gencode while dirty or before a
run, 422 domain validation failure, 400 malformed payload.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI, HTTPException, Response

from .docio import (
    MachineDocument,
    document_from_payload,
    append_versioned,
    new_document,
    save_document,
)
from .errors import DfaError, NondeterminismError
from .invariants import AnnotatedTrace, annotate_trace, parse_binding, parse_invariant
from .machine import Machine, Rule, is_symbol_token, make_machine
from .payloads import canonical_json, machine_payload, rule_json, trace_payload
from .testgen import invariant_sweep, random_test


@dataclass
class Session:
    id: str
    name: str = "machine"
    states: list = dc_field(default_factory=list)
    alphabet: list = dc_field(default_factory=list)
    start: Optional[str] = None
    finals: list = dc_field(default_factory=list)
    rules: list = dc_field(default_factory=list)
    no_dead: bool = False
    invariants: dict = dc_field(default_factory=dict)
    tape: list = dc_field(default_factory=list)
    machine: Optional[Machine] = None
    binding: dict = dc_field(default_factory=dict)
    trace: Optional[AnnotatedTrace] = None
    cursor: int = 0
    dirty: bool = True
    lock: threading.Lock = dc_field(default_factory=threading.Lock, repr=False)

    def invalidate(self):
        self.trace = None
        self.cursor = 0
        self.dirty = True

    def load_draft(self, doc: MachineDocument):
        self.name = doc.name
        self.states = list(doc.declared_states())
        self.alphabet = list(doc.machine.alphabet)
        self.start = doc.machine.start
        self.finals = list(doc.machine.finals)
        self.rules = list(doc.machine.declared_rules)
        self.no_dead = doc.machine.no_dead
        self.invariants = dict(doc.invariants)
        self.invalidate()

    def build_document(self) -> MachineDocument:
        machine = make_machine(
            self.states, self.alphabet, self.start, self.finals, self.rules,
            no_dead=self.no_dead,
        )
        return new_document(self.name, machine, self.invariants)


def _bad_request(msg):
    raise HTTPException(status_code=400, detail=msg)


def _domain_error(msg):
    raise HTTPException(status_code=422, detail=str(msg))


def _conflict(msg):
    raise HTTPException(status_code=409, detail=msg)


def session_view(s: Session) -> dict:
    trace = None
    current = None
    previous = None
    rule_used = None
    verdict = None
    last_rule_index = None
    consumed = list(s.tape)
    unconsumed = []
    result = None
    if s.trace is not None:
        trace = trace_payload(s.trace, s.tape)
        step = s.trace.steps[s.cursor]
        current = step.state
        consumed = list(step.consumed)
        unconsumed = list(step.unconsumed)
        rule_used = rule_json(step.rule_used)
        verdict = step.verdict
        result = s.trace.result
        if s.cursor > 0:
            previous = s.trace.steps[s.cursor - 1].state
        if step.rule_used is not None and s.machine is not None:
            last_rule_index = s.machine.rules.index(step.rule_used)
    return {
        "id": s.id,
        "name": s.name,
        "draft": {
            "states": list(s.states),
            "alphabet": list(s.alphabet),
            "start": s.start,
            "finals": list(s.finals),
            "rules": [[r.src, r.sym, r.dst] for r in s.rules],
            "no_dead": s.no_dead,
        },
        "machine": machine_payload(s.machine) if s.machine else None,
        "invariants": dict(s.invariants),
        "tape": list(s.tape),
        "consumed": consumed,
        "unconsumed": unconsumed,
        "cursor": s.cursor,
        "dirty": s.dirty,
        "result": result,
        "current_state": current,
        "previous_state": previous,
        "rule_used": rule_used,
        "verdict": verdict,
        "last_rule_index": last_rule_index,
        "trace": trace,
    }


def create_app(root_dir=".", static_dir=None) -> FastAPI:
    app = FastAPI(title="dfakit debug service")
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()
    root = Path(root_dir)

    def get_session(session_id) -> Session:
        with store_lock:
            s = sessions.get(session_id)
        if s is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return s

    @app.post("/api/sessions", status_code=201)
    def create_session(payload: dict = Body(default={})):
        if not isinstance(payload, dict):
            _bad_request("payload must be a JSON object")
        s = Session(id=uuid.uuid4().hex)
        doc_payload = payload.get("document")
        if doc_payload is not None:
            if not isinstance(doc_payload, dict):
                _bad_request("document must be a JSON object")
            try:
                s.load_draft(document_from_payload(doc_payload))
            except DfaError as exc:
                _domain_error(exc)
        with store_lock:
            sessions[s.id] = s
        return session_view(s)

    @app.get("/api/sessions/{session_id}")
    def get_view(session_id: str):
        s = get_session(session_id)
        with s.lock:
            return session_view(s)

    @app.post("/api/sessions/{session_id}/edit")
    def edit(session_id: str, payload: dict = Body(...)):
        s = get_session(session_id)
        with s.lock:
            _apply_edit(s, payload)
            return session_view(s)

    @app.post("/api/sessions/{session_id}/tape")
    def set_tape(session_id: str, payload: dict = Body(...)):
        s = get_session(session_id)
        with s.lock:
            symbols = payload.get("symbols")
            if not isinstance(symbols, list) or not all(
                isinstance(x, str) for x in symbols
            ):
                _bad_request("symbols must be a list of strings")
            for sym in symbols:
                if sym not in s.alphabet:
                    _domain_error(f"tape symbol {sym!r} is not in the alphabet")
            if payload.get("append"):
                s.tape.extend(symbols)
            else:
                s.tape = list(symbols)
            s.trace = None
            s.cursor = 0
            return session_view(s)

    @app.delete("/api/sessions/{session_id}/tape")
    def clear_tape(session_id: str):
        s = get_session(session_id)
        with s.lock:
            s.tape = []
            s.trace = None
            s.cursor = 0
            return session_view(s)

    @app.post("/api/sessions/{session_id}/run")
    def run(session_id: str):
        s = get_session(session_id)
        with s.lock:
            if s.start is None:
                _domain_error("no start state is set")
            try:
                machine = make_machine(
                    s.states, s.alphabet, s.start, s.finals, s.rules,
                    no_dead=s.no_dead,
                )
                binding = parse_binding(
                    machine,
                    {st: src for st, src in s.invariants.items()},
                )
                trace = annotate_trace(machine, binding, s.tape)
            except DfaError as exc:
                _domain_error(exc)
            s.machine = machine
            s.binding = binding
            s.trace = trace
            s.cursor = 0
            s.dirty = False
            return session_view(s)

    @app.post("/api/sessions/{session_id}/step")
    def step(session_id: str, payload: dict = Body(...)):
        s = get_session(session_id)
        with s.lock:
            direction = payload.get("direction")
            if direction not in ("next", "prev"):
                _bad_request("direction must be 'next' or 'prev'")
            if s.dirty or s.trace is None:
                _conflict("run the machine before stepping")
            if direction == "next":
                if s.cursor + 1 >= len(s.trace.steps):
                    _conflict("already at the last step")
                s.cursor += 1
            else:
                if s.cursor == 0:
                    _conflict("already at the first step")
                s.cursor -= 1
            return session_view(s)

    @app.post("/api/sessions/{session_id}/gencode")
    def gencode(session_id: str, payload: dict = Body(default={})):
        s = get_session(session_id)
        with s.lock:
            if s.dirty or s.machine is None:
                _conflict("run the machine before generating code")
            try:
                doc = s.build_document()
            except DfaError as exc:
                _domain_error(exc)
            from .docio import emit_source

            target = payload.get("path") or f"{s.name}.gen.rkt"
            path = root / target
            revision = append_versioned(path, doc)
            return {
                "revision": revision,
                "path": str(path),
                "source": emit_source(doc),
                "session": session_view(s),
            }

    @app.post("/api/sessions/{session_id}/test")
    def run_tests(session_id: str, payload: dict = Body(default={})):
        s = get_session(session_id)
        with s.lock:
            if s.dirty or s.machine is None:
                _conflict("run the machine before testing")
            n = payload.get("n", 100)
            seed = payload.get("seed")
            if not isinstance(n, int) or n < 0:
                _bad_request("n must be a nonnegative integer")
            report = random_test(s.machine, n=n, seed=seed)
            return {
                "seed": report.seed,
                "count": report.count,
                "entries": [
                    {"word": list(w), "result": r} for w, r in report.entries
                ],
            }

    @app.post("/api/sessions/{session_id}/sweep")
    def sweep(session_id: str):
        s = get_session(session_id)
        with s.lock:
            if s.dirty or s.machine is None:
                _conflict("run the machine before sweeping")
            try:
                report = invariant_sweep(s.machine, s.binding)
            except DfaError as exc:
                _domain_error(exc)
            return {
                "words_run": report.words_run,
                "transitions_covered": report.transitions_covered,
                "failures": [
                    {
                        "word": list(f.word),
                        "step_index": f.step_index,
                        "state": f.state,
                        "consumed": list(f.consumed),
                    }
                    for f in report.failures
                ],
            }

    @app.get("/api/sessions/{session_id}/trace")
    def get_trace(session_id: str):
        s = get_session(session_id)
        with s.lock:
            if s.trace is None:
                _conflict("run the machine to produce a trace")
            return Response(
                content=canonical_json(trace_payload(s.trace, s.tape)),
                media_type="application/json",
            )

    @app.get("/api/sessions/{session_id}/document")
    def get_document(session_id: str):
        s = get_session(session_id)
        with s.lock:
            try:
                doc = s.build_document()
            except DfaError as exc:
                _domain_error(exc)
            return Response(
                content=save_document(doc), media_type="application/json"
            )

    @app.post("/api/sessions/{session_id}/document")
    def put_document(session_id: str, payload: dict = Body(...)):
        s = get_session(session_id)
        with s.lock:
            doc_payload = payload.get("document")
            if not isinstance(doc_payload, dict):
                _bad_request("document must be a JSON object")
            try:
                s.load_draft(document_from_payload(doc_payload))
            except DfaError as exc:
                _domain_error(exc)
            return session_view(s)

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def _apply_edit(s: Session, payload: dict):
    if not isinstance(payload, dict) or "action" not in payload:
        _bad_request("edit payload needs an 'action'")
    action = payload["action"]

    def arg(key):
        value = payload.get(key)
        if not isinstance(value, str):
            _bad_request(f"edit {action!r} needs string field {key!r}")
        return value

    if action == "set_name":
        name = arg("name")
        if not is_symbol_token(name):
            _domain_error(f"{name!r} is not a valid machine name")
        s.name = name
    elif action == "add_state":
        name = arg("name")
        if not is_symbol_token(name):
            _domain_error(f"{name!r} is not a valid state name")
        if name in s.states:
            _domain_error(f"state {name!r} is already declared")
        s.states.append(name)
    elif action == "remove_state":
        name = arg("name")
        if name not in s.states:
            _domain_error(f"state {name!r} is not declared")
        s.states.remove(name)
        s.rules = [r for r in s.rules if name not in (r.src, r.dst)]
        s.invariants.pop(name, None)
        if s.start == name:
            s.start = None
        if name in s.finals:
            s.finals.remove(name)
    elif action == "add_symbol":
        name = arg("name")
        if not is_symbol_token(name):
            _domain_error(f"{name!r} is not a valid alphabet symbol")
        if name in s.alphabet:
            _domain_error(f"symbol {name!r} is already declared")
        s.alphabet.append(name)
    elif action == "remove_symbol":
        name = arg("name")
        if name not in s.alphabet:
            _domain_error(f"symbol {name!r} is not declared")
        s.alphabet.remove(name)
        s.rules = [r for r in s.rules if r.sym != name]
        s.tape = [t for t in s.tape if t != name]
    elif action == "add_rule":
        rule = Rule(arg("src"), arg("sym"), arg("dst"))
        if rule.src not in s.states or rule.dst not in s.states:
            _domain_error(f"rule {rule} references an undeclared state")
        if rule.sym not in s.alphabet:
            _domain_error(f"rule {rule} references an undeclared symbol")
        if rule in s.rules:
            _domain_error(f"rule {rule} is already declared")
        clash = [r for r in s.rules if (r.src, r.sym) == (rule.src, rule.sym)]
        if clash:
            _domain_error(str(NondeterminismError([clash + [rule]])))
        s.rules.append(rule)
    elif action == "remove_rule":
        rule = Rule(arg("src"), arg("sym"), arg("dst"))
        if rule not in s.rules:
            _domain_error(f"rule {rule} is not declared")
        s.rules.remove(rule)
    elif action == "set_start":
        name = arg("name")
        if name not in s.states:
            _domain_error(f"state {name!r} is not declared")
        s.start = name
    elif action == "toggle_final":
        name = arg("name")
        if name not in s.states:
            _domain_error(f"state {name!r} is not declared")
        if name in s.finals:
            s.finals.remove(name)
        else:
            s.finals.append(name)
    elif action == "set_invariant":
        state = arg("state")
        source = arg("source")
        try:
            parse_invariant(source)
        except DfaError as exc:
            _domain_error(exc)
        s.invariants[state] = source
    elif action == "clear_invariant":
        state = arg("state")
        s.invariants.pop(state, None)
    else:
        _bad_request(f"unknown edit action {action!r}")
    s.invalidate()
