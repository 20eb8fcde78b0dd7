"""Command-line driver.

Exit codes: 0 success, 1 domain negative (reject, counterexample, sweep
failure) where noted, 2 usage error, 3 validation error with the
constructor's message.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra, docio, testgen
from .errors import DfaError
from .invariants import annotate_trace, parse_binding
from .machine import ACCEPT, apply, show_transitions
from .payloads import canonical_json, trace_payload

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3


def parse_tape(text: str):
    """Tape symbols are whitespace-separated tokens."""
    return tuple(text.split())


def _load(path) -> docio.MachineDocument:
    return docio.load_document_file(path)


def _emit(args, payload, text_lines):
    if args.format == "structured":
        sys.stdout.write(canonical_json(payload).decode("utf-8") + "\n")
    else:
        for line in text_lines:
            print(line)


def cmd_validate(args):
    doc = _load(args.file)
    m = doc.machine
    _emit(
        args,
        {
            "name": doc.name,
            "states": len(m.states),
            "alphabet": len(m.alphabet),
            "rules": len(m.rules),
            "dead_added": m.dead_added,
        },
        [
            f"{doc.name}: ok "
            f"({len(m.states)} states, {len(m.rules)} rules"
            + (", dead state added)" if m.dead_added else ")")
        ],
    )
    return EXIT_OK


def cmd_run(args):
    doc = _load(args.file)
    result = apply(doc.machine, parse_tape(args.tape))
    _emit(args, {"result": result}, [result])
    if args.strict and result != ACCEPT:
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_trace(args):
    doc = _load(args.file)
    tape = parse_tape(args.tape)
    binding_sources = doc.invariants if args.invariants else {}
    binding = parse_binding(doc.machine, binding_sources)
    annotated = annotate_trace(doc.machine, binding, tape)
    payload = trace_payload(annotated, tape)
    lines = []
    for step in annotated.steps:
        line = f"({' '.join(step.unconsumed)}) {step.state}"
        if args.invariants:
            line += f"  [{step.verdict}]"
        lines.append(line)
    lines.append(annotated.result)
    _emit(args, payload, lines)
    if args.strict and annotated.result != ACCEPT:
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_test(args):
    doc = _load(args.file)
    report = testgen.random_test(doc.machine, n=args.n, seed=args.seed)
    payload = {
        "seed": report.seed,
        "count": report.count,
        "entries": [{"word": list(w), "result": r} for w, r in report.entries],
    }
    lines = [f"seed {report.seed}"] + [
        f"({' '.join(w)}) {r}" for w, r in report.entries
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_cover(args):
    doc = _load(args.file)
    cover = testgen.transition_cover(doc.machine)
    payload = {
        "words": [
            {"rule": [r.src, r.sym, r.dst], "word": list(w)}
            for r, w in cover.words.items()
        ],
        "uncovered": [[r.src, r.sym, r.dst] for r in cover.uncovered],
    }
    lines = [f"{r}  ({' '.join(w)})" for r, w in cover.words.items()]
    lines += [f"{r}  uncovered" for r in cover.uncovered]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_sweep(args):
    doc = _load(args.file)
    binding = parse_binding(doc.machine, doc.invariants)
    extra = [parse_tape(t) for t in args.word]
    report = testgen.invariant_sweep(doc.machine, binding, extra)
    payload = {
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
    lines = [
        f"{report.words_run} words, {report.transitions_covered} transitions covered"
    ]
    for f in report.failures:
        lines.append(
            f"FAIL state {f.state} at step {f.step_index}"
            f" of ({' '.join(f.word)}): consumed ({' '.join(f.consumed)})"
        )
    if not report.failures:
        lines.append("no invariant failures")
    _emit(args, payload, lines)
    if args.strict and report.failures:
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_equiv(args):
    doc1 = _load(args.file1)
    doc2 = _load(args.file2)
    outcome = algebra.same_language(doc1.machine, doc2.machine)
    if outcome.equivalent:
        _emit(args, {"equivalent": True}, ["equivalent"])
        return EXIT_OK
    by = doc1.name if outcome.accepted_by == algebra.LEFT else doc2.name
    _emit(
        args,
        {
            "equivalent": False,
            "counterexample": list(outcome.witness),
            "accepted_by": by,
        },
        [f"counterexample: {' '.join(outcome.witness)} (accepted by {by})"],
    )
    return EXIT_DOMAIN


def cmd_op(args):
    docs = [_load(f) for f in args.files]
    if args.operation == "complement":
        if len(docs) != 1:
            raise UsageError("complement takes exactly one machine file")
        machine = algebra.complement(docs[0].machine)
        name = f"not-{docs[0].name}"
    else:
        if len(docs) != 2:
            raise UsageError(f"{args.operation} takes exactly two machine files")
        machine = algebra.product(docs[0].machine, docs[1].machine, args.operation)
        name = f"{docs[0].name}-{args.operation}-{docs[1].name}"
    out_doc = docio.new_document(name, machine)
    docio.save_document_file(args.output, out_doc)
    _emit(
        args,
        {"name": name, "output": args.output, "states": len(machine.states)},
        [f"wrote {args.output} ({len(machine.states)} states)"],
    )
    return EXIT_OK


def cmd_gencode(args):
    doc = _load(args.file)
    target = args.output or f"{doc.name}.gen.rkt"
    revision = docio.append_versioned(target, doc)
    _emit(
        args,
        {"path": target, "revision": revision},
        [f"wrote revision {revision} to {target}"],
    )
    return EXIT_OK


def cmd_bench(args):
    pattern = parse_tape(args.pattern)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = testgen.matcher_benchmark(pattern, sizes, runs=args.runs)
    sys.stdout.write(testgen.benchmark_csv(rows))
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    app = create_app(root_dir=args.root, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfakit",
        description="Construct, run, combine, test, and debug DFAs with state invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--format", choices=["text", "structured"], default="text",
            help="human-readable text or machine-readable JSON",
        )

    p = sub.add_parser("validate", help="check a machine document")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("run", help="apply a machine to a tape")
    p.add_argument("file")
    p.add_argument("--tape", required=True, help="whitespace-separated symbols")
    p.add_argument("--strict", action="store_true",
                   help="exit 1 on reject")
    common(p)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("trace", help="show every configuration of a run")
    p.add_argument("file")
    p.add_argument("--tape", required=True)
    p.add_argument("--invariants", action="store_true",
                   help="evaluate the document's state invariants at each step")
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("test", help="random testing")
    p.add_argument("file")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_test)

    p = sub.add_parser("cover", help="transition-cover words")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_cover)

    p = sub.add_parser("sweep", help="invariant sweep over the transition cover")
    p.add_argument("file")
    p.add_argument("--word", action="append", default=[],
                   help="extra tape to sweep (repeatable)")
    p.add_argument("--strict", action="store_true",
                   help="exit 1 if any invariant fails")
    common(p)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("equiv", help="language equivalence of two machines")
    p.add_argument("file1")
    p.add_argument("file2")
    common(p)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("op", help="complement / union / intersection")
    p.add_argument("operation", choices=["complement", "union", "intersection"])
    p.add_argument("files", nargs="+")
    p.add_argument("-o", "--output", required=True)
    common(p)
    p.set_defaults(fn=cmd_op)

    p = sub.add_parser("gencode", help="append generated machine source")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    common(p)
    p.set_defaults(fn=cmd_gencode)

    p = sub.add_parser("bench", help="matcher scaling benchmark (CSV)")
    p.add_argument("--pattern", default="b a b a")
    p.add_argument("--sizes", default="25000,50000,100000")
    p.add_argument("--runs", type=int, default=5)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("serve", help="start the debugger service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--root", default=".", help="directory for generated files")
    p.add_argument("--static", default=None, help="built UI assets to serve")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except DfaError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
