"""Wire-format builders shared by the CLI and the HTTP service.

The CLI's structured trace output and the service's trace endpoint go
through the same builder and the same serializer, so the two surfaces are
byte-identical for identical inputs.
"""

from __future__ import annotations

import json

from .invariants import AnnotatedTrace
from .machine import Machine


def rule_json(rule):
    return None if rule is None else [rule.src, rule.sym, rule.dst]


def trace_payload(trace: AnnotatedTrace, tape) -> dict:
    return {
        "tape": list(tape),
        "result": trace.result,
        "steps": [
            {
                "consumed": list(s.consumed),
                "unconsumed": list(s.unconsumed),
                "state": s.state,
                "rule_used": rule_json(s.rule_used),
                "verdict": s.verdict,
            }
            for s in trace.steps
        ],
    }


def machine_payload(m: Machine) -> dict:
    return {
        "states": list(m.states),
        "alphabet": list(m.alphabet),
        "start": m.start,
        "finals": list(m.finals),
        "rules": [[r.src, r.sym, r.dst] for r in m.rules],
        "declared_rules": [[r.src, r.sym, r.dst] for r in m.declared_rules],
        "no_dead": m.no_dead,
        "dead_added": m.dead_added,
        "dead_state": m.dead_state,
    }


def canonical_json(payload) -> bytes:
    """The one serialization used on both the CLI and the wire."""
    return json.dumps(payload, separators=(",", ":"), sort_keys=False).encode("utf-8")
