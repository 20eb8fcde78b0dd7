import type { SessionView, TraceStep, Verdict } from "../src/types.js";

/** Mocked service views matching what the debug service returns for the
 * "starts and ends with a" machines (see docs/API.md for the shape). */

const TAPE = ["a", "a", "b", "a", "b", "a"];

function steps(states: string[], verdicts: Verdict[]): TraceStep[] {
  return states.map((state, i) => ({
    consumed: TAPE.slice(0, i),
    unconsumed: TAPE.slice(i),
    state,
    rule_used: null,
    verdict: verdicts[i],
  }));
}

/** Correct machine, paused after consuming (a a b a): current state F,
 * invariant holds. */
export function holdsView(): SessionView {
  const stateSeq = ["S", "F", "F", "A", "F", "A", "F"];
  const trace = {
    tape: TAPE,
    result: "accept" as const,
    steps: steps(stateSeq, Array(7).fill("holds") as Verdict[]),
  };
  return {
    id: "s1",
    name: "a-star-a",
    draft: {
      states: ["S", "F", "A"],
      alphabet: ["a", "b"],
      start: "S",
      finals: ["F"],
      rules: [
        ["S", "a", "F"], ["F", "a", "F"], ["F", "b", "A"],
        ["A", "a", "F"], ["A", "b", "A"],
      ],
      no_dead: false,
    },
    machine: {
      states: ["S", "F", "A", "ds"],
      alphabet: ["a", "b"],
      start: "S",
      finals: ["F"],
      rules: [
        ["S", "a", "F"], ["S", "b", "ds"], ["F", "a", "F"], ["F", "b", "A"],
        ["A", "a", "F"], ["A", "b", "A"], ["ds", "a", "ds"], ["ds", "b", "ds"],
      ],
      dead_added: true,
      dead_state: "ds",
    },
    invariants: { S: "(empty)" },
    tape: TAPE,
    consumed: TAPE.slice(0, 4),
    unconsumed: TAPE.slice(4),
    cursor: 4,
    dirty: false,
    result: "accept",
    current_state: "F",
    previous_state: "A",
    rule_used: ["A", "a", "F"],
    last_rule_index: 4,
    verdict: "holds",
    trace,
  };
}

/** Buggy machine stuck in the dead state after (a b b): invariant fails. */
export function failsView(): SessionView {
  const tape = ["a", "b", "b", "a", "b", "a"];
  const stateSeq = ["J", "K", "J", "ds", "ds", "ds", "ds"];
  const verdicts: Verdict[] = [
    "holds", "holds", "holds", "fails", "fails", "fails", "fails",
  ];
  const base = holdsView();
  return {
    ...base,
    id: "s2",
    name: "a-star-a-buggy",
    draft: {
      ...base.draft,
      states: ["J", "K"],
      finals: ["K"],
      start: "J",
      rules: [["J", "a", "K"], ["K", "a", "K"], ["K", "b", "J"]],
    },
    machine: {
      ...base.machine!,
      states: ["J", "K", "ds"],
      start: "J",
      finals: ["K"],
      rules: [
        ["J", "a", "K"], ["J", "b", "ds"], ["K", "a", "K"],
        ["K", "b", "J"], ["ds", "a", "ds"], ["ds", "b", "ds"],
      ],
    },
    tape,
    consumed: tape.slice(0, 3),
    unconsumed: tape.slice(3),
    cursor: 3,
    result: "reject",
    current_state: "ds",
    previous_state: "J",
    rule_used: ["J", "b", "ds"],
    last_rule_index: 1,
    verdict: "fails",
    trace: {
      tape,
      result: "reject",
      steps: tape.map((_, i) => ({
        consumed: tape.slice(0, i),
        unconsumed: tape.slice(i),
        state: stateSeq[i],
        rule_used: null,
        verdict: verdicts[i],
      })).concat([{
        consumed: tape,
        unconsumed: [],
        state: "ds",
        rule_used: null,
        verdict: "fails",
      }]),
    },
  };
}
