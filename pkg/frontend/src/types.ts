/** Payload shapes served by the dfakit debug service (see docs/API.md). */

export type Result = "accept" | "reject" | "stuck-reject";
export type Verdict = "holds" | "fails" | "unbound";
export type RuleJson = [string, string, string];

export interface DraftView {
  states: string[];
  alphabet: string[];
  start: string | null;
  finals: string[];
  rules: RuleJson[];
  no_dead: boolean;
}

export interface MachineView {
  states: string[];
  alphabet: string[];
  start: string;
  finals: string[];
  rules: RuleJson[];
  dead_added: boolean;
  dead_state: string | null;
}

export interface TraceStep {
  consumed: string[];
  unconsumed: string[];
  state: string;
  rule_used: RuleJson | null;
  verdict: Verdict;
}

export interface TracePayload {
  tape: string[];
  result: Result;
  steps: TraceStep[];
}

export interface SessionView {
  id: string;
  name: string;
  draft: DraftView;
  machine: MachineView | null;
  invariants: Record<string, string>;
  tape: string[];
  consumed: string[];
  unconsumed: string[];
  cursor: number;
  dirty: boolean;
  result: Result | null;
  current_state: string | null;
  previous_state: string | null;
  rule_used: RuleJson | null;
  verdict: Verdict | null;
  last_rule_index: number | null;
  trace: TracePayload | null;
}

export interface GencodeResponse {
  revision: number;
  path: string;
  source: string;
  session: SessionView;
}
