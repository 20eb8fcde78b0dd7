import type { RuleJson, SessionView, Verdict } from "./types.js";

/** Pure renderers: session view in, SVG/HTML strings out. All interactive
 * behaviour lives elsewhere, which keeps every visual rule unit-testable. */

export interface Palette {
  holds: string;
  fails: string;
  unbound: string;
  consumed: string;
  lastRule: string;
}

export const DEFAULT_PALETTE: Palette = {
  holds: "#1a7f37", // green: invariant holds
  fails: "#c42828", // red: invariant fails
  unbound: "#555555",
  consumed: "#ffe9a8",
  lastRule: "#ffe9a8",
};

/** Alternative tones for color-blind mode (blue/orange instead of
 * green/red). */
export const COLORBLIND_PALETTE: Palette = {
  holds: "#0b67c2",
  fails: "#e07b00",
  unbound: "#555555",
  consumed: "#ffe9a8",
  lastRule: "#ffe9a8",
};

export function arrowColor(verdict: Verdict | null, palette: Palette): string {
  if (verdict === "holds") return palette.holds;
  if (verdict === "fails") return palette.fails;
  return palette.unbound;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** The tape: one cell per symbol, the consumed prefix highlighted. */
export function renderTape(view: SessionView, palette: Palette): string {
  const consumedCount = view.consumed.length;
  const cells = view.tape.map((sym, i) => {
    const consumed = i < consumedCount;
    const style = consumed ? ` style="background:${palette.consumed}"` : "";
    const cls = consumed ? "tape-cell consumed" : "tape-cell";
    return `<span class="${cls}"${style}>${escapeHtml(sym)}</span>`;
  });
  return `<div class="tape">${cells.join("")}</div>`;
}

export interface StatePosition {
  name: string;
  x: number;
  y: number;
}

/** States evenly spaced on a circle, declared order, dead state last. */
export function layoutStates(
  states: string[],
  deadState: string | null,
  cx = 200,
  cy = 200,
  radius = 150,
): StatePosition[] {
  const ordered = deadState
    ? [...states.filter((s) => s !== deadState), deadState]
    : [...states];
  return ordered.map((name, i) => {
    const angle = (2 * Math.PI * i) / ordered.length - Math.PI / 2;
    return {
      name,
      x: Math.round(cx + radius * Math.cos(angle)),
      y: Math.round(cy + radius * Math.sin(angle)),
    };
  });
}

function stateNode(
  pos: StatePosition,
  start: string | null,
  finals: string[],
): string {
  const circles = [`<circle cx="${pos.x}" cy="${pos.y}" r="18" class="state" fill="none" stroke="black"/>`];
  if (finals.includes(pos.name)) {
    // Final states get a second, outer circle.
    circles.push(
      `<circle cx="${pos.x}" cy="${pos.y}" r="23" class="final-ring" fill="none" stroke="black"/>`,
    );
  }
  const startMark = pos.name === start ? ` data-start="true"` : "";
  return (
    `<g class="state-node" data-state="${escapeHtml(pos.name)}"${startMark}>` +
    circles.join("") +
    `<text x="${pos.x}" y="${pos.y + 5}" text-anchor="middle">${escapeHtml(pos.name)}</text>` +
    `</g>`
  );
}

/** The control panel: states on a circle, a verdict-colored arrow from the
 * center to the current state labeled with the last symbol consumed, and a
 * dashed tail marker toward the previous state. */
export function renderControl(view: SessionView, palette: Palette): string {
  const machine = view.machine;
  const states = machine ? machine.states : view.draft.states;
  const deadState = machine?.dead_state ?? null;
  const positions = layoutStates(states, deadState);
  const parts: string[] = [];
  for (const pos of positions) {
    parts.push(stateNode(pos, machine?.start ?? view.draft.start, machine?.finals ?? view.draft.finals));
  }
  const current = positions.find((p) => p.name === view.current_state);
  if (current) {
    const color = arrowColor(view.verdict, palette);
    const lastSymbol = view.consumed.length
      ? view.consumed[view.consumed.length - 1]
      : "";
    parts.push(
      `<line x1="200" y1="200" x2="${current.x}" y2="${current.y}" ` +
        `class="current-arrow" stroke="${color}" stroke-width="3" marker-end="url(#head)"/>`,
    );
    if (lastSymbol) {
      const lx = Math.round((200 + current.x) / 2);
      const ly = Math.round((200 + current.y) / 2) - 6;
      parts.push(
        `<text x="${lx}" y="${ly}" class="arrow-label" fill="${color}">${escapeHtml(lastSymbol)}</text>`,
      );
    }
  }
  const previous = positions.find((p) => p.name === view.previous_state);
  if (previous && view.previous_state !== view.current_state) {
    parts.push(
      `<line x1="200" y1="200" x2="${previous.x}" y2="${previous.y}" ` +
        `class="previous-arrow" stroke="#999" stroke-dasharray="5 4"/>`,
      `<circle cx="200" cy="200" r="4" class="previous-tail" fill="#999"/>`,
    );
  }
  return (
    `<svg viewBox="0 0 400 400" class="control">` +
    `<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto">` +
    `<path d="M0,0 L6,3 L0,6 z"/></marker></defs>` +
    parts.join("") +
    `</svg>`
  );
}

function sameRule(a: RuleJson, b: RuleJson): boolean {
  return a[0] === b[0] && a[1] === b[1] && a[2] === b[2];
}

/** The scrollable rule list; the rule used by the current step is
 * highlighted. */
export function renderRules(view: SessionView, palette: Palette): string {
  const rules = view.machine ? view.machine.rules : view.draft.rules;
  const items = rules.map((rule) => {
    const used = view.rule_used !== null && sameRule(rule, view.rule_used);
    const style = used ? ` style="background:${palette.lastRule}"` : "";
    const cls = used ? "rule last-used" : "rule";
    return `<li class="${cls}"${style}>(${rule.map(escapeHtml).join(" ")})</li>`;
  });
  return `<ol class="rules" style="overflow-y:auto">${items.join("")}</ol>`;
}

/** One line of status: machine name, result, and the current verdict. */
export function renderStatus(view: SessionView): string {
  const bits = [escapeHtml(view.name)];
  if (view.result) bits.push(view.result);
  if (view.verdict) bits.push(`invariant ${view.verdict}`);
  if (view.dirty) bits.push("edited — run to refresh");
  return `<div class="status">${bits.join(" · ")}</div>`;
}

export function renderSession(
  view: SessionView,
  colorblind = false,
): string {
  const palette = colorblind ? COLORBLIND_PALETTE : DEFAULT_PALETTE;
  return [
    renderStatus(view),
    renderTape(view, palette),
    renderControl(view, palette),
    renderRules(view, palette),
  ].join("\n");
}
