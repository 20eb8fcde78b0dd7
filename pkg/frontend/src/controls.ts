import type { SessionView } from "./types.js";

/** Pure button/label logic for the left-hand control column. */

export interface ControlState {
  nextEnabled: boolean;
  prevEnabled: boolean;
  runEnabled: boolean;
  gencodeEnabled: boolean;
  /** Shown next to RUN when edits invalidated the current trace. */
  runPrompt: string | null;
}

export function controlState(view: SessionView): ControlState {
  const hasTrace = view.trace !== null && !view.dirty;
  const lastStep = view.trace ? view.trace.steps.length - 1 : 0;
  return {
    nextEnabled: hasTrace && view.cursor < lastStep,
    prevEnabled: hasTrace && view.cursor > 0,
    runEnabled: view.draft.start !== null,
    gencodeEnabled: !view.dirty && view.machine !== null,
    runPrompt: view.dirty && view.machine !== null
      ? "machine edited — press RUN to rebuild"
      : null,
  };
}

/** Message shown after GEN CODE succeeds. */
export function gencodeMessage(revision: number, path: string): string {
  return `wrote revision ${revision} to ${path}`;
}
