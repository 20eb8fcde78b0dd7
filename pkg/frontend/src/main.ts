import { ApiError, Client } from "./api.js";
import { controlState, gencodeMessage } from "./controls.js";
import { renderSession } from "./view.js";
import type { SessionView } from "./types.js";

/** DOM wiring: everything visual goes through the pure renderers. */

const client = new Client();
let view: SessionView | null = null;
let colorblind = false;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function show(v: SessionView): void {
  view = v;
  el("session").innerHTML = renderSession(v, colorblind);
  const controls = controlState(v);
  el<HTMLButtonElement>("next").disabled = !controls.nextEnabled;
  el<HTMLButtonElement>("prev").disabled = !controls.prevEnabled;
  el<HTMLButtonElement>("run").disabled = !controls.runEnabled;
  el<HTMLButtonElement>("gencode").disabled = !controls.gencodeEnabled;
  el("message").textContent = controls.runPrompt ?? "";
  el("alphabet").textContent = v.draft.alphabet.join(" ");
}

function report(err: unknown): void {
  el("message").textContent =
    err instanceof ApiError ? err.message : String(err);
}

async function guarded(fn: () => Promise<SessionView>): Promise<void> {
  try {
    show(await fn());
  } catch (err) {
    report(err);
  }
}

export async function start(): Promise<void> {
  await guarded(() => client.createSession());

  el("run").onclick = () => guarded(() => client.run(view!.id));
  el("next").onclick = () => guarded(() => client.step(view!.id, "next"));
  el("prev").onclick = () => guarded(() => client.step(view!.id, "prev"));
  el("add-tape").onclick = () => {
    const input = el<HTMLInputElement>("tape-input");
    const symbols = input.value.trim().split(/\s+/).filter(Boolean);
    input.value = "";
    guarded(() => client.setTape(view!.id, symbols, true));
  };
  el("clear-tape").onclick = () => guarded(() => client.clearTape(view!.id));
  el("gencode").onclick = async () => {
    try {
      const resp = await client.gencode(view!.id);
      show(resp.session);
      el("message").textContent = gencodeMessage(resp.revision, resp.path);
    } catch (err) {
      report(err);
    }
  };
  el("colorblind").onclick = () => {
    colorblind = !colorblind;
    if (view) show(view);
  };
}

if (typeof document !== "undefined" && document.getElementById("session")) {
  start();
}
