import type { GencodeResponse, SessionView } from "./types.js";

/** Thin fetch client for the session API. Every domain error surfaces as an
 * ApiError carrying the HTTP status and the service's `detail` message. */

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

async function request<T>(
  method: string,
  url: string,
  body?: unknown,
): Promise<T> {
  const resp = await fetch(url, {
    method,
    headers: body === undefined ? {} : { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const payload = await resp.json().catch(() => null);
  if (!resp.ok) {
    const detail =
      payload && typeof payload.detail === "string"
        ? payload.detail
        : `request failed with status ${resp.status}`;
    throw new ApiError(resp.status, detail);
  }
  return payload as T;
}

export class Client {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return `${this.base}/api/sessions${path}`;
  }

  createSession(document?: unknown): Promise<SessionView> {
    return request("POST", this.url(""), document ? { document } : {});
  }

  getSession(id: string): Promise<SessionView> {
    return request("GET", this.url(`/${id}`));
  }

  edit(id: string, action: string, fields: Record<string, string>): Promise<SessionView> {
    return request("POST", this.url(`/${id}/edit`), { action, ...fields });
  }

  setTape(id: string, symbols: string[], append = false): Promise<SessionView> {
    return request("POST", this.url(`/${id}/tape`), { symbols, append });
  }

  clearTape(id: string): Promise<SessionView> {
    return request("DELETE", this.url(`/${id}/tape`));
  }

  run(id: string): Promise<SessionView> {
    return request("POST", this.url(`/${id}/run`));
  }

  step(id: string, direction: "next" | "prev"): Promise<SessionView> {
    return request("POST", this.url(`/${id}/step`), { direction });
  }

  gencode(id: string): Promise<GencodeResponse> {
    return request("POST", this.url(`/${id}/gencode`), {});
  }
}
