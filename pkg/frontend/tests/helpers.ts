/** Replays the recorded service exchanges through a mocked fetch.
 *
 * The fixture file is captured from the real backend (see
 * tools/record_frontend_fixtures.py in the repository root), so these
 * tests exercise genuine payload shapes without a live service.
 */

import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import type { FetchLike, HttpResponse } from "../src/api.js";
import recorded from "./fixtures/recorded.json";

export interface RecordedExchange {
  name: string;
  request: { method: string; path: string; body: unknown };
  status: number;
  response: unknown;
}

export const exchanges: RecordedExchange[] = (
  recorded as { exchanges: RecordedExchange[] }
).exchanges;

export function exchange(name: string): RecordedExchange {
  const found = exchanges.find((e) => e.name === name);
  if (!found) throw new Error(`no recorded exchange named ${name}`);
  return found;
}

export function deepEqual(a: unknown, b: unknown): boolean {
  if (Object.is(a, b)) return true;
  if (typeof a !== typeof b || a === null || b === null) return false;
  if (Array.isArray(a) || Array.isArray(b)) {
    if (!Array.isArray(a) || !Array.isArray(b) || a.length !== b.length) return false;
    return a.every((item, i) => deepEqual(item, b[i]));
  }
  if (typeof a === "object") {
    const ka = Object.keys(a as object).sort();
    const kb = Object.keys(b as object).sort();
    if (!deepEqual(ka, kb)) return false;
    return ka.every((k) =>
      deepEqual((a as Record<string, unknown>)[k], (b as Record<string, unknown>)[k]),
    );
  }
  return false;
}

function abortError(): Error {
  const err = new Error("the request was aborted");
  err.name = "AbortError";
  return err;
}

function jsonResponse(status: number, payload: unknown): HttpResponse {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => payload,
  };
}

export interface RecordedCall {
  method: string;
  url: string;
  body: unknown;
  signal?: AbortSignal;
}

export interface MockOptions {
  /** Return a promise to delay a matched exchange's response. */
  gate?: (name: string, callIndex: number) => Promise<void> | null | undefined;
  /** Reject these call indices with a network error. */
  failOn?: Set<number>;
}

export interface MockService {
  fetchImpl: FetchLike;
  calls: RecordedCall[];
  recommendCalls(): RecordedCall[];
}

export function mockService(options: MockOptions = {}): MockService {
  const calls: RecordedCall[] = [];

  const fetchImpl: FetchLike = (url, init = {}) => {
    const method = init.method ?? "GET";
    const body = init.body ? JSON.parse(init.body) : null;
    const index = calls.length;
    calls.push({ method, url, body, signal: init.signal });

    if (options.failOn?.has(index)) {
      return Promise.reject(new TypeError("network request failed"));
    }

    const match = exchanges.find(
      (e) =>
        e.request.method === method &&
        e.request.path === url &&
        (method === "GET" || deepEqual(e.request.body, body)),
    );
    if (!match) {
      const near = exchanges
        .filter((e) => e.request.method === method && e.request.path === url)
        .map((e) => e.name);
      return Promise.reject(
        new Error(
          `no recorded exchange for ${method} ${url} body=${JSON.stringify(body)}` +
            (near.length ? ` (same path: ${near.join(", ")})` : ""),
        ),
      );
    }

    return new Promise<HttpResponse>((resolve, reject) => {
      const signal = init.signal;
      if (signal?.aborted) {
        reject(abortError());
        return;
      }
      signal?.addEventListener("abort", () => reject(abortError()));
      const settle = () => resolve(jsonResponse(match.status, match.response));
      const gate = options.gate?.(match.name, index);
      if (gate) void gate.then(settle);
      else queueMicrotask(settle);
    });
  };

  return {
    fetchImpl,
    calls,
    recommendCalls: () => calls.filter((c) => c.url === "/v1/recommend"),
  };
}

/** Drain pending microtasks and timers so awaited chains settle. */
export async function flush(rounds = 4): Promise<void> {
  for (let i = 0; i < rounds; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

/** Mount the real page shell into the jsdom document. */
export function mountShell(doc: Document): void {
  // vitest's jsdom environment rewrites import.meta.url to an http URL,
  // so resolve the shell from the project root (vitest runs with cwd there).
  const htmlPath = resolve(process.cwd(), "static", "index.html");
  const html = readFileSync(htmlPath, "utf-8");
  const body = html.slice(html.indexOf("<body>") + "<body>".length, html.indexOf("</body>"));
  doc.body.innerHTML = body;
}

export const DEFAULT_FLAT = [1 / 3, 1 / 3, 1 / 3, 0.5, 0.5, 1 / 3, 1 / 3, 1 / 3, 0.5, 0.5];
export const ABSTRACT_ONLY_FLAT = [1, 0, 0, 0.5, 0.5, 1 / 3, 1 / 3, 1 / 3, 0.5, 0.5];
export const ABSTRACT_BOTH_FLAT = [1, 0, 0, 0.5, 0.5, 1, 0, 0, 0.5, 0.5];

export function overallIds(response: unknown, side: "reference" | "citation"): string[] {
  const panes = (response as Record<string, { overall: { id: string }[] }>)[side];
  if (!panes) throw new Error(`response has no ${side} side`);
  return panes.overall.map((row) => row.id);
}
