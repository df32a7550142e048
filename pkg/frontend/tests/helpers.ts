import { FetchLike } from "../src/api.js";

export interface Call {
  url: string;
  init?: RequestInit;
  body: unknown;
}

export function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** A scripted fetch: pops one handler per call, records everything. */
export function scriptedFetch(
  handlers: Array<(call: Call) => Response | Promise<Response>>,
): { fetchFn: FetchLike; calls: Call[] } {
  const calls: Call[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    const call = { url, init, body };
    calls.push(call);
    const handler = handlers.shift();
    if (!handler) throw new Error(`unexpected fetch: ${url}`);
    return handler(call);
  };
  return { fetchFn, calls };
}

export function respondWith(status: number, body: unknown) {
  return () => jsonResponse(status, body);
}
