import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient, Diagnostic } from "../src/api.js";
import { EditorController } from "../src/editor.js";
import { jsonResponse, respondWith, scriptedFetch } from "./helpers.js";

// span covers the bracket-inner entity name, as the service reports it
const TYPO_DIAGNOSTIC: Diagnostic = {
  severity: "error",
  code: "unknown-lexeme",
  span: [4, 19],
  message: "unknown entity 'baie de Banyulz'",
  hints: ["baie de Banyuls"],
};

describe("EditorController", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("debounces validation calls", async () => {
    const { fetchFn, calls } = scriptedFetch([respondWith(200, { diagnostics: [] })]);
    const editor = new EditorController(new ApiClient("", fetchFn));
    editor.setDraft("La plage");
    editor.setDraft("La plage est");
    editor.setDraft("La plage est dominée par l'agglomération.");
    expect(calls.length).toBe(0);
    await vi.advanceTimersByTimeAsync(299);
    expect(calls.length).toBe(0);
    await vi.advanceTimersByTimeAsync(2);
    await editor.flush();
    expect(calls.length).toBe(1);
    expect(calls[0].body).toEqual({ segment: "La plage est dominée par l'agglomération." });
    expect(editor.getState().diagnostics).toEqual([]);
  });

  it("discards stale responses by revision", async () => {
    let releaseFirst: (r: Response) => void = () => undefined;
    const first = new Promise<Response>((resolve) => (releaseFirst = resolve));
    const { fetchFn, calls } = scriptedFetch([
      () => first,
      respondWith(200, { diagnostics: [] }),
    ]);
    const editor = new EditorController(new ApiClient("", fetchFn));

    editor.setDraft("La [baie de Banyulz] ...");
    await vi.advanceTimersByTimeAsync(301); // first request in flight
    editor.setDraft("La [baie de Banyuls] est limitée au NW par le [cap d'Osne].");
    await vi.advanceTimersByTimeAsync(301); // second request resolves clean
    await editor.flush();
    // now the stale slow response arrives with the typo diagnostics
    releaseFirst(jsonResponse(200, { diagnostics: [TYPO_DIAGNOSTIC] }));
    await first;
    await editor.flush();
    expect(calls.length).toBe(2);
    expect(editor.getState().diagnostics).toEqual([]); // stale result dropped
  });

  it("applies a hint over the diagnostic span and revalidates", async () => {
    const { fetchFn, calls } = scriptedFetch([
      respondWith(200, { diagnostics: [TYPO_DIAGNOSTIC] }),
      respondWith(200, { diagnostics: [] }),
    ]);
    const editor = new EditorController(new ApiClient("", fetchFn));
    const draft = "La [baie de Banyulz] est limitée par le [cap d'Osne] au NW.";
    editor.setDraft(draft);
    await vi.advanceTimersByTimeAsync(301);
    await editor.flush();
    expect(editor.getState().diagnostics.length).toBe(1);

    editor.applyHint(TYPO_DIAGNOSTIC, "baie de Banyuls");
    expect(editor.getState().draft).toBe(
      "La [baie de Banyuls] est limitée par le [cap d'Osne] au NW.");
    await vi.advanceTimersByTimeAsync(301);
    await editor.flush();
    expect(calls.length).toBe(2);
    expect(editor.getState().diagnostics).toEqual([]);
  });

  it("keeps the draft and raises the offline flag on network failure", async () => {
    const { fetchFn } = scriptedFetch([
      () => Promise.reject(new Error("connection refused")),
      respondWith(200, { diagnostics: [] }),
    ]);
    const editor = new EditorController(new ApiClient("", fetchFn));
    editor.setDraft("Le port");
    await vi.advanceTimersByTimeAsync(301);
    await editor.flush();
    expect(editor.getState().offline).toBe(true);
    expect(editor.getState().draft).toBe("Le port");

    editor.setDraft("Le port est");
    await vi.advanceTimersByTimeAsync(301);
    await editor.flush();
    expect(editor.getState().offline).toBe(false);
  });

  it("notifies subscribers with consistent state", async () => {
    const { fetchFn } = scriptedFetch([respondWith(200, { diagnostics: [] })]);
    const seen: string[] = [];
    const editor = new EditorController(new ApiClient("", fetchFn), {
      onChange: (state) => seen.push(`${state.revision}:${state.busy}`),
    });
    editor.setDraft("La plage.");
    await vi.advanceTimersByTimeAsync(301);
    await editor.flush();
    expect(seen[0]).toBe("1:false");
    expect(seen.at(-1)).toBe("1:false");
  });
});
