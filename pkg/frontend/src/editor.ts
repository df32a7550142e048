/**
 * Live-validated editor state: every draft change schedules a debounced
 * /validate call; a revision counter discards stale responses so the
 * displayed diagnostics always match the displayed draft. Network
 * failures raise an offline flag without ever touching the draft.
 */

import { ApiClient, Diagnostic } from "./api.js";

export interface EditorState {
  draft: string;
  diagnostics: Diagnostic[];
  revision: number;
  validatedRevision: number;
  offline: boolean;
  busy: boolean;
}

export interface EditorOptions {
  debounceMs?: number;
  onChange?: (state: EditorState) => void;
}

export class EditorController {
  private state: EditorState = {
    draft: "",
    diagnostics: [],
    revision: 0,
    validatedRevision: 0,
    offline: false,
    busy: false,
  };
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;
  private readonly onChange: (state: EditorState) => void;
  private inflight: Promise<void> = Promise.resolve();

  constructor(private readonly api: ApiClient, options: EditorOptions = {}) {
    this.debounceMs = options.debounceMs ?? 300;
    this.onChange = options.onChange ?? (() => undefined);
  }

  getState(): EditorState {
    return { ...this.state, diagnostics: [...this.state.diagnostics] };
  }

  setDraft(text: string): void {
    this.state.draft = text;
    this.state.revision += 1;
    this.schedule();
    this.emit();
  }

  /** Replace the diagnostic's span with one of its hints, then revalidate. */
  applyHint(diagnostic: Diagnostic, hint: string): void {
    const [start, end] = diagnostic.span;
    const draft = this.state.draft;
    this.setDraft(draft.slice(0, start) + hint + draft.slice(end));
  }

  /** Run any pending validation immediately (returns when settled). */
  async flush(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
      this.fire();
    }
    await this.inflight;
  }

  private schedule(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.fire();
    }, this.debounceMs);
  }

  private fire(): void {
    const revision = this.state.revision;
    const draft = this.state.draft;
    this.state.busy = true;
    this.emit();
    this.inflight = this.api
      .validate(draft)
      .then((result) => {
        if (this.state.revision !== revision) return; // stale response
        this.state.diagnostics = result.diagnostics;
        this.state.validatedRevision = revision;
        this.state.offline = false;
      })
      .catch(() => {
        if (this.state.revision !== revision) return;
        this.state.offline = true; // draft stays untouched
      })
      .then(() => {
        this.state.busy = false;
        this.emit();
      });
  }

  private emit(): void {
    this.onChange(this.getState());
  }
}
