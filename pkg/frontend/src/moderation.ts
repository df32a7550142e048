/**
 * Moderation queue: list pending contributions (with their service-side
 * diagnostics as preview), decide optimistically, and roll back when the
 * service reports the contribution was already decided (409).
 */

import { ApiClient, ApiError, Contribution, Diagnostic } from "./api.js";

export interface QueueItem {
  contribution: Contribution;
  diagnostics: Diagnostic[];
}

export interface ModerationState {
  items: QueueItem[];
  accessDenied: boolean;
  toast: string | null;
}

export class ModerationController {
  private items: QueueItem[] = [];
  private accessDenied = false;
  private toast: string | null = null;

  constructor(private readonly api: ApiClient) {}

  getState(): ModerationState {
    return { items: [...this.items], accessDenied: this.accessDenied, toast: this.toast };
  }

  async load(): Promise<ModerationState> {
    try {
      const queue = await this.api.moderationQueue();
      const items: QueueItem[] = [];
      for (const contribution of queue.pending) {
        // preview: the segment as it would be merged, revalidated live
        const { diagnostics } = await this.api.validate(contribution.segment);
        items.push({ contribution, diagnostics });
      }
      this.items = items;
      this.accessDenied = false;
    } catch (err) {
      if (err instanceof ApiError && err.status === 403) {
        this.accessDenied = true;
        this.items = [];
      } else {
        this.toast = err instanceof Error ? err.message : String(err);
      }
    }
    return this.getState();
  }

  /** Optimistic decision: the item leaves the list immediately and comes
   * back (with a refreshed queue) if the service reports a conflict. */
  async decide(
    id: string,
    decision: "approve" | "reject",
    retroactive = false,
  ): Promise<ModerationState> {
    const kept = this.items;
    this.items = this.items.filter((item) => item.contribution.id !== id);
    try {
      const result = await this.api.decide(id, decision, retroactive);
      this.toast = `${id}: ${result.status}`;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.items = kept;
        this.toast = `${id}: already decided; queue refreshed`;
        await this.load();
      } else {
        this.items = kept;
        this.toast = err instanceof Error ? err.message : String(err);
      }
    }
    return this.getState();
  }
}
