/**
 * Interpretation submission queue.
 *
 * Entries are appended optimistically and reconciled against the server's
 * accept/reject response; a network failure keeps the entry queued with a
 * retry indicator, and server-side duplicate rejections surface as
 * conflicts without touching the tally.
 */

import type { IngestResult, InterpretationRecord } from "./types.js";

export type EntryStatus = "queued" | "sending" | "accepted" | "conflict";

export interface QueueEntry {
  record: InterpretationRecord;
  status: EntryStatus;
  attempts: number;
  reason?: string;
}

export type PostFn = (records: InterpretationRecord[]) => Promise<IngestResult>;

export class SubmissionQueue {
  entries: QueueEntry[] = [];
  private flushing = false;

  constructor(
    private post: PostFn,
    private onChange: () => void = () => {},
    private retryDelayMs = 2000,
    private schedule: (fn: () => void, ms: number) => void = (fn, ms) => {
      setTimeout(fn, ms);
    },
  ) {}

  add(record: InterpretationRecord): QueueEntry {
    const entry: QueueEntry = { record, status: "queued", attempts: 0 };
    this.entries.push(entry);
    this.onChange();
    void this.flush();
    return entry;
  }

  pendingCount(): number {
    return this.entries.filter((e) => e.status === "queued" || e.status === "sending")
      .length;
  }

  acceptedCount(): number {
    return this.entries.filter((e) => e.status === "accepted").length;
  }

  conflicts(): QueueEntry[] {
    return this.entries.filter((e) => e.status === "conflict");
  }

  async flush(): Promise<void> {
    if (this.flushing) return;
    this.flushing = true;
    try {
      for (const entry of this.entries) {
        if (entry.status !== "queued") continue;
        entry.status = "sending";
        entry.attempts += 1;
        this.onChange();
        let result: IngestResult;
        try {
          result = await this.post([entry.record]);
        } catch {
          // offline or server unreachable: requeue and retry later
          entry.status = "queued";
          this.onChange();
          this.schedule(() => void this.flush(), this.retryDelayMs);
          return;
        }
        if (result.applied === 1) {
          entry.status = "accepted";
        } else {
          entry.status = "conflict";
          entry.reason = result.rejected[0]?.reason ?? "rejected";
        }
        this.onChange();
      }
    } finally {
      this.flushing = false;
    }
  }
}
