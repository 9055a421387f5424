import { describe, expect, it } from "vitest";

import { SubmissionQueue } from "../src/queue.js";
import type { IngestResult, InterpretationRecord } from "../src/types.js";

const RECORD: InterpretationRecord = {
  bundle_id: "b1",
  position: 13,
  round: 0,
  contest_id: "mayor",
  interpretation: "alice",
};

function accepted(): IngestResult {
  return { applied: 1, rejected: [] };
}

function rejected(reason: string): IngestResult {
  return { applied: 0, rejected: [{ record: RECORD, reason }] };
}

async function settle(queue: SubmissionQueue) {
  await queue.flush();
  await new Promise((resolve) => setTimeout(resolve, 0));
}

describe("submission queue", () => {
  it("marks accepted entries and counts them", async () => {
    const queue = new SubmissionQueue(async () => accepted());
    queue.add(RECORD);
    await settle(queue);
    expect(queue.acceptedCount()).toBe(1);
    expect(queue.pendingCount()).toBe(0);
  });

  it("surfaces server duplicate rejections as conflicts", async () => {
    let calls = 0;
    const queue = new SubmissionQueue(async () => {
      calls += 1;
      return calls === 1 ? accepted() : rejected("duplicate interpretation");
    });
    queue.add(RECORD);
    await settle(queue);
    queue.add({ ...RECORD });
    await settle(queue);
    expect(queue.acceptedCount()).toBe(1);
    expect(queue.conflicts()).toHaveLength(1);
    expect(queue.conflicts()[0].reason).toContain("duplicate");
  });

  it("keeps entries queued across network failures and retries", async () => {
    let online = false;
    const retries: Array<() => void> = [];
    const queue = new SubmissionQueue(
      async () => {
        if (!online) throw new Error("offline");
        return accepted();
      },
      () => {},
      1,
      (fn) => retries.push(fn),
    );
    queue.add(RECORD);
    await settle(queue);
    expect(queue.pendingCount()).toBe(1);
    expect(queue.entries[0].attempts).toBe(1);
    expect(retries).toHaveLength(1);

    online = true;
    retries.pop()!();
    await settle(queue);
    expect(queue.pendingCount()).toBe(0);
    expect(queue.acceptedCount()).toBe(1);
    expect(queue.entries[0].attempts).toBe(2);
  });

  it("flushes entries in submission order", async () => {
    const seen: number[] = [];
    const queue = new SubmissionQueue(async (records) => {
      seen.push(records[0].position);
      return accepted();
    });
    for (const position of [1, 2, 3, 4]) {
      queue.add({ ...RECORD, position });
    }
    await settle(queue);
    expect(seen).toEqual([1, 2, 3, 4]);
  });
});
