/**
 * Audit-station page wiring: seed ceremony, worksheet, interpretation
 * entry, and a polled risk dashboard with an escalation prompt.
 */

import { AuditApi, ServiceError } from "./api.js";
import { SubmissionQueue } from "./queue.js";
import { buildRiskView, renderRiskView } from "./riskView.js";
import { checkRate, checkSeed, sanitizeSeedInput } from "./validation.js";
import { buildWorksheet, renderWorksheet } from "./worksheet.js";

const POLL_INTERVAL_MS = 5000;

export interface StationOptions {
  doc: Document;
  baseUrl: string;
  pollIntervalMs?: number;
}

export class StationApp {
  api: AuditApi | null = null;
  queue: SubmissionQueue | null = null;
  private doc: Document;
  private baseUrl: string;
  private pollIntervalMs: number;
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  currentRound = 0;

  constructor(options: StationOptions) {
    this.doc = options.doc;
    this.baseUrl = options.baseUrl;
    this.pollIntervalMs = options.pollIntervalMs ?? POLL_INTERVAL_MS;
  }

  private el<T extends HTMLElement>(id: string): T {
    const element = this.doc.getElementById(id);
    if (!element) throw new Error(`missing element #${id}`);
    return element as T;
  }

  bind(): void {
    const seedInput = this.el<HTMLInputElement>("seed-input");
    const seedStatus = this.el<HTMLElement>("seed-status");
    const registerButton = this.el<HTMLButtonElement>("register-bundle");
    registerButton.disabled = true;

    seedInput.addEventListener("input", () => {
      seedInput.value = sanitizeSeedInput(seedInput.value);
      const check = checkSeed(seedInput.value);
      seedStatus.textContent = check.message;
      registerButton.disabled = !check.valid;
    });

    registerButton.addEventListener("click", () => void this.registerAndIssue());
    this.el<HTMLButtonElement>("escalate-button").addEventListener("click", () =>
      void this.escalate(),
    );
    this.el<HTMLElement>("entry-form").addEventListener("submit", (event) => {
      event.preventDefault();
      this.submitEntry();
    });
  }

  connect(): AuditApi {
    const auditId = this.el<HTMLInputElement>("audit-id").value.trim();
    if (!this.api || this.api.auditId !== auditId) {
      this.api = new AuditApi(this.baseUrl, auditId);
      this.queue = new SubmissionQueue(
        (records) => this.api!.submitInterpretations(records),
        () => this.renderQueue(),
      );
    }
    return this.api;
  }

  async registerAndIssue(): Promise<void> {
    const api = this.connect();
    const bundleId = this.el<HTMLInputElement>("bundle-id").value.trim();
    const siteId = this.el<HTMLInputElement>("site-id").value.trim();
    const seed = this.el<HTMLInputElement>("seed-input").value;
    const sizeRaw = this.el<HTMLInputElement>("bundle-size").value.trim();
    const size = sizeRaw ? Number(sizeRaw) : undefined;
    const status = this.el<HTMLElement>("seed-status");
    try {
      await api.registerBundle(bundleId, siteId, seed, size);
    } catch (error) {
      if (error instanceof ServiceError && error.body.code === "duplicate_bundle") {
        status.textContent = "bundle already registered; reprinting its worksheet";
      } else {
        status.textContent = `registration failed: ${(error as Error).message}`;
        return;
      }
    }
    await this.showWorksheet(bundleId, this.currentRound, size);
    this.startPolling();
  }

  async showWorksheet(bundleId: string, round: number, size?: number): Promise<void> {
    const api = this.connect();
    const sequence = await api.sequence(bundleId, round, size);
    const view = buildWorksheet(sequence);
    const host = this.el<HTMLElement>("worksheet-host");
    host.replaceChildren(renderWorksheet(view, this.doc));
    this.el<HTMLElement>("worksheet-title").textContent =
      `Worksheet: bundle ${bundleId}, round ${round} (rate ${sequence.rate})`;
  }

  submitEntry(): void {
    this.connect();
    const record = {
      bundle_id: this.el<HTMLInputElement>("bundle-id").value.trim(),
      position: Number(this.el<HTMLInputElement>("entry-position").value),
      round: this.currentRound,
      contest_id: this.el<HTMLInputElement>("entry-contest").value.trim(),
      interpretation: this.el<HTMLInputElement>("entry-interpretation").value.trim(),
    };
    this.queue!.add(record);
  }

  renderQueue(): void {
    const queue = this.queue;
    if (!queue) return;
    this.el<HTMLElement>("entry-count").textContent =
      `${queue.acceptedCount()} recorded`;
    const pending = queue.pendingCount();
    this.el<HTMLElement>("queue-status").textContent = pending
      ? `${pending} submission(s) queued, retrying...`
      : "";
    const conflictBanner = this.el<HTMLElement>("conflict-banner");
    const conflicts = queue.conflicts();
    conflictBanner.textContent = conflicts.length
      ? `Conflict: ${conflicts[conflicts.length - 1].reason}`
      : "";
    conflictBanner.hidden = conflicts.length === 0;
  }

  async refreshRisk(): Promise<void> {
    const api = this.connect();
    let payload;
    try {
      payload = await api.risk();
    } catch {
      return; // nothing issued yet or offline; keep the previous view
    }
    this.currentRound = payload.report.round;
    const view = buildRiskView(payload.report, payload.rawText);
    this.el<HTMLElement>("risk-host").replaceChildren(
      renderRiskView(view, this.doc),
    );
    this.el<HTMLButtonElement>("escalate-button").disabled = view.allConfirmed;
  }

  async escalate(): Promise<void> {
    const api = this.connect();
    const rateInput = this.el<HTMLInputElement>("escalate-rate");
    const { valid, rate } = checkRate(rateInput.value);
    const status = this.el<HTMLElement>("escalate-status");
    if (!valid) {
      status.textContent = "escalation rate must be in (0, 1]";
      return;
    }
    const plan = await api.escalate(rate);
    if (plan.status === "noop") {
      status.textContent = plan.message ?? "all contests confirmed";
      return;
    }
    this.currentRound = plan.round!;
    status.textContent = `round ${plan.round} issued at rate ${plan.rate}`;
    const bundleId = this.el<HTMLInputElement>("bundle-id").value.trim();
    const mine = plan.bundles?.find((b) => b.bundle_id === bundleId);
    if (mine) {
      await this.showWorksheet(bundleId, plan.round!);
    }
    await this.refreshRisk();
  }

  startPolling(): void {
    if (this.pollTimer) return;
    void this.refreshRisk();
    this.pollTimer = setInterval(() => void this.refreshRisk(), this.pollIntervalMs);
  }

  stopPolling(): void {
    if (this.pollTimer) {
      clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
  }
}

export function startStation(doc: Document, baseUrl = ""): StationApp {
  const app = new StationApp({ doc, baseUrl });
  app.bind();
  return app;
}

declare const window: (Window & { station?: StationApp }) | undefined;
if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.station = startStation(document);
}
