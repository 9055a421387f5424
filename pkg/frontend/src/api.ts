/** Typed client for the audit service; all state lives server-side. */

import type {
  ApiError,
  EscalationPlan,
  IngestResult,
  InterpretationRecord,
  RiskReport,
  SkipSequence,
} from "./types.js";

export class ServiceError extends Error {
  constructor(public status: number, public body: ApiError) {
    super(body.message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let body: ApiError;
    try {
      body = (await response.json()) as ApiError;
    } catch {
      body = { code: "http_error", message: response.statusText, detail: {} };
    }
    throw new ServiceError(response.status, body);
  }
  return (await response.json()) as T;
}

export class AuditApi {
  constructor(public baseUrl: string, public auditId: string) {}

  private url(path: string): string {
    return `${this.baseUrl}/audits/${encodeURIComponent(this.auditId)}${path}`;
  }

  async registerBundle(
    bundleId: string,
    siteId: string,
    seed: string,
    count?: number,
  ): Promise<{ bundle_id: string; counter_base: number }> {
    return request(this.url("/bundles"), {
      method: "POST",
      body: JSON.stringify({
        bundle_id: bundleId,
        site_id: siteId,
        seed,
        count_observed: count ?? null,
      }),
    });
  }

  async sequence(bundleId: string, round: number, size?: number): Promise<SkipSequence> {
    const query = size === undefined ? `?round=${round}` : `?round=${round}&size=${size}`;
    return request(this.url(`/bundles/${encodeURIComponent(bundleId)}/sequence${query}`));
  }

  async submitInterpretations(records: InterpretationRecord[]): Promise<IngestResult> {
    return request(this.url("/interpretations"), {
      method: "POST",
      body: JSON.stringify({ records }),
    });
  }

  /** Risk report plus the raw body for verbatim value display. */
  async risk(): Promise<{ report: RiskReport; rawText: string }> {
    const response = await fetch(this.url("/risk"));
    const rawText = await response.text();
    if (!response.ok) {
      throw new ServiceError(response.status, JSON.parse(rawText) as ApiError);
    }
    return { report: JSON.parse(rawText) as RiskReport, rawText };
  }

  async escalate(pNext: number): Promise<EscalationPlan> {
    return request(this.url("/escalate"), {
      method: "POST",
      body: JSON.stringify({ p_next: pNext }),
    });
  }
}
