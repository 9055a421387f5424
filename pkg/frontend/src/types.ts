/** Wire types mirroring the audit service's JSON bodies. */

export interface SkipSequence {
  bundle_id: string;
  round: number;
  rate: number;
  size_used: number;
  counter_start: number;
  draws_consumed: number;
  skips: number[];
  positions: number[];
}

export interface InterpretationRecord {
  bundle_id: string;
  position: number;
  round: number;
  contest_id: string;
  interpretation: string;
}

export interface IngestResult {
  applied: number;
  rejected: { record: InterpretationRecord; reason: string }[];
}

export interface PairEntry {
  pair: { winner: string; loser: string };
  x_star: number | null;
  log_p: number;
  p_value: number;
  anomaly: boolean;
  decision: "CONFIRM" | "ESCALATE";
}

export interface ContestEntry {
  contest_id: string;
  risk: number;
  decision: "CONFIRM" | "ESCALATE";
  status: "OPEN" | "CONFIRMED" | "FULL_COUNT";
  anomaly: boolean;
  full_count_recommended: boolean;
  pairs: PairEntry[];
}

export interface RiskReport {
  audit_id: string;
  alpha: number;
  round: number;
  cumulative_rate: number;
  contests: ContestEntry[];
}

export interface EscalationPlan {
  status: "escalated" | "noop";
  round?: number;
  rate?: number;
  cumulative_rate?: number;
  bundles?: {
    bundle_id: string;
    round: number;
    rate: number;
    positions: number[];
    new_positions: number[];
    skips: number[];
  }[];
  message?: string;
}

export interface ApiError {
  code: string;
  message: string;
  detail: Record<string, unknown>;
}
