/**
 * Risk dashboard rendering.
 *
 * Every p_value, x_star, and log_p cell shows the service's serialized
 * token verbatim (cut from the raw response body); the UI never computes
 * or reformats risk numbers.
 */

import { pairValueTokens } from "./token.js";
import type { RiskReport } from "./types.js";

export interface RiskViewModel {
  round: number;
  cumulativeRate: string;
  allConfirmed: boolean;
  anomalies: string[];
  rows: {
    contestId: string;
    winner: string;
    loser: string;
    pValueText: string;
    logPText: string;
    xStarText: string;
    decision: string;
    status: string;
    anomaly: boolean;
  }[];
}

export function buildRiskView(report: RiskReport, rawText: string): RiskViewModel {
  const tokens = pairValueTokens(rawText);
  const cumulative = /"cumulative_rate"\s*:\s*([^,}]+)/.exec(rawText);
  const rows: RiskViewModel["rows"] = [];
  const anomalies: string[] = [];
  let flat = 0;
  for (const contest of report.contests) {
    for (const pair of contest.pairs) {
      rows.push({
        contestId: contest.contest_id,
        winner: pair.pair.winner,
        loser: pair.pair.loser,
        pValueText: tokens.p_value[flat],
        logPText: tokens.log_p[flat],
        xStarText: tokens.x_star[flat],
        decision: pair.decision,
        status: contest.status,
        anomaly: pair.anomaly,
      });
      if (pair.anomaly) {
        anomalies.push(
          `anomalous sample for ${contest.contest_id}: ${pair.pair.winner} vs ${pair.pair.loser}`,
        );
      }
      flat += 1;
    }
  }
  return {
    round: report.round,
    cumulativeRate: cumulative ? cumulative[1].trim() : String(report.cumulative_rate),
    allConfirmed: report.contests.every((c) => c.status === "CONFIRMED"),
    anomalies,
    rows,
  };
}

export function renderRiskView(view: RiskViewModel, doc: Document): HTMLElement {
  const container = doc.createElement("div");
  container.className = "risk-view";

  const summary = doc.createElement("p");
  summary.className = view.allConfirmed ? "summary confirm" : "summary escalate";
  summary.textContent = view.allConfirmed
    ? "All contests CONFIRMED"
    : "Audit still open: escalation may be needed";
  container.appendChild(summary);

  const rate = doc.createElement("p");
  rate.className = "cumulative-rate";
  rate.textContent = `cumulative sampling rate: ${view.cumulativeRate}`;
  container.appendChild(rate);

  for (const warning of view.anomalies) {
    const banner = doc.createElement("div");
    banner.className = "anomaly-banner";
    banner.textContent = `Warning: ${warning}`;
    container.appendChild(banner);
  }

  const table = doc.createElement("table");
  table.className = "risk-table";
  const head = doc.createElement("tr");
  for (const label of ["contest", "pair", "p-value", "x*", "log p", "decision", "status"]) {
    const th = doc.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const row of view.rows) {
    const tr = doc.createElement("tr");
    tr.className = row.decision === "CONFIRM" ? "pair confirm" : "pair escalate";
    if (row.anomaly) tr.classList.add("anomaly");
    const cells = [
      row.contestId,
      `${row.winner} vs ${row.loser}`,
      row.pValueText,
      row.xStarText,
      row.logPText,
      row.decision,
      row.status,
    ];
    cells.forEach((text, index) => {
      const td = doc.createElement("td");
      td.textContent = text;
      if (index === 2) td.className = "p-value";
      tr.appendChild(td);
    });
    table.appendChild(tr);
  }
  container.appendChild(table);
  return container;
}
