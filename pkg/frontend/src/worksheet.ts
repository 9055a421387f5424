/** Worksheet view: "skip n, pull 1" rows derived from a SkipSequence. */

import type { SkipSequence } from "./types.js";

export interface WorksheetRow {
  drawIndex: number;
  skip: number;
  position: number;
  instruction: string;
  done: boolean;
}

export interface WorksheetView {
  bundleId: string;
  round: number;
  rate: number;
  rows: WorksheetRow[];
}

export function buildWorksheet(sequence: SkipSequence): WorksheetView {
  const rows = sequence.positions.map((position, index) => {
    const skip = sequence.skips[index];
    const skipped = skip - 1;
    return {
      drawIndex: index + 1,
      skip,
      position,
      instruction:
        skipped === 0
          ? "pull the next ballot"
          : `skip ${skipped} ballot${skipped === 1 ? "" : "s"}, pull the next`,
      done: false,
    };
  });
  return {
    bundleId: sequence.bundle_id,
    round: sequence.round,
    rate: sequence.rate,
    rows,
  };
}

/** Positions rendered must equal the API's sequence exactly. */
export function worksheetPositions(view: WorksheetView): number[] {
  return view.rows.map((row) => row.position);
}

export function renderWorksheet(view: WorksheetView, doc: Document): HTMLTableElement {
  const table = doc.createElement("table");
  table.className = "worksheet";
  table.dataset.bundle = view.bundleId;
  table.dataset.round = String(view.round);
  const head = doc.createElement("tr");
  for (const label of ["done", "#", "instruction", "position"]) {
    const th = doc.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const row of view.rows) {
    const tr = doc.createElement("tr");
    tr.className = "worksheet-row";
    const checkboxCell = doc.createElement("td");
    const checkbox = doc.createElement("input");
    checkbox.type = "checkbox";
    checkbox.checked = row.done;
    checkbox.dataset.position = String(row.position);
    checkboxCell.appendChild(checkbox);
    tr.appendChild(checkboxCell);
    for (const text of [String(row.drawIndex), row.instruction, String(row.position)]) {
      const td = doc.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    if (row.position === view.rows[view.rows.length - 1].position) {
      tr.dataset.last = "true";
    }
    table.appendChild(tr);
  }
  return table;
}
