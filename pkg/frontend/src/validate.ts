/** Pre-upload checks mirroring the server's validator.
 *
 * Client-side validation is UX only — the server re-validates everything —
 * but both must emit identical violation-code sets on the shared golden
 * corpus, so the rules here are a faithful port, not an approximation.
 */

import type { Rules, SchemaRequirement, TableData, Violation } from "./types.js";

export const DEFAULT_RULES: Rules = {
  maxBytes: 2_097_152,
  maxRows: 10_000,
  maxCols: 100,
};

export function validateSize(
  byteLen: number,
  rows: number,
  cols: number,
  rules: Rules = DEFAULT_RULES,
): Violation[] {
  const out: Violation[] = [];
  if (byteLen > rules.maxBytes) {
    out.push({ code: "V_BYTES", message: `${byteLen} bytes exceeds limit of ${rules.maxBytes}` });
  }
  if (rows > rules.maxRows) {
    out.push({ code: "V_ROWS", message: `${rows} rows exceeds limit of ${rules.maxRows}` });
  }
  if (cols > rules.maxCols) {
    out.push({ code: "V_COLS", message: `${cols} columns exceeds limit of ${rules.maxCols}` });
  }
  return out;
}

function checkNumeric(d: TableData, colIndices: number[], out: Violation[]): void {
  for (const j of colIndices) {
    d.rows.forEach((row, i) => {
      if (typeof row[j] !== "number") {
        out.push({
          code: "V_NON_NUMERIC",
          message: `column "${d.columns[j]}" has non-numeric value "${row[j]}"`,
          row: i,
          col: j,
        });
      }
    });
  }
}

const indices = (n: number) => Array.from({ length: n }, (_, j) => j);

export function validateSchema(d: TableData, req: SchemaRequirement): Violation[] {
  const out: Violation[] = [];
  const nCols = d.columns.length;
  const nRows = d.rows.length;

  if (req.algorithm === "kmeans") {
    if (nRows < 1) out.push({ code: "V_TOO_FEW_ROWS", message: "clustering needs at least 1 row" });
    checkNumeric(d, indices(nCols), out);
    return out;
  }

  if (req.algorithm === "linreg" || req.algorithm === "logreg") {
    if (nRows < 2) {
      out.push({ code: "V_TOO_FEW_ROWS", message: `${req.algorithm} needs at least 2 rows` });
    }
    const target = req.targetColumn ?? -1;
    const targetInRange = target >= 0 && target < nCols;
    if (!targetInRange) {
      out.push({
        code: "V_TARGET_RANGE",
        message: `target column ${target} out of range 0..${nCols - 1}`,
      });
    }
    // linreg predicts a number so its target must be numeric too;
    // logreg labels may be text, so its target is exempt from the scan
    if (req.algorithm === "logreg" && targetInRange) {
      checkNumeric(d, indices(nCols).filter((j) => j !== target), out);
    } else {
      checkNumeric(d, indices(nCols), out);
    }
    if (targetInRange && req.algorithm === "logreg") {
      const distinct = new Set(d.rows.map((row) => row[target]));
      if (distinct.size !== 2) {
        out.push({
          code: "V_LABEL_CARDINALITY",
          message: `target column must hold exactly 2 distinct values, found ${distinct.size}`,
          col: target,
        });
      }
    }
    return out;
  }

  // dtree: last column is the output and may be text, the rest must be numeric
  if (nCols < 2) {
    out.push({ code: "V_TOO_FEW_COLS", message: "decision tree needs at least 2 columns" });
  }
  if (nRows < 1) {
    out.push({ code: "V_TOO_FEW_ROWS", message: "decision tree needs at least 1 row" });
  }
  if (nCols >= 2) checkNumeric(d, indices(nCols - 1), out);
  return out;
}
