/** RFC 4180 CSV parsing with a mandatory header row.
 *
 * This is a deliberate re-implementation of the server's parser: the
 * browser pre-checks files before any network call, so both sides must
 * agree on what a cell means. The golden-corpus test keeps them aligned.
 */

import { ParseError, type Cell, type TableData } from "./types.js";

/** Strict numeric lexeme: decimal or scientific notation, no inf/nan and
 * no surrounding whitespace. Matches the server's lexer. */
const NUMBER_RE = /^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$/;

export function lexNumber(text: string): number | null {
  if (!NUMBER_RE.test(text)) return null;
  const value = Number(text);
  return Number.isFinite(value) ? value : null;
}

export function renderNumber(value: number): string {
  if (Number.isInteger(value) && Math.abs(value) < 1e16) {
    if (Object.is(value, -0)) return "-0.0";
    return String(value);
  }
  return String(value);
}

export function renderCell(cell: Cell): string {
  return typeof cell === "number" ? renderNumber(cell) : cell;
}

/** Split into records, honoring quoted fields (escaped quotes, embedded
 * commas/newlines) and both LF and CRLF endings. Records with no cells at
 * all (blank lines) are skipped. */
function splitRecords(text: string): string[][] {
  const records: string[][] = [];
  let record: string[] = [];
  let field = "";
  let fieldHadContent = false; // quote-opening is only special at field start
  let recordHadContent = false;
  let inQuotes = false;
  let i = 0;

  const endField = () => {
    record.push(field);
    field = "";
    fieldHadContent = false;
  };
  const endRecord = () => {
    if (record.length === 0 && field === "" && !recordHadContent) return;
    endField();
    records.push(record);
    record = [];
    recordHadContent = false;
  };

  while (i < text.length) {
    const ch = text[i];
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && field === "" && !fieldHadContent) {
      inQuotes = true;
      fieldHadContent = true;
      recordHadContent = true;
      i += 1;
      continue;
    }
    if (ch === ",") {
      endField();
      recordHadContent = true;
      i += 1;
      continue;
    }
    if (ch === "\r" && text[i + 1] === "\n") {
      endRecord();
      i += 2;
      continue;
    }
    if (ch === "\n" || ch === "\r") {
      endRecord();
      i += 1;
      continue;
    }
    field += ch;
    fieldHadContent = true;
    recordHadContent = true;
    i += 1;
  }
  endRecord();
  return records;
}

export function parseCsv(text: string): TableData {
  if (text.startsWith("﻿")) text = text.slice(1);
  const records = splitRecords(text);
  if (records.length === 0) {
    throw new ParseError("E_EMPTY", "CSV has no header record");
  }
  const header = records[0];
  const seen = new Set<string>();
  for (const name of header) {
    if (name === "") throw new ParseError("E_SCHEMA", "empty column name in header");
    if (seen.has(name)) {
      throw new ParseError("E_DUP_COLUMN", `duplicate column name "${name}"`);
    }
    seen.add(name);
  }
  const rows: Cell[][] = [];
  for (let i = 1; i < records.length; i++) {
    const rec = records[i];
    if (rec.length !== header.length) {
      throw new ParseError(
        "E_RAGGED",
        `data row ${i - 1} has ${rec.length} fields, expected ${header.length}`,
      );
    }
    rows.push(rec.map((f) => lexNumber(f) ?? f));
  }
  return { columns: header, rows };
}

/** Byte size of the file as the server will see it. */
export function utf8Length(text: string): number {
  return new TextEncoder().encode(text).length;
}
