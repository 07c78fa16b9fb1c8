/** Wire-string codec: one JSON object per row, rows joined by top-level
 * commas. Mirrors the server codec — splitting is a single pass driven by
 * a depth counter plus a string-literal flag.
 */

import { renderNumber } from "./csv.js";
import { ParseError, type Cell, type TableData } from "./types.js";

export function encodeWire(d: TableData): string {
  const keys = d.columns.map((name) => JSON.stringify(name));
  const parts: string[] = [];
  for (const row of d.rows) {
    const fields = row.map((cell, j) =>
      typeof cell === "number"
        ? `${keys[j]}:${renderNumber(cell)}`
        : `${keys[j]}:${JSON.stringify(cell)}`,
    );
    parts.push("{" + fields.join(",") + "}");
  }
  return parts.join(",");
}

export function splitObjects(text: string): string[] {
  const segments: string[] = [];
  let depth = 0;
  let inString = false;
  let escaped = false;
  let start = 0;
  for (let i = 0; i < text.length; i++) {
    const ch = text[i];
    if (inString) {
      if (escaped) escaped = false;
      else if (ch === "\\") escaped = true;
      else if (ch === '"') inString = false;
      continue;
    }
    if (ch === '"') {
      inString = true;
    } else if (ch === "{" || ch === "[") {
      depth += 1;
    } else if (ch === "}" || ch === "]") {
      depth -= 1;
      if (depth < 0) {
        throw new ParseError("E_WIRE_SYNTAX", `unbalanced brackets at offset ${i}`);
      }
    } else if (ch === "," && depth === 0) {
      segments.push(text.slice(start, i));
      start = i + 1;
    }
  }
  if (inString || depth !== 0) {
    throw new ParseError("E_WIRE_SYNTAX", "unterminated object or string literal");
  }
  segments.push(text.slice(start));
  return segments;
}

/** Top-level keys of one object segment, in source order.
 *
 * JSON.parse can't provide this: it silently keeps the last duplicate, and
 * integer-like keys jump the property-order queue, which would scramble
 * column order. The segment is already known to be valid JSON.
 */
function topLevelKeys(segment: string): string[] {
  const keys: string[] = [];
  let depth = 0;
  let expectKey = false;
  let i = 0;
  while (i < segment.length) {
    const ch = segment[i];
    if (ch === '"') {
      let j = i + 1;
      let escaped = false;
      while (j < segment.length) {
        const c = segment[j];
        if (escaped) escaped = false;
        else if (c === "\\") escaped = true;
        else if (c === '"') break;
        j += 1;
      }
      if (depth === 1 && expectKey) {
        keys.push(JSON.parse(segment.slice(i, j + 1)) as string);
        expectKey = false;
      }
      i = j + 1;
      continue;
    }
    if (ch === "{" || ch === "[") {
      depth += 1;
      if (depth === 1 && ch === "{") expectKey = true;
    } else if (ch === "}" || ch === "]") {
      depth -= 1;
    } else if (ch === "," && depth === 1) {
      expectKey = true;
    }
    i += 1;
  }
  return keys;
}

export function decodeWire(text: string): TableData {
  if (text === "") throw new ParseError("E_EMPTY", "empty wire payload");
  let columns: string[] | null = null;
  let keySet: Set<string> | null = null;
  const rows: Cell[][] = [];
  for (const segment of splitObjects(text)) {
    let parsed: unknown;
    try {
      parsed = JSON.parse(segment);
    } catch (exc) {
      throw new ParseError("E_WIRE_SYNTAX", `malformed wire object: ${(exc as Error).message}`);
    }
    if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
      throw new ParseError("E_WIRE_SYNTAX", "wire segments must be JSON objects");
    }
    const keys = topLevelKeys(segment);
    if (new Set(keys).size !== keys.length) {
      throw new ParseError("E_WIRE_SYNTAX", "duplicate key within a wire object");
    }
    if (keys.some((k) => k === "")) {
      throw new ParseError("E_WIRE_SYNTAX", "empty key in wire object");
    }
    const record = parsed as Record<string, unknown>;
    const values = new Map<string, Cell>();
    for (const key of keys) {
      const raw = record[key];
      if (typeof raw === "number") {
        if (!Number.isFinite(raw)) {
          // JSON.parse maps overflowing literals like 1e400 to Infinity
          // instead of failing, so the finiteness check happens here
          throw new ParseError("E_WIRE_SYNTAX", `non-finite number for key ${JSON.stringify(key)}`);
        }
        values.set(key, raw);
      } else if (typeof raw === "string") {
        values.set(key, raw);
      } else {
        throw new ParseError(
          "E_WIRE_SYNTAX",
          `unsupported value type for key ${JSON.stringify(key)}`,
        );
      }
    }
    if (columns === null) {
      columns = keys;
      keySet = new Set(keys);
    } else if (keys.length !== keySet!.size || !keys.every((k) => keySet!.has(k))) {
      throw new ParseError("E_KEY_MISMATCH", "wire objects must share an identical key set");
    }
    rows.push(columns.map((name) => values.get(name)!));
  }
  return { columns: columns!, rows };
}
