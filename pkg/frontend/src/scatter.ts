/** SVG scatter plot of the first two fully-numeric columns, colored by an
 * optional label column (used for cluster assignments). No chart library —
 * the plot is a few dozen positioned circles.
 */

import { renderCell } from "./csv.js";
import type { TableData } from "./types.js";

export const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a14f",
  "#edc948",
  "#b07aa1",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
];

const SVG_NS = "http://www.w3.org/2000/svg";

export function numericColumns(d: TableData): number[] {
  return d.columns
    .map((_, j) => j)
    .filter((j) => d.rows.length > 0 && d.rows.every((row) => typeof row[j] === "number"));
}

export interface ScatterOptions {
  colorColumn?: number;
  width?: number;
  height?: number;
}

export function renderScatter(
  d: TableData,
  opts: ScatterOptions = {},
): SVGSVGElement | HTMLParagraphElement {
  const numeric = numericColumns(d).filter((j) => j !== opts.colorColumn);
  if (numeric.length < 2) {
    const msg = document.createElement("p");
    msg.className = "chart-note";
    msg.textContent = "scatter plot needs at least two numeric columns";
    return msg;
  }
  const [jx, jy] = numeric;
  const width = opts.width ?? 420;
  const height = opts.height ?? 320;
  const pad = 30;

  const xs = d.rows.map((row) => row[jx] as number);
  const ys = d.rows.map((row) => row[jy] as number);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;
  const px = (x: number) => pad + ((x - xMin) / xSpan) * (width - 2 * pad);
  const py = (y: number) => height - pad - ((y - yMin) / ySpan) * (height - 2 * pad);

  const svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("role", "img");

  for (const [x1, y1, x2, y2] of [
    [pad, height - pad, width - pad, height - pad],
    [pad, pad, pad, height - pad],
  ]) {
    const axis = document.createElementNS(SVG_NS, "line");
    axis.setAttribute("x1", String(x1));
    axis.setAttribute("y1", String(y1));
    axis.setAttribute("x2", String(x2));
    axis.setAttribute("y2", String(y2));
    axis.setAttribute("stroke", "#888");
    svg.appendChild(axis);
  }

  for (const [name, x, y, anchor] of [
    [d.columns[jx], width / 2, height - 6, "middle"],
    [d.columns[jy], 12, 16, "start"],
  ] as const) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x));
    label.setAttribute("y", String(y));
    label.setAttribute("text-anchor", anchor);
    label.setAttribute("class", "axis-label");
    label.textContent = name;
    svg.appendChild(label);
  }

  const colorOf = new Map<string, string>();
  for (let i = 0; i < d.rows.length; i++) {
    const row = d.rows[i];
    let fill = PALETTE[0];
    if (opts.colorColumn !== undefined) {
      const label = renderCell(row[opts.colorColumn]);
      if (!colorOf.has(label)) {
        colorOf.set(label, PALETTE[colorOf.size % PALETTE.length]);
      }
      fill = colorOf.get(label)!;
    }
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", px(row[jx] as number).toFixed(2));
    dot.setAttribute("cy", py(row[jy] as number).toFixed(2));
    dot.setAttribute("r", "3.5");
    dot.setAttribute("fill", fill);
    dot.setAttribute("class", "dot");
    svg.appendChild(dot);
  }
  return svg;
}
