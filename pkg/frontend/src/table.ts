/** Small DOM builders for data previews and validation feedback. */

import { renderCell } from "./csv.js";
import type { TableData, Violation } from "./types.js";

export function renderTable(d: TableData, maxRows = 50): HTMLTableElement {
  const doc = document;
  const table = doc.createElement("table");
  table.className = "data-table";
  const thead = doc.createElement("thead");
  const headRow = doc.createElement("tr");
  for (const name of d.columns) {
    const th = doc.createElement("th");
    th.textContent = name;
    headRow.appendChild(th);
  }
  thead.appendChild(headRow);
  table.appendChild(thead);

  const tbody = doc.createElement("tbody");
  for (const row of d.rows.slice(0, maxRows)) {
    const tr = doc.createElement("tr");
    for (const cell of row) {
      const td = doc.createElement("td");
      td.textContent = renderCell(cell);
      if (typeof cell === "number") td.className = "num";
      tr.appendChild(td);
    }
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);

  if (d.rows.length > maxRows) {
    const caption = doc.createElement("caption");
    caption.textContent = `showing ${maxRows} of ${d.rows.length} rows`;
    table.appendChild(caption);
  }
  return table;
}

export function renderViolations(violations: Violation[]): HTMLUListElement {
  const list = document.createElement("ul");
  list.className = "violations";
  for (const v of violations) {
    const item = document.createElement("li");
    const where =
      v.row != null && v.col != null
        ? ` (row ${v.row}, column ${v.col})`
        : v.col != null
          ? ` (column ${v.col})`
          : "";
    item.textContent = `${v.code}: ${v.message}${where}`;
    item.dataset.code = v.code;
    list.appendChild(item);
  }
  return list;
}
