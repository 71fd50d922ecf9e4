/** Recommendation-panel view logic: the displayed table is always a
 * permutation/subset of the server's rows, never a recomputation. No
 * pricing math happens client-side, so the UI cannot disagree with the
 * engine.
 */

import { CostResponse, ResultRow } from "./types.js";

export type SortDirection = "asc" | "desc";

export interface ResultView {
  /** Server rows in server order (ascending total). */
  rows: ResultRow[];
  /** Every column the response carries, in response order. */
  columns: string[];
  /** Columns currently shown, in display order. */
  visibleColumns: string[];
  sortColumn: string | null;
  sortDirection: SortDirection;
  namePattern: string;
  resultId: string | null;
  currency: string;
}

export function renderRecommendations(response: CostResponse): ResultView {
  const columns = response.rows.length > 0 ? Object.keys(response.rows[0]) : [];
  return {
    rows: response.rows,
    columns,
    visibleColumns: [...columns],
    sortColumn: null,
    sortDirection: "asc",
    namePattern: "",
    resultId: response.meta.result_id,
    currency: response.meta.currency,
  };
}

/** Keep rows whose provider/region/offering names match the pattern.
 * An empty pattern keeps everything; an invalid one throws, which the
 * panel surfaces as an inline error. Filtering changes membership only,
 * never relative order.
 */
export function regexFilter(rows: ResultRow[], pattern: string): ResultRow[] {
  if (pattern === "") {
    return rows;
  }
  let matcher: RegExp;
  try {
    matcher = new RegExp(pattern);
  } catch (exc) {
    throw new Error(`invalid pattern: ${(exc as Error).message}`);
  }
  return rows.filter((row) =>
    Object.values(row).some((value) => typeof value === "string" && matcher.test(value)),
  );
}

export function setPattern(view: ResultView, pattern: string): ResultView {
  return { ...view, namePattern: pattern };
}

export function sortBy(view: ResultView, column: string): ResultView {
  if (view.sortColumn === column) {
    const sortDirection = view.sortDirection === "asc" ? "desc" : "asc";
    return { ...view, sortDirection };
  }
  return { ...view, sortColumn: column, sortDirection: "asc" };
}

export function clearSort(view: ResultView): ResultView {
  return { ...view, sortColumn: null, sortDirection: "asc" };
}

export function toggleColumn(view: ResultView, column: string): ResultView {
  const visibleColumns = view.visibleColumns.includes(column)
    ? view.visibleColumns.filter((name) => name !== column)
    : [...view.visibleColumns, column];
  return { ...view, visibleColumns };
}

export function reorderColumns(view: ResultView, order: string[]): ResultView {
  const known = order.filter((name) => view.columns.includes(name));
  return { ...view, visibleColumns: known };
}

/** The rows to paint: filter, then sort (default = server order), with
 * only the visible columns projected. */
export function displayedRows(view: ResultView): { columns: string[]; rows: ResultRow[] } {
  let rows = regexFilter(view.rows, view.namePattern);
  if (view.sortColumn !== null) {
    const column = view.sortColumn;
    const factor = view.sortDirection === "asc" ? 1 : -1;
    rows = [...rows].sort((a, b) => factor * compareValues(a[column], b[column]));
  }
  const projected = rows.map((row) => {
    const out: ResultRow = {};
    for (const column of view.visibleColumns) {
      out[column] = row[column];
    }
    return out;
  });
  return { columns: [...view.visibleColumns], rows: projected };
}

function compareValues(a: string | number | undefined, b: string | number | undefined): number {
  if (typeof a === "number" && typeof b === "number") {
    return a - b;
  }
  // plain code-point comparison, matching the server's tie-break ordering
  const left = String(a ?? "");
  const right = String(b ?? "");
  return left < right ? -1 : left > right ? 1 : 0;
}
