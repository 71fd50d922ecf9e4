/** Page wiring: four panels (Compute, Storage, Network, Recommendation)
 * over the pure state/query/results modules. Submit stays disabled while
 * client-side validation fails; every edit re-enables "recalculate" and
 * the previous result stays alongside for comparison.
 */

import { ApiClient, ApiRequestError } from "./client.js";
import { buildQuery, StateValidationError } from "./query.js";
import {
  displayedRows,
  renderRecommendations,
  ResultView,
  setPattern,
  sortBy,
  toggleColumn,
} from "./results.js";
import {
  CURRENCIES,
  DEFAULT_PROVIDERS,
  emptySlot,
  initialState,
  Mode,
  REQUEST_OPS,
  validateState,
  WidgetState,
} from "./state.js";
import { CostResponse } from "./types.js";

const state: WidgetState = initialState();
const client = new ApiClient("");

let currentView: ResultView | null = null;
let previousView: ResultView | null = null;

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function bindInput(id: string, apply: (value: string) => void): void {
  const node = $(id) as HTMLInputElement;
  node.addEventListener("input", () => {
    apply(node.value);
    refreshControls();
  });
}

function refreshControls(): void {
  const problems = validateState(state);
  ($("recalculate") as HTMLButtonElement).disabled = problems.length > 0;
  $("validation").textContent = problems.join("\n");
  $("compute-panel").style.display = state.mode === "storage-only" ? "none" : "";
  $("storage-panel").style.display = state.mode === "compute-only" ? "none" : "";
}

function renderComputeSlots(): void {
  const host = $("compute-slots");
  host.textContent = "";
  state.compute.slots.forEach((slot, index) => {
    const row = document.createElement("div");
    row.className = "slot";
    const fields: Array<[string, keyof typeof slot]> = [
      ["RAM low (GB)", "ramLow"],
      ["RAM high (GB)", "ramHigh"],
      ["local storage low (GB)", "storageLow"],
      ["local storage high (GB)", "storageHigh"],
      ["hours", "hours"],
      ["months", "months"],
      ["instances", "instances"],
    ];
    for (const [label, field] of fields) {
      const wrap = document.createElement("label");
      wrap.textContent = label;
      const input = document.createElement("input");
      input.value = slot[field];
      input.addEventListener("input", () => {
        slot[field] = input.value;
        refreshControls();
      });
      wrap.appendChild(input);
      row.appendChild(wrap);
    }
    const remove = document.createElement("button");
    remove.textContent = "remove";
    remove.disabled = state.compute.slots.length === 1;
    remove.addEventListener("click", () => {
      state.compute.slots.splice(index, 1);
      renderComputeSlots();
      refreshControls();
    });
    row.appendChild(remove);
    host.appendChild(row);
  });
}

function renderRequestOps(): void {
  const host = $("request-ops");
  host.textContent = "";
  for (const op of REQUEST_OPS) {
    const wrap = document.createElement("label");
    const check = document.createElement("input");
    check.type = "checkbox";
    const count = document.createElement("input");
    count.placeholder = `no. of ${op.toUpperCase()}`;
    count.disabled = true;
    check.addEventListener("change", () => {
      state.storage.requests[op].enabled = check.checked;
      count.disabled = !check.checked;
      refreshControls();
    });
    count.addEventListener("input", () => {
      state.storage.requests[op].count = count.value;
      refreshControls();
    });
    wrap.append(check, ` ${op.toUpperCase()} `, count);
    host.appendChild(wrap);
  }
}

function renderProviders(): void {
  const host = $("provider-list");
  host.textContent = "";
  const all = document.createElement("label");
  const allCheck = document.createElement("input");
  allCheck.type = "checkbox";
  allCheck.checked = state.providers.all;
  allCheck.addEventListener("change", () => {
    state.providers.all = allCheck.checked;
    renderProviders();
    refreshControls();
  });
  all.append(allCheck, " all providers");
  host.appendChild(all);
  if (!state.providers.all) {
    for (const name of DEFAULT_PROVIDERS) {
      const wrap = document.createElement("label");
      const check = document.createElement("input");
      check.type = "checkbox";
      check.checked = state.providers.selected.includes(name);
      check.addEventListener("change", () => {
        state.providers.selected = check.checked
          ? [...state.providers.selected, name]
          : state.providers.selected.filter((p) => p !== name);
        refreshControls();
      });
      wrap.append(check, ` ${name}`);
      host.appendChild(wrap);
    }
  }
}

function banner(message: string): void {
  const node = $("error-banner");
  node.textContent = message;
  node.style.display = message ? "" : "none";
}

async function recalculate(): Promise<void> {
  banner("");
  let query: string;
  try {
    query = buildQuery(state);
  } catch (exc) {
    if (exc instanceof StateValidationError) {
      $("validation").textContent = exc.problems.join("\n");
      return;
    }
    throw exc;
  }
  try {
    const response = await client.costQuery(state.mode, query);
    if (response === null) {
      return; // superseded by a newer submit
    }
    previousView = currentView;
    currentView = renderRecommendations(response);
    paintResults(response);
  } catch (exc) {
    if (exc instanceof ApiRequestError) {
      banner(`server rejected the query: ${exc.message}`);
      return;
    }
    throw exc;
  }
}

function paintResults(response: CostResponse | null): void {
  const host = $("recommendations");
  host.textContent = "";
  if (!currentView) return;
  if (currentView.rows.length === 0) {
    host.textContent = "no offerings match the request";
    return;
  }

  const controls = document.createElement("div");
  const search = document.createElement("input");
  search.placeholder = "regex filter (provider, region, ...)";
  search.value = currentView.namePattern;
  const searchError = document.createElement("span");
  searchError.className = "inline-error";
  search.addEventListener("input", () => {
    currentView = setPattern(currentView!, search.value);
    try {
      paintTable();
      searchError.textContent = "";
    } catch (exc) {
      searchError.textContent = (exc as Error).message;
    }
  });
  controls.append("search: ", search, searchError);

  const chooser = document.createElement("div");
  chooser.append("columns: ");
  for (const column of currentView.columns) {
    const wrap = document.createElement("label");
    const check = document.createElement("input");
    check.type = "checkbox";
    check.checked = currentView.visibleColumns.includes(column);
    check.addEventListener("change", () => {
      currentView = toggleColumn(currentView!, column);
      paintTable();
    });
    wrap.append(check, ` ${column} `);
    chooser.appendChild(wrap);
  }

  const meta = document.createElement("p");
  meta.textContent =
    `fetched ${response?.meta.count ?? currentView.rows.length} records ` +
    `in ${response?.meta.duration_ms ?? "?"} ms (${currentView.currency})`;

  const table = document.createElement("table");
  table.id = "result-table";
  host.append(meta, controls, chooser, table);
  paintTable();
  paintPrevious();
}

function paintTable(): void {
  if (!currentView) return;
  const table = $("result-table") as HTMLTableElement;
  table.textContent = "";
  const { columns, rows } = displayedRows(currentView);

  const head = table.createTHead().insertRow();
  for (const column of columns) {
    const cell = document.createElement("th");
    cell.textContent = column;
    cell.addEventListener("click", () => {
      currentView = sortBy(currentView!, column);
      paintTable();
    });
    head.appendChild(cell);
  }

  const body = table.createTBody();
  rows.forEach((row) => {
    const tr = body.insertRow();
    for (const column of columns) {
      tr.insertCell().textContent = String(row[column] ?? "");
    }
    tr.addEventListener("click", () => expandBreakdown(tr, rows.indexOf(row)));
  });
}

async function expandBreakdown(anchor: HTMLTableRowElement, rowIndex: number): Promise<void> {
  if (!currentView?.resultId) return;
  try {
    const detail = await client.recommendationDetails(currentView.resultId);
    const entry = detail.rows[rowIndex];
    if (!entry) return;
    const expanded = document.createElement("tr");
    const cell = expanded.insertCell();
    cell.colSpan = anchor.cells.length;
    cell.className = "breakdown";
    cell.textContent =
      `#${entry.rank} ${entry.provider_name} / ${entry.region_name}: ` +
      `storage ${entry.storage_offering ?? "-"} = ${entry.storage_cost}, ` +
      `requests = ${entry.requests_cost}, ` +
      `transfer ${entry.transfer_offering} = ${entry.data_transfer_cost} ` +
      `(in ${entry.cost_data_in} / out ${entry.cost_data_out}), ` +
      `compute [${entry.compute_offerings.join(", ")}] = ${entry.compute_total_cost}, ` +
      `total ${entry.total} ${entry.currency}`;
    anchor.after(expanded);
  } catch (exc) {
    banner(`could not fetch breakdown: ${(exc as Error).message}`);
  }
}

function paintPrevious(): void {
  const host = $("previous");
  host.textContent = "";
  if (!previousView) return;
  const caption = document.createElement("p");
  caption.textContent = `previous result (${previousView.currency}), for comparison:`;
  const table = document.createElement("table");
  const { columns, rows } = displayedRows(previousView);
  const head = table.createTHead().insertRow();
  for (const column of columns) {
    const cell = document.createElement("th");
    cell.textContent = column;
    head.appendChild(cell);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    for (const column of columns) {
      tr.insertCell().textContent = String(row[column] ?? "");
    }
  }
  host.append(caption, table);
}

export function boot(): void {
  const modeSelect = $("mode") as HTMLSelectElement;
  modeSelect.addEventListener("change", () => {
    state.mode = modeSelect.value as Mode;
    refreshControls();
  });

  const currencySelect = $("currency") as HTMLSelectElement;
  for (const code of CURRENCIES) {
    const option = document.createElement("option");
    option.value = code;
    option.textContent = code;
    currencySelect.appendChild(option);
  }
  currencySelect.addEventListener("change", () => {
    state.currency = currencySelect.value;
    refreshControls();
  });

  bindInput("duration", (v) => (state.durationDays = v));
  bindInput("storage-gb", (v) => (state.storage.gbPerMonth = v));
  bindInput("inbound", (v) => (state.network.inboundGb = v));
  bindInput("outbound", (v) => (state.network.outboundGb = v));

  $("add-slot").addEventListener("click", () => {
    state.compute.slots.push(emptySlot());
    renderComputeSlots();
    refreshControls();
  });
  $("recalculate").addEventListener("click", () => void recalculate());

  renderComputeSlots();
  renderRequestOps();
  renderProviders();
  refreshControls();
}

boot();
