/** Translate widget state into the server's query-string grammar.
 *
 * Ranges serialize as "low,high;low,high", multi-value lists as comma
 * strings, and the UI always asks for json. The grammar is pinned by a
 * recorded contract the server side tests against too.
 */

import {
  includesCompute,
  includesStorage,
  Mode,
  normalizeNumber,
  REQUEST_OPS,
  validateState,
  WidgetState,
} from "./state.js";

export class StateValidationError extends Error {
  constructor(public readonly problems: string[]) {
    super(problems.join("; "));
    this.name = "StateValidationError";
  }
}

export function endpointFor(mode: Mode): string {
  switch (mode) {
    case "storage-only":
      return "/api/cost/storage";
    case "compute-only":
      return "/api/cost/compute";
    case "combined":
      return "/api/cost/combined";
  }
}

export function buildQuery(state: WidgetState): string {
  const problems = validateState(state);
  if (problems.length > 0) {
    throw new StateValidationError(problems);
  }

  const params = new URLSearchParams();
  params.set("media_type", "json");
  params.set("currency", state.currency.trim());
  if (includesStorage(state.mode)) {
    params.set("storage", normalizeNumber(state.storage.gbPerMonth));
  }
  params.set("duration", normalizeNumber(state.durationDays));
  params.set("data_upload_size", normalizeNumber(state.network.inboundGb));
  params.set("data_download_size", normalizeNumber(state.network.outboundGb));

  if (includesStorage(state.mode)) {
    for (const op of REQUEST_OPS) {
      const entry = state.storage.requests[op];
      if (entry.enabled) {
        params.set(op, normalizeNumber(entry.count));
      }
    }
  }

  if (includesCompute(state.mode)) {
    const slots = state.compute.slots;
    params.set(
      "ram_range",
      slots.map((s) => `${normalizeNumber(s.ramLow)},${normalizeNumber(s.ramHigh)}`).join(";"),
    );
    params.set(
      "storage_range",
      slots
        .map((s) => `${normalizeNumber(s.storageLow)},${normalizeNumber(s.storageHigh)}`)
        .join(";"),
    );
    const useMonths = slots[0].months.trim() !== "";
    if (useMonths) {
      params.set("month", slots.map((s) => normalizeNumber(s.months)).join(","));
    } else {
      params.set("hour", slots.map((s) => normalizeNumber(s.hours)).join(","));
    }
    params.set("n", slots.map((s) => normalizeNumber(s.instances)).join(","));
  }

  if (!state.providers.all) {
    params.set("providers", state.providers.selected.join(","));
  }

  return params.toString();
}

/** Parse a query string back into a plain map, for tests and debugging. */
export function queryToParams(query: string): Record<string, string> {
  const result: Record<string, string> = {};
  for (const [key, value] of new URLSearchParams(query)) {
    result[key] = value;
  }
  return result;
}
