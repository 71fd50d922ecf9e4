/** Widget state: everything the Compute/Storage/Network panels capture.
 *
 * Field values are kept as entered (strings); validateState mirrors the
 * server's request validation so the submit action only enables when the
 * server would accept the query.
 */

export type Mode = "storage-only" | "compute-only" | "combined";

export const REQUEST_OPS = [
  "copy", "get", "put", "post", "list", "delete", "search", "head",
] as const;

export type RequestOpName = (typeof REQUEST_OPS)[number];

export interface RequestCountState {
  enabled: boolean;
  count: string;
}

/** One compute requirement row: capacity bounds plus runtime. */
export interface ComputeSlot {
  ramLow: string;
  ramHigh: string;
  storageLow: string;
  storageHigh: string;
  hours: string;
  months: string;
  instances: string;
}

export interface WidgetState {
  mode: Mode;
  currency: string;
  durationDays: string;
  compute: { slots: ComputeSlot[] };
  storage: { gbPerMonth: string; requests: Record<RequestOpName, RequestCountState> };
  network: { inboundGb: string; outboundGb: string };
  providers: { all: boolean; selected: string[] };
}

export const DEFAULT_PROVIDERS = [
  "Amazon", "Windows Azure", "GoGrid", "RackSpace", "Nirvanix",
  "Ninefold", "SoftLayer", "AT and T Synaptic", "Cloud Central",
];

export const CURRENCIES = ["USD", "AUD", "EUR", "GBP", "JPY", "CAD", "CHF", "CNY", "INR", "NZD"];

export function emptySlot(): ComputeSlot {
  return {
    ramLow: "0",
    ramHigh: "69",
    storageLow: "0",
    storageHigh: "2040",
    hours: "744",
    months: "",
    instances: "1",
  };
}

export function initialState(): WidgetState {
  const requests = {} as Record<RequestOpName, RequestCountState>;
  for (const op of REQUEST_OPS) {
    requests[op] = { enabled: false, count: "" };
  }
  return {
    mode: "storage-only",
    currency: "USD",
    durationDays: "31",
    compute: { slots: [emptySlot()] },
    storage: { gbPerMonth: "", requests },
    network: { inboundGb: "", outboundGb: "" },
    providers: { all: true, selected: [] },
  };
}

const NUMBER = /^\d+(\.\d+)?$/;

export function isNonNegativeNumber(text: string): boolean {
  return NUMBER.test(text.trim());
}

/** Canonical numeric text: trimmed, no trailing fraction zeros. */
export function normalizeNumber(text: string): string {
  const trimmed = text.trim();
  if (!trimmed.includes(".")) return trimmed;
  return trimmed.replace(/0+$/, "").replace(/\.$/, "");
}

export function includesStorage(mode: Mode): boolean {
  return mode === "storage-only" || mode === "combined";
}

export function includesCompute(mode: Mode): boolean {
  return mode === "compute-only" || mode === "combined";
}

/** Client-side mirror of the server's request validation. */
export function validateState(state: WidgetState): string[] {
  const errors: string[] = [];

  // data always moves in and out, so the network panel is never optional
  if (!isNonNegativeNumber(state.network.inboundGb)) {
    errors.push("network: monthly inbound GB is required");
  }
  if (!isNonNegativeNumber(state.network.outboundGb)) {
    errors.push("network: monthly outbound GB is required");
  }

  if (!isNonNegativeNumber(state.durationDays) || Number(state.durationDays) <= 0) {
    errors.push("duration must be a positive number of days");
  }

  if (includesStorage(state.mode)) {
    if (!isNonNegativeNumber(state.storage.gbPerMonth)) {
      errors.push("storage: GB/month is required");
    }
    for (const op of REQUEST_OPS) {
      const entry = state.storage.requests[op];
      if (entry.enabled && !isNonNegativeNumber(entry.count)) {
        errors.push(`storage: number of ${op.toUpperCase()} requests is required`);
      }
    }
  }

  if (includesCompute(state.mode)) {
    if (state.compute.slots.length === 0) {
      errors.push("compute: at least one requirement row is required");
    }
    const useMonths = state.compute.slots.map((slot) => slot.months.trim() !== "");
    if (useMonths.some(Boolean) && !useMonths.every(Boolean)) {
      errors.push("compute: use hours or months consistently across rows");
    }
    state.compute.slots.forEach((slot, i) => {
      const row = `compute row ${i + 1}`;
      for (const [label, low, high] of [
        ["RAM", slot.ramLow, slot.ramHigh],
        ["local storage", slot.storageLow, slot.storageHigh],
      ] as const) {
        if (!isNonNegativeNumber(low) || !isNonNegativeNumber(high)) {
          errors.push(`${row}: ${label} range needs numeric low and high bounds`);
        } else if (Number(low) > Number(high)) {
          errors.push(`${row}: ${label} range has low > high`);
        }
      }
      const hasHours = slot.hours.trim() !== "";
      const hasMonths = slot.months.trim() !== "";
      if (hasHours && hasMonths) {
        errors.push(`${row}: specify hours or months, not both`);
      } else if (!hasHours && !hasMonths) {
        errors.push(`${row}: hours (or months) required`);
      } else if (hasHours && !isNonNegativeNumber(slot.hours)) {
        errors.push(`${row}: hours must be numeric`);
      } else if (hasMonths && !isNonNegativeNumber(slot.months)) {
        errors.push(`${row}: months must be numeric`);
      }
      if (!/^\d+$/.test(slot.instances.trim()) || Number(slot.instances) < 1) {
        errors.push(`${row}: instance count must be a whole number >= 1`);
      }
    });
  }

  if (!state.providers.all && state.providers.selected.length === 0) {
    errors.push("providers: pick at least one provider or enable all");
  }

  if (state.currency.trim() === "") {
    errors.push("currency is required");
  }

  return errors;
}
