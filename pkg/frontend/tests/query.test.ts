import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { buildQuery, endpointFor, queryToParams, StateValidationError } from "../src/query.js";
import { initialState, WidgetState } from "../src/state.js";

const contract = JSON.parse(
  readFileSync(new URL("./fixtures/query-contract.json", import.meta.url), "utf-8"),
) as {
  endpoint: string;
  normalized_params: Record<string, string>;
};

/** The analyst scenario: 50 GB stored, 1000 COPY + 5000 GET, 50 GB in,
 * 10 GB out, one month, AUD. */
function storageScenarioState(): WidgetState {
  const state = initialState();
  state.mode = "storage-only";
  state.currency = "AUD";
  state.durationDays = "31";
  state.storage.gbPerMonth = "50";
  state.storage.requests.copy = { enabled: true, count: "1000" };
  state.storage.requests.get = { enabled: true, count: "5000" };
  state.network.inboundGb = "50";
  state.network.outboundGb = "10";
  return state;
}

describe("buildQuery", () => {
  it("emits exactly the recorded server contract for the storage scenario", () => {
    const state = storageScenarioState();
    expect(endpointFor(state.mode)).toBe(contract.endpoint);
    expect(queryToParams(buildQuery(state))).toEqual(contract.normalized_params);
  });

  it("emits the combined grammar with ranges, hour list and n list", () => {
    const state = storageScenarioState();
    state.mode = "combined";
    state.storage.gbPerMonth = "10";
    state.network.inboundGb = "2";
    state.network.outboundGb = "3";
    state.storage.requests.copy.enabled = false;
    state.storage.requests.get.enabled = false;
    const params = queryToParams(buildQuery(state));
    expect(params.ram_range).toBe("0,69");
    expect(params.storage_range).toBe("0,2040");
    expect(params.hour).toBe("744");
    expect(params.n).toBe("1");
    expect(params.media_type).toBe("json");
    expect(endpointFor(state.mode)).toBe("/api/cost/combined");
  });

  it("joins multiple requirement rows with semicolons and commas", () => {
    const state = storageScenarioState();
    state.mode = "compute-only";
    state.compute.slots = [
      { ramLow: "0", ramHigh: "69", storageLow: "0", storageHigh: "2040",
        hours: "744", months: "", instances: "1" },
      { ramLow: "1", ramHigh: "4", storageLow: "0", storageHigh: "100",
        hours: "100", months: "", instances: "2" },
    ];
    const params = queryToParams(buildQuery(state));
    expect(params.ram_range).toBe("0,69;1,4");
    expect(params.storage_range).toBe("0,2040;0,100");
    expect(params.hour).toBe("744,100");
    expect(params.n).toBe("1,2");
    expect(params.storage).toBeUndefined();
  });

  it("lists selected providers when the all toggle is off", () => {
    const state = storageScenarioState();
    state.providers.all = false;
    state.providers.selected = ["Amazon", "Windows Azure"];
    expect(queryToParams(buildQuery(state)).providers).toBe("Amazon,Windows Azure");
  });

  it("normalizes entered numbers", () => {
    const state = storageScenarioState();
    state.storage.gbPerMonth = " 50.0 ";
    expect(queryToParams(buildQuery(state)).storage).toBe("50");
  });

  it("refuses invalid state with the validation messages", () => {
    const state = storageScenarioState();
    state.network.outboundGb = "";
    expect(() => buildQuery(state)).toThrowError(StateValidationError);
    try {
      buildQuery(state);
    } catch (exc) {
      expect((exc as StateValidationError).problems.join(" ")).toContain("outbound");
    }
  });

  it("refuses inverted ranges before any request is sent", () => {
    const state = storageScenarioState();
    state.mode = "combined";
    state.compute.slots[0].ramLow = "69";
    state.compute.slots[0].ramHigh = "0";
    expect(() => buildQuery(state)).toThrowError(/low > high/);
  });

  it("rows keep hour and n lists aligned by construction", () => {
    const state = storageScenarioState();
    state.mode = "combined";
    state.compute.slots.push({
      ramLow: "1", ramHigh: "4", storageLow: "0", storageHigh: "100",
      hours: "100", months: "", instances: "2",
    });
    const params = queryToParams(buildQuery(state));
    expect(params.ram_range.split(";").length).toBe(params.hour.split(",").length);
    expect(params.ram_range.split(";").length).toBe(params.n.split(",").length);
  });
});
