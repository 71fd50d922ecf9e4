import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError, FetchResponseLike } from "../src/client.js";
import { CostResponse } from "../src/types.js";

const response = JSON.parse(
  readFileSync(new URL("./fixtures/storage-response.json", import.meta.url), "utf-8"),
) as CostResponse;

const detail = JSON.parse(
  readFileSync(new URL("./fixtures/detail-response.json", import.meta.url), "utf-8"),
);

function ok(body: unknown): FetchResponseLike {
  return { ok: true, status: 200, json: () => Promise.resolve(body) };
}

function error(status: number, message: string): FetchResponseLike {
  return { ok: false, status, json: () => Promise.resolve({ error: message }) };
}

describe("ApiClient", () => {
  it("fetches cost rows from the endpoint for the mode", async () => {
    const urls: string[] = [];
    const client = new ApiClient("http://api.test", (url) => {
      urls.push(url);
      return Promise.resolve(ok(response));
    });
    const body = await client.costQuery("storage-only", "storage=50");
    expect(body?.meta.count).toBe(10);
    expect(urls).toEqual(["http://api.test/api/cost/storage?storage=50"]);
  });

  it("discards a stale response superseded by a newer submit", async () => {
    let releaseFirst!: (value: FetchResponseLike) => void;
    const first = new Promise<FetchResponseLike>((resolve) => (releaseFirst = resolve));
    let calls = 0;
    const client = new ApiClient("", () => {
      calls += 1;
      return calls === 1 ? first : Promise.resolve(ok(response));
    });

    const early = client.costQuery("storage-only", "storage=1");
    const late = client.costQuery("storage-only", "storage=2");
    releaseFirst(ok({ ...response, meta: { ...response.meta, count: -1 } }));

    expect(await late).not.toBeNull();
    expect(await early).toBeNull();
  });

  it("surfaces the server's 400 message", async () => {
    const client = new ApiClient("", () =>
      Promise.resolve(error(400, "storage parameter missing or invalid")),
    );
    await expect(client.costQuery("storage-only", "")).rejects.toThrowError(
      /storage parameter missing/,
    );
    await expect(client.costQuery("storage-only", "")).rejects.toBeInstanceOf(ApiRequestError);
  });

  it("fetches per-row breakdowns by result id", async () => {
    const urls: string[] = [];
    const client = new ApiClient("", (url) => {
      urls.push(url);
      return Promise.resolve(ok(detail));
    });
    const body = await client.recommendationDetails("fixture-result");
    expect(urls).toEqual(["/api/recommendation/fixture-result"]);
    expect(body.rows[0].provider_name).toBe("SoftLayer");
    expect(body.rows[0].total).toBe("7.00000");
  });

  it("maps expired ids to a 404 error", async () => {
    const client = new ApiClient("", () =>
      Promise.resolve(error(404, "unknown or expired result id")),
    );
    await expect(client.recommendationDetails("gone")).rejects.toMatchObject({ status: 404 });
  });
});
