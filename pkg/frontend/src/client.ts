/** Thin fetch client for the cost API.
 *
 * One query is in flight per panel: when a newer submit supersedes an
 * older one, the older response resolves to null and is discarded, so a
 * slow early answer can never overwrite a fresh one.
 */

import { CostResponse, DetailResponse } from "./types.js";
import { endpointFor } from "./query.js";
import { Mode } from "./state.js";

export interface FetchResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponseLike>;

export class ApiRequestError extends Error {
  constructor(public readonly status: number, message: string) {
    super(message);
    this.name = "ApiRequestError";
  }
}

export class ApiClient {
  private sequence = 0;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  /** Run a cost query; resolves null when a newer submit superseded it. */
  async costQuery(mode: Mode, queryString: string): Promise<CostResponse | null> {
    const ticket = ++this.sequence;
    const body = await this.get(`${endpointFor(mode)}?${queryString}`);
    if (ticket !== this.sequence) {
      return null;
    }
    return body as CostResponse;
  }

  async recommendationDetails(resultId: string): Promise<DetailResponse> {
    const body = await this.get(`/api/recommendation/${encodeURIComponent(resultId)}`);
    return body as DetailResponse;
  }

  private async get(path: string): Promise<unknown> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) {
      const message = await errorMessage(response);
      throw new ApiRequestError(response.status, message);
    }
    return response.json();
  }
}

async function errorMessage(response: FetchResponseLike): Promise<string> {
  try {
    const body = (await response.json()) as { error?: string };
    if (body && typeof body.error === "string") {
      return body.error;
    }
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${response.status}`;
}
