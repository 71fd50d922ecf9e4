/** Wire types of the cost API. */

export interface ResponseMeta {
  count: number;
  duration_ms: number;
  currency: string;
  result_id: string | null;
}

/** One ranked row; column set depends on the query kind. */
export type ResultRow = Record<string, string | number>;

export interface CostResponse {
  meta: ResponseMeta;
  rows: ResultRow[];
}

export interface DetailRow {
  rank: number;
  provider_name: string;
  region_name: string;
  currency: string;
  storage_offering: string | null;
  compute_offerings: string[];
  transfer_offering: string;
  storage_cost: string;
  requests_cost: string;
  cost_data_in: string;
  cost_data_out: string;
  data_transfer_cost: string;
  compute_total_cost: string;
  total: string;
}

export interface DetailResponse {
  meta: { count: number; result_id: string };
  rows: DetailRow[];
}
