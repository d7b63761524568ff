/** Thin typed client for the three backend endpoints.
 *
 * This module is the only place the UI talks to the network; every request
 * goes to /api/query, /api/evidence or /api/feedback.
 */

import type { EvidenceItem, QueryResponse } from "./model.js";

export class ApiError extends Error {
  constructor(public status: number, public code: string, message: string) {
    super(message);
  }
}

export interface ApiClient {
  query(claim: string): Promise<QueryResponse>;
  evidence(queryId: string, ref: string): Promise<EvidenceItem[]>;
  feedback(queryId: string, ref: string, polarity: "up" | "down"): Promise<void>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function fail(response: Response): Promise<never> {
  let code = "http_error";
  let message = `request failed (${response.status})`;
  try {
    const body = await response.json();
    if (body && typeof body.code === "string") {
      code = body.code;
      message = body.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(response.status, code, message);
}

export function createClient(baseUrl = "", fetchFn: FetchLike = fetch): ApiClient {
  return {
    async query(claim) {
      const response = await fetchFn(`${baseUrl}/api/query`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ claim }),
      });
      if (!response.ok) await fail(response);
      return (await response.json()) as QueryResponse;
    },

    async evidence(queryId, ref) {
      const params = new URLSearchParams({ query_id: queryId, perspective_ref: ref });
      const response = await fetchFn(`${baseUrl}/api/evidence?${params}`);
      if (!response.ok) await fail(response);
      return (await response.json()) as EvidenceItem[];
    },

    async feedback(queryId, ref, polarity) {
      const response = await fetchFn(`${baseUrl}/api/feedback`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ query_id: queryId, perspective_ref: ref, polarity }),
      });
      if (!response.ok) await fail(response);
    },
  };
}
