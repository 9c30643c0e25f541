import type {
  DatasetInfo,
  ElicitResult,
  RoundFeedback,
  SchemaJson,
  ServiceErrorPayload,
  SessionSnapshot,
} from "./types";

/** Non-2xx service reply, with the decoded error body attached. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ServiceErrorPayload,
  ) {
    super(payload.detail ?? payload.error);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, init);
  const body = await res.json();
  if (!res.ok) {
    throw new ApiError(res.status, body as ServiceErrorPayload);
  }
  return body as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class Api {
  constructor(readonly base: string) {}

  createDataset(schema: SchemaJson, csv: string): Promise<DatasetInfo> {
    return request(`${this.base}/datasets`, post({ schema, csv }));
  }

  datasetSkyline(datasetId: string): Promise<{ ids: string[] }> {
    return request(`${this.base}/datasets/${datasetId}/skyline`);
  }

  createSession(datasetId: string): Promise<SessionSnapshot> {
    return request(`${this.base}/sessions`, post({ dataset: datasetId }));
  }

  addFeedback(
    sessionId: string,
    feedback: Partial<RoundFeedback>,
  ): Promise<SessionSnapshot> {
    return request(`${this.base}/sessions/${sessionId}/feedback`, post(feedback));
  }

  elicit(sessionId: string): Promise<ElicitResult> {
    return request(`${this.base}/sessions/${sessionId}/elicit`, post({}));
  }

  sessionState(sessionId: string): Promise<SessionSnapshot> {
    return request(`${this.base}/sessions/${sessionId}/state`);
  }
}
