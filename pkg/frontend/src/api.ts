// Typed client for the snipassist /v1 JSON API. The UI never computes
// suggestions, snippets or document edits itself; everything comes from
// these calls.

export interface Suggestion {
  text: string;
  source_count: number;
  match_kind: string;
}

export interface SnippetInfo {
  code: string;
  source_url: string;
  thread_rank: number;
  answer_score: number;
  position: number;
}

export interface SessionState {
  id: string;
  document: string;
  index: number;
  count: number;
}

export interface SessionUpdate {
  document: string;
  index: number;
  count: number;
}

export type Origin = "content-assist" | "selection" | "question-marks";

export interface BeginSessionRequest {
  query: string;
  origin: Origin;
  document: string;
  region?: { start: number; length: number };
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, `service unreachable: ${String(err)}`);
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  if (response.status === 204) {
    return undefined as T;
  }
  return (await response.json()) as T;
}

export class AssistApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  suggest(q: string, limit: number): Promise<Suggestion[]> {
    const params = new URLSearchParams({ q, limit: String(limit) });
    return request(this.url(`/v1/suggest?${params}`));
  }

  snippets(task: string): Promise<SnippetInfo[]> {
    const params = new URLSearchParams({ task });
    return request(this.url(`/v1/snippets?${params}`));
  }

  beginSession(body: BeginSessionRequest): Promise<SessionState> {
    return request(this.url("/v1/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  nextSnippet(id: string): Promise<SessionUpdate> {
    return request(this.url(`/v1/sessions/${id}/next`), { method: "POST" });
  }

  restore(id: string): Promise<{ document: string }> {
    return request(this.url(`/v1/sessions/${id}/restore`), { method: "POST" });
  }

  rate(id: string, helpful: boolean): Promise<void> {
    return request(this.url(`/v1/sessions/${id}/rate`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ helpful }),
    });
  }

  stats(): Promise<Record<string, number>> {
    return request(this.url("/v1/stats"));
  }
}
