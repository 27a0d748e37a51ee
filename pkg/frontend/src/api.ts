/** Thin typed client over fetch; all state lives on the server. */

import type {
  ApiErrorBody,
  Hint,
  LineResponse,
  ProblemDetail,
  ProblemSummary,
  ServiceConfig,
  SessionSummary,
  TeacherReport,
  TemplatesPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(body.message);
  }
}

export class Client {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/v1${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  config(): Promise<ServiceConfig> {
    return this.request("GET", "/config");
  }

  problems(): Promise<ProblemSummary[]> {
    return this.request("GET", "/problems");
  }

  problem(id: string): Promise<ProblemDetail> {
    return this.request("GET", `/problems/${id}`);
  }

  templates(problemId: string): Promise<TemplatesPayload> {
    return this.request("GET", `/problems/${problemId}/templates`);
  }

  parse(text: string): Promise<{ ok: boolean; canonical: string; predicate: string }> {
    return this.request("POST", "/parse", { text });
  }

  createSession(problemId: string, known: string[] = []): Promise<SessionSummary> {
    return this.request("POST", "/sessions", { problem_id: problemId, known });
  }

  submitLine(
    sessionId: string,
    line: { statement_text: string; reason_text: string; refs: number[] },
  ): Promise<LineResponse> {
    return this.request("POST", `/sessions/${sessionId}/lines`, line);
  }

  retractLine(sessionId: string, index: number): Promise<{ session: SessionSummary }> {
    return this.request("DELETE", `/sessions/${sessionId}/lines/${index}`);
  }

  hint(sessionId: string, level: 1 | 2 | 3): Promise<Hint> {
    return this.request("GET", `/sessions/${sessionId}/hint?level=${level}`);
  }

  report(sessionId: string): Promise<TeacherReport> {
    return this.request("GET", `/sessions/${sessionId}/report`);
  }
}
