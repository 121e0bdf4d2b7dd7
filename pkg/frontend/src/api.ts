/** Typed client for the proof checking HTTP service. */

import type {
  CheckRequest,
  Exercise,
  ExerciseSummary,
  FeedbackReport,
  GenerateRequest,
  Hint,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function request<T>(
  base: string,
  path: string,
  init?: RequestInit,
): Promise<T> {
  const resp = await fetch(base + path, init);
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = (await resp.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class Client {
  constructor(private readonly base: string = "") {}

  listExercises(): Promise<ExerciseSummary[]> {
    return request(this.base, "/exercises");
  }

  getExercise(id: string): Promise<Exercise> {
    return request(this.base, `/exercises/${encodeURIComponent(id)}`);
  }

  getHints(id: string): Promise<Hint[]> {
    return request(this.base, `/exercises/${encodeURIComponent(id)}/hints`);
  }

  check(req: CheckRequest): Promise<FeedbackReport> {
    return request(this.base, "/check", post(req));
  }

  generate(req: GenerateRequest): Promise<Exercise> {
    return request(this.base, "/generate", post(req));
  }

  listFamilies(): Promise<string[]> {
    return request(this.base, "/families");
  }
}
