import type { AnalyzeBagResponse, AnalyzeResponse, ModelInfo, PairInput } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function readError(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") return body.error;
  } catch {
    /* non-JSON error body */
  }
  return `request failed (HTTP ${response.status})`;
}

/** Thin typed client over the documented /api endpoints. All analysis
 * happens server-side; this client never inspects or transforms code. */
export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async post<T>(path: string, payload: unknown, signal?: AbortSignal): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
    if (!response.ok) {
      throw new ApiError(response.status, await readError(response));
    }
    return response.json() as Promise<T>;
  }

  async health(): Promise<boolean> {
    const response = await fetch(`${this.baseUrl}/api/health`);
    if (!response.ok) return false;
    const body = await response.json();
    return body.ok === true;
  }

  async models(): Promise<ModelInfo[]> {
    const response = await fetch(`${this.baseUrl}/api/models`);
    if (!response.ok) {
      throw new ApiError(response.status, await readError(response));
    }
    return response.json() as Promise<ModelInfo[]>;
  }

  analyze(
    problem: string,
    code: string,
    model: string,
    reasoning: boolean,
    signal?: AbortSignal,
  ): Promise<AnalyzeResponse> {
    return this.post<AnalyzeResponse>("/api/analyze", { problem, code, model, reasoning }, signal);
  }

  analyzeBag(pairs: PairInput[], model: string, signal?: AbortSignal): Promise<AnalyzeBagResponse> {
    return this.post<AnalyzeBagResponse>("/api/analyze-bag", { pairs, model }, signal);
  }
}
