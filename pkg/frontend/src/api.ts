/** HTTP client for the analysis service. All methods resolve with parsed
 * JSON or reject with an ApiError carrying the server's stable error code
 * and any validation violations. Sessions ride on the http-only cookie the
 * server sets, so no token handling happens here.
 */

import type {
  AnalyzeResponse,
  ApiLike,
  AuthStatus,
  DatasetMeta,
  PredictRequest,
  TrainRequest,
  UploadResponse,
  Violation,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public violations: Violation[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function throwFrom(resp: Response): Promise<never> {
  let code = "E_HTTP";
  let message = `request failed with status ${resp.status}`;
  let violations: Violation[] = [];
  try {
    const body: unknown = await resp.json();
    if (body && typeof body === "object") {
      const rec = body as Record<string, unknown>;
      if (typeof rec.code === "string") code = rec.code;
      if (typeof rec.message === "string") message = rec.message;
      if (Array.isArray(rec.violations)) violations = rec.violations as Violation[];
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(resp.status, code, message, violations);
}

export class ApiClient implements ApiLike {
  constructor(private base = "") {}

  private async send(method: string, path: string, init: RequestInit = {}): Promise<Response> {
    const resp = await fetch(this.base + path, { method, ...init });
    if (!resp.ok) await throwFrom(resp);
    return resp;
  }

  private async json<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit =
      body === undefined
        ? {}
        : { headers: { "content-type": "application/json" }, body: JSON.stringify(body) };
    const resp = await this.send(method, path, init);
    return (await resp.json()) as T;
  }

  status(): Promise<AuthStatus> {
    return this.json("GET", "/api/auth/status");
  }

  signup(username: string, password: string, captchaToken?: string): Promise<unknown> {
    const payload: Record<string, string> = { username, password };
    if (captchaToken !== undefined) payload.captcha_token = captchaToken;
    return this.json("POST", "/api/auth/signup", payload);
  }

  signin(username: string, password: string, captchaToken?: string): Promise<unknown> {
    const payload: Record<string, string> = { username, password };
    if (captchaToken !== undefined) payload.captcha_token = captchaToken;
    return this.json("POST", "/api/auth/signin", payload);
  }

  signout(): Promise<unknown> {
    return this.json("POST", "/api/auth/signout", {});
  }

  async uploadDataset(name: string, csvText: string): Promise<UploadResponse> {
    const resp = await this.send("POST", `/api/datasets?name=${encodeURIComponent(name)}`, {
      headers: { "content-type": "text/csv" },
      body: csvText,
    });
    return (await resp.json()) as UploadResponse;
  }

  async listDatasets(): Promise<DatasetMeta[]> {
    const body = await this.json<{ datasets: DatasetMeta[] }>("GET", "/api/datasets");
    return body.datasets;
  }

  train(req: TrainRequest): Promise<AnalyzeResponse> {
    return this.json("POST", "/api/analyze/train", req);
  }

  predict(req: PredictRequest): Promise<AnalyzeResponse> {
    return this.json("POST", "/api/analyze/predict", req);
  }

  downloadUrl(resultId: number, format: "csv" | "txt"): string {
    return `${this.base}/api/results/${resultId}/download?format=${format}`;
  }
}
