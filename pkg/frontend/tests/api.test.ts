import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

interface Captured {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: unknown;
}

function stubFetch(status: number, payload: unknown, captured: Captured[]) {
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string, init?: RequestInit) => {
      captured.push({
        url: String(url),
        method: init?.method ?? "GET",
        headers: (init?.headers as Record<string, string>) ?? {},
        body: init?.body,
      });
      return new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
      });
    }),
  );
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("uploads raw CSV with the name in the query string", async () => {
    const calls: Captured[] = [];
    stubFetch(201, { dataset_id: 3, rows: 2, cols: 2, columns: ["a", "b"] }, calls);
    const api = new ApiClient("");
    const resp = await api.uploadDataset("my data.csv", "a,b\n1,2\n");
    expect(resp.dataset_id).toBe(3);
    expect(calls[0].url).toBe("/api/datasets?name=my%20data.csv");
    expect(calls[0].method).toBe("POST");
    expect(calls[0].headers["content-type"]).toBe("text/csv");
    expect(calls[0].body).toBe("a,b\n1,2\n");
  });

  it("sends train requests as JSON", async () => {
    const calls: Captured[] = [];
    stubFetch(200, { result_id: 9, summary: {}, output: '{"a":1}' }, calls);
    const api = new ApiClient("");
    await api.train({ algorithm: "kmeans", params: { k: 2 }, dataset_id: 3 });
    expect(calls[0].url).toBe("/api/analyze/train");
    expect(calls[0].headers["content-type"]).toBe("application/json");
    expect(JSON.parse(calls[0].body as string)).toEqual({
      algorithm: "kmeans",
      params: { k: 2 },
      dataset_id: 3,
    });
  });

  it("unwraps the dataset list", async () => {
    const calls: Captured[] = [];
    const meta = { dataset_id: 1, name: "x.csv", rows: 4, cols: 2, uploaded_at: "t" };
    stubFetch(200, { datasets: [meta] }, calls);
    const api = new ApiClient("");
    expect(await api.listDatasets()).toEqual([meta]);
    expect(calls[0].url).toBe("/api/datasets");
  });

  it("passes the captcha token through auth payloads when present", async () => {
    const calls: Captured[] = [];
    stubFetch(201, { user_id: 1, username: "kim" }, calls);
    const api = new ApiClient("");
    await api.signup("kim", "hunter22", "test-ok");
    expect(JSON.parse(calls[0].body as string)).toEqual({
      username: "kim",
      password: "hunter22",
      captcha_token: "test-ok",
    });
    await api.signin("kim", "hunter22");
    expect(JSON.parse(calls[1].body as string)).toEqual({
      username: "kim",
      password: "hunter22",
    });
  });

  it("turns error bodies into ApiError with code and violations", async () => {
    const calls: Captured[] = [];
    stubFetch(
      400,
      {
        code: "V_NON_NUMERIC",
        message: "column 'x' has non-numeric value 'a'",
        violations: [{ code: "V_NON_NUMERIC", message: "...", row: 0, col: 0 }],
      },
      calls,
    );
    const api = new ApiClient("");
    const failure = await api.train({ algorithm: "kmeans", params: { k: 2 }, data: "{}" }).then(
      () => null,
      (exc: unknown) => exc,
    );
    expect(failure).toBeInstanceOf(ApiError);
    const err = failure as ApiError;
    expect(err.status).toBe(400);
    expect(err.code).toBe("V_NON_NUMERIC");
    expect(err.violations).toHaveLength(1);
  });

  it("falls back to a generic code on a non-JSON error body", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => new Response("<html>bad gateway</html>", { status: 502 })),
    );
    const api = new ApiClient("");
    const failure = await api.status().then(
      () => null,
      (exc: unknown) => exc,
    );
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(502);
    expect((failure as ApiError).code).toBe("E_HTTP");
  });

  it("builds download URLs from the base", () => {
    const api = new ApiClient("http://localhost:8080");
    expect(api.downloadUrl(12, "txt")).toBe(
      "http://localhost:8080/api/results/12/download?format=txt",
    );
    expect(new ApiClient("").downloadUrl(5, "csv")).toBe("/api/results/5/download?format=csv");
  });
});
