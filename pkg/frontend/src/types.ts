/** Shared shapes for the client. Cells are numbers or text — a column is
 * numeric iff every cell in it is a number, mirroring the server. */

export type Cell = number | string;

export interface TableData {
  columns: string[];
  rows: Cell[][];
}

export interface Violation {
  code: string;
  message: string;
  row?: number | null;
  col?: number | null;
}

export interface Rules {
  maxBytes: number;
  maxRows: number;
  maxCols: number;
}

export type Algorithm = "kmeans" | "linreg" | "logreg" | "dtree";

export interface SchemaRequirement {
  algorithm: Algorithm;
  targetColumn?: number;
}

/** Client-side parse/decode failure; codes match the server's error codes. */
export class ParseError extends Error {
  constructor(public code: string, message: string) {
    super(message);
    this.name = "ParseError";
  }
}

// ---------------------------------------------------------------------------
// API payloads

export interface UploadResponse {
  dataset_id: number;
  rows: number;
  cols: number;
  columns: string[];
}

export interface DatasetMeta {
  dataset_id: number;
  name: string;
  rows: number;
  cols: number;
  uploaded_at: string;
}

export interface TrainRequest {
  algorithm: Algorithm;
  params: Record<string, number>;
  dataset_id?: number;
  data?: string;
  captcha_token?: string;
}

export interface PredictRequest {
  result_id: number;
  data: string;
  captcha_token?: string;
}

export interface AnalyzeResponse {
  result_id: number;
  summary: Record<string, unknown>;
  output: string; // wire-encoded result table
}

export interface AuthStatus {
  authenticated: boolean;
  username: string | null;
}

/** The service surface the app needs; tests substitute a fake. */
export interface ApiLike {
  status(): Promise<AuthStatus>;
  signup(username: string, password: string, captchaToken?: string): Promise<unknown>;
  signin(username: string, password: string, captchaToken?: string): Promise<unknown>;
  signout(): Promise<unknown>;
  uploadDataset(name: string, csvText: string): Promise<UploadResponse>;
  listDatasets(): Promise<DatasetMeta[]>;
  train(req: TrainRequest): Promise<AnalyzeResponse>;
  predict(req: PredictRequest): Promise<AnalyzeResponse>;
  downloadUrl(resultId: number, format: "csv" | "txt"): string;
}

/** Injected instead of a native file dialog so flows stay scriptable. */
export type FilePicker = () => Promise<{ name: string; text: string } | null>;
