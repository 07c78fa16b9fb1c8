/** Application shell: sidebar navigation plus the four views (Home, Docs,
 * Analyze, My Data). The analyze flow is deliberately terse — clustering is
 * one click once data is loaded, and a supervised run is five clicks end to
 * end (choose file, upload, train, choose test file, predict).
 *
 * Dependencies (HTTP client, file picker) are injected so tests can drive
 * every flow without a server or a native file dialog.
 */

import { ApiError } from "./api.js";
import { parseCsv, utf8Length } from "./csv.js";
import { numericColumns, renderScatter } from "./scatter.js";
import { renderTable, renderViolations } from "./table.js";
import {
  ParseError,
  type Algorithm,
  type ApiLike,
  type FilePicker,
  type TableData,
  type Violation,
} from "./types.js";
import { DEFAULT_RULES, validateSchema, validateSize } from "./validate.js";
import { decodeWire, encodeWire } from "./wire.js";

export interface AppDeps {
  api: ApiLike;
  pickFile: FilePicker;
}

interface PickedFile {
  name: string;
  text: string;
  table: TableData;
}

const VIEWS = ["home", "docs", "analyze", "data"] as const;
type View = (typeof VIEWS)[number];

const SKELETON = `
<div class="layout">
  <nav class="sidebar">
    <h1 class="brand">vanlearn</h1>
    <a href="#" id="nav-home">Home</a>
    <a href="#" id="nav-docs">Docs</a>
    <a href="#" id="nav-analyze" class="active">Analyze</a>
    <a href="#" id="nav-data">My Data</a>
    <p id="auth-badge" class="auth-badge"></p>
  </nav>
  <main class="content">
    <section id="view-home" hidden>
      <h2>Machine learning from a CSV file</h2>
      <p>Upload a table, pick an algorithm, and download a trained model's
      results — no code required.</p>
      <div class="auth-forms">
        <form class="auth-card">
          <h3>Create account</h3>
          <input id="su-username" placeholder="username" autocomplete="username">
          <input id="su-password" type="password" placeholder="password"
                 autocomplete="new-password">
          <input id="captcha" placeholder="captcha (when enabled)">
          <button id="signup-btn" type="button">Sign up</button>
        </form>
        <form class="auth-card">
          <h3>Sign in</h3>
          <input id="si-username" placeholder="username" autocomplete="username">
          <input id="si-password" type="password" placeholder="password"
                 autocomplete="current-password">
          <button id="signin-btn" type="button">Sign in</button>
          <button id="signout-btn" type="button">Sign out</button>
        </form>
      </div>
      <p id="auth-status"></p>
      <p id="auth-message"></p>
    </section>
    <section id="view-docs" hidden>
      <h2>Docs</h2>
      <p>Data goes in as an RFC 4180 CSV file with a mandatory header row.
      Cells are numbers or text; a column counts as numeric only when every
      cell in it is a number.</p>
      <ul>
        <li>Limits: 2 MiB per file, 10,000 data rows, 100 columns.</li>
        <li><strong>k-means clustering</strong> — every column numeric;
        parameter <code>k</code> picks the cluster count.</li>
        <li><strong>Linear regression</strong> — every column numeric; pick
        the target column to predict.</li>
        <li><strong>Logistic regression</strong> — features numeric; the
        target column holds exactly two distinct labels.</li>
        <li><strong>Decision tree</strong> — features numeric; the last
        column is the class label.</li>
      </ul>
      <p>Results download as CSV or tab-separated text. Prediction files
      carry feature columns only — same columns as training, minus the
      target.</p>
    </section>
    <section id="view-analyze">
      <h2>Analyze</h2>
      <div class="controls">
        <label>Algorithm
          <select id="algorithm">
            <option value="kmeans">k-means clustering</option>
            <option value="linreg">Linear regression</option>
            <option value="logreg">Logistic regression</option>
            <option value="dtree">Decision tree</option>
          </select>
        </label>
        <label id="k-label">k
          <input id="param-k" type="number" min="1" step="1" value="2">
        </label>
        <label id="target-label" hidden>target column
          <input id="param-target" type="number" min="0" step="1" value="">
        </label>
      </div>
      <div class="flow">
        <button id="choose-train" type="button">Choose training CSV…</button>
        <span id="train-file-name" class="file-name"></span>
        <button id="upload" type="button" disabled>Upload</button>
        <button id="run-btn" type="button" disabled>Run</button>
        <button id="train-btn" type="button" disabled hidden>Train</button>
        <button id="choose-test" type="button" disabled hidden>Choose test CSV…</button>
        <span id="test-file-name" class="file-name"></span>
        <button id="predict-btn" type="button" disabled hidden>Predict</button>
      </div>
      <p id="flow-note"></p>
      <div id="violations"></div>
      <div id="preview"></div>
      <div id="summary"></div>
      <div id="result"></div>
      <div id="chart"></div>
      <div id="downloads"></div>
    </section>
    <section id="view-data" hidden>
      <h2>My Data</h2>
      <button id="refresh-data" type="button">Refresh</button>
      <div id="datasets"></div>
    </section>
  </main>
</div>
`;

export function createApp(root: HTMLElement, deps: AppDeps): void {
  root.innerHTML = SKELETON;
  const $ = <T extends HTMLElement>(id: string): T => root.querySelector(`#${id}`) as T;

  const algoSel = $<HTMLSelectElement>("algorithm");
  const kLabel = $("k-label");
  const kInput = $<HTMLInputElement>("param-k");
  const targetLabel = $("target-label");
  const targetInput = $<HTMLInputElement>("param-target");
  const chooseTrainBtn = $<HTMLButtonElement>("choose-train");
  const trainNameSpan = $("train-file-name");
  const uploadBtn = $<HTMLButtonElement>("upload");
  const runBtn = $<HTMLButtonElement>("run-btn");
  const trainBtn = $<HTMLButtonElement>("train-btn");
  const chooseTestBtn = $<HTMLButtonElement>("choose-test");
  const testNameSpan = $("test-file-name");
  const predictBtn = $<HTMLButtonElement>("predict-btn");
  const flowNote = $("flow-note");
  const violationsBox = $("violations");
  const previewBox = $("preview");
  const summaryBox = $("summary");
  const resultBox = $("result");
  const chartBox = $("chart");
  const downloadsBox = $("downloads");
  const captchaInput = $<HTMLInputElement>("captcha");

  const state = {
    train: null as PickedFile | null,
    datasetId: null as number | null,
    resultId: null as number | null, // the trained model used by predict
    expectedFeatures: null as number | null,
    test: null as PickedFile | null,
  };

  const put = (box: HTMLElement, ...children: (HTMLElement | SVGSVGElement)[]) => {
    box.innerHTML = "";
    for (const child of children) box.appendChild(child);
  };

  const note = (text: string) => {
    flowNote.textContent = text;
  };

  function showError(exc: unknown) {
    let items: Violation[];
    if (exc instanceof ApiError) {
      items = exc.violations.length ? exc.violations : [{ code: exc.code, message: exc.message }];
    } else if (exc instanceof ParseError) {
      items = [{ code: exc.code, message: exc.message }];
    } else {
      items = [{ code: "E_INTERNAL", message: String(exc) }];
    }
    put(violationsBox, renderViolations(items));
  }

  // -- navigation --------------------------------------------------------

  function showView(view: View) {
    for (const name of VIEWS) {
      $(`view-${name}`).hidden = name !== view;
      $(`nav-${name}`).classList.toggle("active", name === view);
    }
  }

  for (const name of VIEWS) {
    $(`nav-${name}`).addEventListener("click", (event) => {
      event.preventDefault();
      showView(name);
      if (name === "data") void refreshDatasets();
    });
  }

  // -- auth ----------------------------------------------------------------

  const authStatus = $("auth-status");
  const authMessage = $("auth-message");
  const authBadge = $("auth-badge");

  async function refreshStatus() {
    try {
      const s = await deps.api.status();
      const text = s.authenticated ? `signed in as ${s.username}` : "not signed in";
      authStatus.textContent = text;
      authBadge.textContent = text;
    } catch {
      authStatus.textContent = "server unreachable";
    }
  }

  const captchaToken = () => captchaInput.value.trim() || undefined;

  $("signup-btn").addEventListener("click", () => {
    void (async () => {
      try {
        await deps.api.signup(
          $<HTMLInputElement>("su-username").value,
          $<HTMLInputElement>("su-password").value,
          captchaToken(),
        );
        authMessage.textContent = "account created — sign in to continue";
      } catch (exc) {
        authMessage.textContent = exc instanceof ApiError ? `${exc.code}: ${exc.message}` : String(exc);
      }
    })();
  });

  $("signin-btn").addEventListener("click", () => {
    void (async () => {
      try {
        await deps.api.signin(
          $<HTMLInputElement>("si-username").value,
          $<HTMLInputElement>("si-password").value,
          captchaToken(),
        );
        authMessage.textContent = "";
        await refreshStatus();
      } catch (exc) {
        authMessage.textContent = exc instanceof ApiError ? `${exc.code}: ${exc.message}` : String(exc);
      }
    })();
  });

  $("signout-btn").addEventListener("click", () => {
    void (async () => {
      await deps.api.signout();
      await refreshStatus();
    })();
  });

  // -- my data -------------------------------------------------------------

  async function refreshDatasets() {
    const box = $("datasets");
    try {
      const items = await deps.api.listDatasets();
      const table: TableData = {
        columns: ["id", "name", "rows", "cols", "uploaded"],
        rows: items.map((d) => [d.dataset_id, d.name, d.rows, d.cols, d.uploaded_at]),
      };
      put(box, renderTable(table));
    } catch (exc) {
      box.textContent = exc instanceof ApiError ? `${exc.code}: ${exc.message}` : String(exc);
    }
  }

  $("refresh-data").addEventListener("click", () => void refreshDatasets());

  // -- analyze flow ----------------------------------------------------------

  const algorithm = (): Algorithm => algoSel.value as Algorithm;
  const isSupervisedWithTarget = () => algorithm() === "linreg" || algorithm() === "logreg";

  /** Current-schema violations for the loaded training file, plus any
   * parameter problems that block computing them. */
  function clientViolations(): Violation[] {
    if (!state.train) return [];
    const { text, table } = state.train;
    const out = validateSize(utf8Length(text), table.rows.length, table.columns.length, DEFAULT_RULES);
    if (isSupervisedWithTarget()) {
      const t = Number(targetInput.value);
      if (targetInput.value.trim() === "" || !Number.isInteger(t)) {
        out.push({ code: "E_PARAMS", message: "target column must be an integer" });
        return out;
      }
      out.push(...validateSchema(table, { algorithm: algorithm(), targetColumn: t }));
      return out;
    }
    out.push(...validateSchema(table, { algorithm: algorithm() }));
    return out;
  }

  function revalidate() {
    const problems = clientViolations();
    if (problems.length) {
      put(violationsBox, renderViolations(problems));
    } else {
      violationsBox.innerHTML = "";
    }
    uploadBtn.disabled = !state.train || problems.length > 0 || state.datasetId !== null;
    updateFlowButtons();
  }

  function updateFlowButtons() {
    const kmeans = algorithm() === "kmeans";
    kLabel.hidden = !kmeans;
    targetLabel.hidden = !isSupervisedWithTarget();
    runBtn.hidden = !kmeans;
    trainBtn.hidden = kmeans;
    chooseTestBtn.hidden = kmeans;
    predictBtn.hidden = kmeans;
    const loaded = state.datasetId !== null;
    runBtn.disabled = !loaded;
    trainBtn.disabled = !loaded;
    chooseTestBtn.disabled = state.resultId === null;
    predictBtn.disabled = state.resultId === null || state.test === null;
  }

  algoSel.addEventListener("change", revalidate);
  kInput.addEventListener("input", revalidate);
  targetInput.addEventListener("input", revalidate);

  async function doChooseTrain() {
    const picked = await deps.pickFile();
    if (!picked) return;
    state.datasetId = null;
    state.resultId = null;
    state.expectedFeatures = null;
    state.test = null;
    testNameSpan.textContent = "";
    note("");
    for (const box of [summaryBox, resultBox, chartBox, downloadsBox]) box.innerHTML = "";
    trainNameSpan.textContent = picked.name;
    try {
      const table = parseCsv(picked.text);
      state.train = { ...picked, table };
      put(previewBox, renderTable(table));
      if (isSupervisedWithTarget()) {
        const t = Number(targetInput.value);
        if (targetInput.value.trim() === "" || t >= table.columns.length) {
          targetInput.value = String(table.columns.length - 1);
        }
      }
      revalidate();
    } catch (exc) {
      state.train = null;
      previewBox.innerHTML = "";
      showError(exc);
      updateFlowButtons();
      uploadBtn.disabled = true;
    }
  }

  async function doUpload() {
    // synthetic events can reach a disabled button; never upload past one
    if (!state.train || uploadBtn.disabled) return;
    try {
      const resp = await deps.api.uploadDataset(state.train.name, state.train.text);
      state.datasetId = resp.dataset_id;
      note(`uploaded dataset #${resp.dataset_id} (${resp.rows} rows × ${resp.cols} columns)`);
      revalidate();
    } catch (exc) {
      showError(exc);
    }
  }

  function trainParams(): Record<string, number> | null {
    if (algorithm() === "kmeans") {
      const k = Number(kInput.value);
      if (!Number.isInteger(k) || k < 1) {
        showError(new ParseError("E_PARAMS", "k must be a positive integer"));
        return null;
      }
      return { k };
    }
    if (isSupervisedWithTarget()) {
      return { target_column: Number(targetInput.value) };
    }
    return {};
  }

  function renderSummary(summary: Record<string, unknown>) {
    const list = document.createElement("dl");
    list.className = "summary";
    for (const [key, value] of Object.entries(summary)) {
      if (key === "assignments") continue; // mirrored by the cluster column
      const dt = document.createElement("dt");
      dt.textContent = key;
      const dd = document.createElement("dd");
      dd.textContent = Array.isArray(value) ? value.join(", ") : String(value);
      list.appendChild(dt);
      list.appendChild(dd);
    }
    put(summaryBox, list);
  }

  function renderDownloads(resultId: number) {
    downloadsBox.innerHTML = "";
    for (const format of ["csv", "txt"] as const) {
      const link = document.createElement("a");
      link.href = deps.api.downloadUrl(resultId, format);
      link.setAttribute("download", `result-${resultId}.${format}`);
      link.textContent = `Download ${format.toUpperCase()}`;
      link.className = "download-link";
      downloadsBox.appendChild(link);
    }
  }

  async function doTrain() {
    if (state.datasetId === null) return;
    const params = trainParams();
    if (params === null) return;
    const problems = clientViolations();
    if (problems.length) {
      put(violationsBox, renderViolations(problems));
      return;
    }
    try {
      const resp = await deps.api.train({
        algorithm: algorithm(),
        params,
        dataset_id: state.datasetId,
        captcha_token: captchaToken(),
      });
      violationsBox.innerHTML = "";
      renderSummary(resp.summary);
      const out = decodeWire(resp.output);
      put(resultBox, renderTable(out));
      renderDownloads(resp.result_id);
      if (algorithm() === "kmeans") {
        // the appended cluster assignment column is always last
        put(chartBox, renderScatter(out, { colorColumn: out.columns.length - 1 }));
      } else {
        state.resultId = resp.result_id;
        state.expectedFeatures = state.train!.table.columns.length - 1;
        chartBox.innerHTML = "";
      }
      note(`result #${resp.result_id} ready`);
      updateFlowButtons();
    } catch (exc) {
      showError(exc);
    }
  }

  async function doChooseTest() {
    const picked = await deps.pickFile();
    if (!picked) return;
    state.test = null;
    testNameSpan.textContent = picked.name;
    try {
      const table = parseCsv(picked.text);
      const problems: Violation[] = [];
      if (state.expectedFeatures !== null && table.columns.length !== state.expectedFeatures) {
        problems.push({
          code: "E_SHAPE",
          message: `model expects ${state.expectedFeatures} feature columns, got ${table.columns.length}`,
        });
      }
      if (numericColumns(table).length !== table.columns.length) {
        problems.push({ code: "V_NON_NUMERIC", message: "prediction features must be numeric" });
      }
      if (problems.length) {
        put(violationsBox, renderViolations(problems));
      } else {
        violationsBox.innerHTML = "";
        state.test = { ...picked, table };
      }
    } catch (exc) {
      showError(exc);
    }
    updateFlowButtons();
  }

  async function doPredict() {
    if (state.resultId === null || !state.test) return;
    try {
      const resp = await deps.api.predict({
        result_id: state.resultId,
        data: encodeWire(state.test.table),
        captcha_token: captchaToken(),
      });
      violationsBox.innerHTML = "";
      const out = decodeWire(resp.output);
      put(resultBox, renderTable(out));
      renderDownloads(resp.result_id);
      note(`result #${resp.result_id} ready`);
    } catch (exc) {
      showError(exc);
    }
  }

  chooseTrainBtn.addEventListener("click", () => void doChooseTrain());
  uploadBtn.addEventListener("click", () => void doUpload());
  runBtn.addEventListener("click", () => void doTrain());
  trainBtn.addEventListener("click", () => void doTrain());
  chooseTestBtn.addEventListener("click", () => void doChooseTest());
  predictBtn.addEventListener("click", () => void doPredict());

  showView("analyze");
  updateFlowButtons();
  void refreshStatus();
}
