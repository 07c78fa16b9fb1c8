"""HTTP layer: auth, dataset upload, train/predict, result download.

The service is a thin adapter — request bodies are unpacked into plain
arguments, validation runs before any fit regardless of what the client
claims to have checked, fits run on a small worker pool guarded by a
wall-clock timeout, and every successful mutation leaves one action record.

Configuration comes from VANLEARN_* environment variables (see
ServiceConfig.from_env). Responses use {code, message, violations?} for
every error.
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass, replace
from typing import Any, Mapping

from fastapi import Body, FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import codec
from .codec import Cell, Dataset
from .errors import (
    ArgumentError,
    AuthError,
    CaptchaError,
    FitTimeoutError,
    ParamsError,
    ShapeError,
    UnsupportedError,
    VanlearnError,
)
from .ml.gd import GdConfig
from .ml.kmeans import KMeansConfig, KMeansModel, kmeans_fit
from .ml.linear import LinearModel, linreg_fit, linreg_predict
from .ml.logistic import LogisticModel, logreg_fit, logreg_predict, training_accuracy
from .ml.serialize import TrainedModel, model_from_json, model_to_json
from .ml.tree import TreeModel, dtree_fit, dtree_predict, leaf_count
from .store import Store, UserAccount
from .tensor import Matrix, Vector
from .validation import (
    ALGORITHMS,
    DEFAULT_MAX_BYTES,
    DEFAULT_MAX_COLS,
    DEFAULT_MAX_ROWS,
    SchemaRequirement,
    ValidationReport,
    ValidationRules,
    validate_schema,
    validate_size,
)

SESSION_COOKIE = "vanlearn_session"

_STATUS_BY_CODE = {
    "E_AUTH": 401,
    "E_FORBIDDEN": 403,
    "E_NOT_FOUND": 404,
    "E_DUP_USERNAME": 409,
    "E_TIMEOUT": 504,
    "E_WEAK_PASSWORD": 400,
    "E_CAPTCHA": 400,
    "E_PARAMS": 400,
    "E_ARG": 400,
    "E_FORMAT": 400,
    "E_UNSUPPORTED": 400,
    "E_WIRE_SYNTAX": 400,
    "E_KEY_MISMATCH": 400,
    "E_RAGGED": 400,
    "E_ENCODING": 400,
    "E_DUP_COLUMN": 400,
    "E_EMPTY": 400,
    "E_SCHEMA": 400,
    # fit-time errors on data that passed validation
    "E_SHAPE": 422,
    "E_TOO_FEW_ROWS": 422,
    "E_DEGENERATE": 422,
    "E_LABEL_CARDINALITY": 422,
    "E_NON_FINITE": 422,
}


# ---------------------------------------------------------------------------
# configuration & captcha


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8080
    db_path: str = "vanlearn.db"
    captcha_mode: str = "off"  # off | stub | real
    captcha_secret: str = ""
    max_bytes: int = DEFAULT_MAX_BYTES
    max_rows: int = DEFAULT_MAX_ROWS
    max_cols: int = DEFAULT_MAX_COLS
    fit_timeout_secs: float = 60.0
    max_concurrent_fits: int = 2
    static_dir: str = "frontend/dist"

    @classmethod
    def from_env(cls, env: Mapping[str, str] | None = None) -> "ServiceConfig":
        env = os.environ if env is None else env
        cfg = cls()

        def geti(key: str, fallback: int) -> int:
            return int(env.get(key, fallback))

        return replace(
            cfg,
            port=geti("VANLEARN_PORT", cfg.port),
            db_path=env.get("VANLEARN_DB_PATH", cfg.db_path),
            captcha_mode=env.get("VANLEARN_CAPTCHA", cfg.captcha_mode),
            captcha_secret=env.get("VANLEARN_CAPTCHA_SECRET", cfg.captcha_secret),
            max_bytes=geti("VANLEARN_MAX_BYTES", cfg.max_bytes),
            max_rows=geti("VANLEARN_MAX_ROWS", cfg.max_rows),
            max_cols=geti("VANLEARN_MAX_COLS", cfg.max_cols),
            fit_timeout_secs=float(env.get("VANLEARN_FIT_TIMEOUT_SECS", cfg.fit_timeout_secs)),
            static_dir=env.get("VANLEARN_STATIC_DIR", cfg.static_dir),
        )

    def rules(self) -> ValidationRules:
        return ValidationRules(self.max_bytes, self.max_rows, self.max_cols)


class NullCaptcha:
    """Verifier for captcha_mode=off: everything passes."""

    def verify(self, token: str, client_ip: str) -> bool:
        return True


class StubCaptcha:
    """Deterministic test verifier: accepts exactly the token "test-ok"."""

    def verify(self, token: str, client_ip: str) -> bool:
        return token == "test-ok"


class RecaptchaVerifier:
    """Calls the hosted verification endpoint; needs network and a secret."""

    VERIFY_URL = "https://www.google.com/recaptcha/api/siteverify"

    def __init__(self, secret: str):
        self.secret = secret

    def verify(self, token: str, client_ip: str) -> bool:
        import httpx

        resp = httpx.post(
            self.VERIFY_URL,
            data={"secret": self.secret, "response": token, "remoteip": client_ip},
            timeout=10.0,
        )
        return bool(resp.json().get("success"))


def make_verifier(cfg: ServiceConfig):
    if cfg.captcha_mode == "off":
        return NullCaptcha()
    if cfg.captcha_mode == "stub":
        return StubCaptcha()
    if cfg.captcha_mode == "real":
        return RecaptchaVerifier(cfg.captcha_secret)
    raise ArgumentError(f"unknown captcha mode {cfg.captcha_mode!r}")


# ---------------------------------------------------------------------------
# analysis core bridging (pure functions, no HTTP types)


def _feature_matrix(d: Dataset, skip: int | None = None) -> Matrix:
    """Numeric matrix of all columns except `skip`; text cells are a shape
    fault here because validation happens before any call."""
    cols = [j for j in range(d.n_cols) if j != skip]
    rows: list[list[float]] = []
    for i, row in enumerate(d.rows):
        out = []
        for j in cols:
            cell = row[j]
            if not isinstance(cell, float):
                raise ShapeError(f"non-numeric value at row {i}, column {d.columns[j]!r}")
            out.append(cell)
        rows.append(out)
    if not rows:
        return Matrix(0, len(cols), [])
    return Matrix(len(rows), len(cols), [v for r in rows for v in r])


def _fresh_name(base: str, taken: tuple[str, ...]) -> str:
    name = base
    while name in taken:
        name += "_"
    return name


def _append_column(d: Dataset, name: str, cells: list[Cell]) -> Dataset:
    columns = d.columns + (_fresh_name(name, d.columns),)
    rows = tuple(row + (cells[i],) for i, row in enumerate(d.rows))
    return Dataset(columns, rows)


def parse_params(algorithm: str, params: Mapping[str, Any]) -> dict[str, int]:
    """Enforce the per-algorithm parameter arity: kmeans takes k, the two
    regressions take target_column, the tree takes nothing."""
    if algorithm not in ALGORITHMS:
        raise ParamsError(f"unknown algorithm {algorithm!r}")
    extra = set(params) - ({"k"} if algorithm == "kmeans" else {"target_column"})
    if algorithm == "dtree":
        extra = set(params)
    if extra:
        raise ParamsError(f"unexpected params for {algorithm}: {sorted(extra)}")
    if algorithm == "kmeans":
        if "k" not in params:
            raise ParamsError("kmeans requires param k")
        k = params["k"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise ParamsError("k must be an integer")
        return {"k": k}
    if algorithm in ("linreg", "logreg"):
        if "target_column" not in params:
            raise ParamsError(f"{algorithm} requires param target_column")
        t = params["target_column"]
        if not isinstance(t, int) or isinstance(t, bool):
            raise ParamsError("target_column must be an integer")
        return {"target_column": t}
    return {}


@dataclass(frozen=True)
class AnalysisOutcome:
    algorithm: str
    model_json: str
    summary: dict[str, Any]
    output: Dataset


def run_train(algorithm: str, d: Dataset, params: Mapping[str, int]) -> AnalysisOutcome:
    """Fit on a validated dataset and build the result table: kmeans gets
    the input plus a cluster column, supervised fits get a summary table."""
    if algorithm == "kmeans":
        model: TrainedModel = kmeans_fit(_feature_matrix(d), KMeansConfig(k=params["k"]))
        assert isinstance(model, KMeansModel)
        output = _append_column(d, "cluster", [float(a) for a in model.assignments])
        summary: dict[str, Any] = {
            "algorithm": algorithm,
            "inertia": model.inertia,
            "assignments": list(model.assignments),
            "iterations": model.iterations_run,
        }
    elif algorithm in ("linreg", "logreg"):
        target = params["target_column"]
        X = _feature_matrix(d, skip=target)
        feature_names = [d.columns[j] for j in range(d.n_cols) if j != target]
        if algorithm == "linreg":
            y = Vector([row[target] for row in d.rows])
            model = linreg_fit(X, y, GdConfig())
            summary = {
                "algorithm": algorithm,
                "coefficients": model.weights.to_list(),
                "intercept": model.intercept,
                "iterations": model.iterations_run,
            }
        else:
            labels = [row[target] for row in d.rows]
            model = logreg_fit(X, labels, GdConfig())
            summary = {
                "algorithm": algorithm,
                "coefficients": model.weights.to_list(),
                "intercept": model.intercept,
                "accuracy": training_accuracy(model, X, labels),
                "labels": [codec.render_cell(c) for c in model.label_map],
                "iterations": model.iterations_run,
            }
        rows: list[tuple[Cell, ...]] = [
            (name, w) for name, w in zip(feature_names, model.weights.to_list())
        ]
        rows.append(("(intercept)", model.intercept))
        output = Dataset(("term", "coefficient"), tuple(rows))
    else:  # dtree
        model = dtree_fit(d)
        assert isinstance(model, TreeModel)
        summary = {
            "algorithm": algorithm,
            "depth": model.depth,
            "leaves": leaf_count(model.root),
            "accuracy": model.training_accuracy,
            "classes": list(model.class_labels),
        }
        output = Dataset(
            ("property", "value"),
            (
                ("depth", float(model.depth)),
                ("leaves", float(leaf_count(model.root))),
                ("training_accuracy", model.training_accuracy),
                ("classes", "|".join(model.class_labels)),
            ),
        )
    return AnalysisOutcome(algorithm, model_to_json(model), summary, output)


def run_predict(algorithm: str, model: TrainedModel, d: Dataset) -> AnalysisOutcome:
    """Apply a stored supervised model to new rows; output is the input
    table plus a prediction column."""
    if isinstance(model, KMeansModel):
        raise UnsupportedError("k-means results do not support predict")
    X = _feature_matrix(d)
    if isinstance(model, LinearModel):
        expected = model.weights.len
    elif isinstance(model, LogisticModel):
        expected = model.weights.len
    else:
        expected = model.n_features
    if X.cols != expected:
        raise ShapeError(f"model expects {expected} feature columns, got {X.cols}")
    predictions: list[Cell]
    if isinstance(model, LinearModel):
        predictions = list(linreg_predict(model, X).to_list())
    elif isinstance(model, LogisticModel):
        predictions = list(logreg_predict(model, X)[0])
    else:
        predictions = list(dtree_predict(model, X))
    output = _append_column(d, "prediction", predictions)
    return AnalysisOutcome(
        algorithm, model_to_json(model), {"algorithm": algorithm, "rows": d.n_rows}, output
    )


# ---------------------------------------------------------------------------
# app factory


def _error_body(code: str, message: str, report: ValidationReport | None = None) -> dict:
    body: dict[str, Any] = {"code": code, "message": message}
    if report is not None:
        body["violations"] = [
            {"code": v.code, "message": v.message, "row": v.row, "col": v.col}
            for v in report.violations
        ]
    return body


def _report_response(report: ValidationReport, status: int | None = None) -> JSONResponse:
    first = report.violations[0]
    if status is None:
        status = 413 if any(v.code == "V_BYTES" for v in report.violations) else 400
    return JSONResponse(
        status_code=status,
        content=_error_body(first.code, first.message, report),
    )


def create_app(cfg: ServiceConfig | None = None, store: Store | None = None) -> FastAPI:
    cfg = cfg or ServiceConfig.from_env()
    store = store or Store(cfg.db_path)
    verifier = make_verifier(cfg)
    fit_pool = concurrent.futures.ThreadPoolExecutor(
        max_workers=cfg.max_concurrent_fits, thread_name_prefix="fit"
    )

    app = FastAPI(title="vanlearn", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store
    app.state.config = cfg

    @app.exception_handler(VanlearnError)
    def _vanlearn_error(request: Request, exc: VanlearnError):
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(status_code=status, content=_error_body(exc.code, exc.message))

    @app.exception_handler(RequestValidationError)
    def _malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content=_error_body("E_PARAMS", "malformed request body")
        )

    @app.exception_handler(StarletteHTTPException)
    def _http_error(request: Request, exc: StarletteHTTPException):
        code = "E_NOT_FOUND" if exc.status_code == 404 else "E_HTTP"
        return JSONResponse(
            status_code=exc.status_code, content=_error_body(code, str(exc.detail))
        )

    @app.exception_handler(Exception)
    def _unexpected_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500, content=_error_body("E_INTERNAL", "unexpected server error")
        )

    # -- helpers ---------------------------------------------------------

    def session_token(request: Request) -> str | None:
        header = request.headers.get("authorization", "")
        if header.lower().startswith("bearer "):
            return header[7:].strip()
        return request.cookies.get(SESSION_COOKIE)

    def current_user(request: Request) -> UserAccount | None:
        token = session_token(request)
        if token is None:
            return None
        return store.check_session(token)

    def require_user(request: Request) -> UserAccount:
        user = current_user(request)
        if user is None:
            raise AuthError("sign in required")
        return user

    def check_captcha(request: Request, payload: Mapping[str, Any]):
        if isinstance(verifier, NullCaptcha):
            return
        token = payload.get("captcha_token", "")
        ip = request.client.host if request.client else ""
        if not isinstance(token, str) or not verifier.verify(token, ip):
            raise CaptchaError("captcha verification failed")

    def str_field(payload: Mapping[str, Any], key: str) -> str:
        value = payload.get(key)
        if not isinstance(value, str):
            raise ParamsError(f"missing or non-string field {key!r}")
        return value

    def load_request_dataset(user_id: int, payload: Mapping[str, Any]) -> tuple[Dataset, int]:
        """Resolve the exactly-one-of inline wire data / stored dataset_id
        choice; returns the dataset and its byte size for the size gate."""
        has_inline = "data" in payload and payload["data"] is not None
        has_ref = "dataset_id" in payload and payload["dataset_id"] is not None
        if has_inline == has_ref:
            raise ParamsError("provide exactly one of data / dataset_id")
        if has_inline:
            text = str_field(payload, "data")
            return codec.decode_wire(text), len(text.encode())
        dataset_id = payload["dataset_id"]
        if not isinstance(dataset_id, int) or isinstance(dataset_id, bool):
            raise ParamsError("dataset_id must be an integer")
        stored = store.load_dataset(user_id, dataset_id)
        return codec.parse_csv(stored.csv_bytes), len(stored.csv_bytes)

    def run_with_timeout(fn, *args) -> AnalysisOutcome:
        future = fit_pool.submit(fn, *args)
        try:
            return future.result(timeout=cfg.fit_timeout_secs)
        except concurrent.futures.TimeoutError:
            # The worker thread is left to finish and its result dropped;
            # nothing is persisted for a timed-out request.
            raise FitTimeoutError(
                f"fit exceeded {cfg.fit_timeout_secs}s"
            ) from None

    def analysis_response(user_id: int, outcome: AnalysisOutcome, kind: str) -> dict:
        stored = store.store_result(
            user_id,
            outcome.algorithm,
            outcome.model_json,
            codec.export(outcome.output, "csv"),
            action_detail=f"algorithm={outcome.algorithm}",
            action_kind=kind,
        )
        return {
            "result_id": stored.id,
            "summary": outcome.summary,
            "output": codec.encode_wire(outcome.output),
        }

    # -- auth --------------------------------------------------------------

    @app.post("/api/auth/signup", status_code=201)
    def signup(request: Request, payload: dict = Body(...)):
        check_captcha(request, payload)
        user = store.create_user(
            str_field(payload, "username"),
            str_field(payload, "password"),
            payload.get("email", "") or "",
        )
        return {"user_id": user.id, "username": user.username}

    @app.post("/api/auth/signin")
    def signin(request: Request, response: Response, payload: dict = Body(...)):
        check_captcha(request, payload)
        session = store.authenticate(
            str_field(payload, "username"), str_field(payload, "password")
        )
        store.record_action(session.user_id, "signin")
        response.set_cookie(
            SESSION_COOKIE, session.token, httponly=True, samesite="lax", path="/"
        )
        user = store.check_session(session.token)
        return {"token": session.token, "username": user.username if user else ""}

    @app.post("/api/auth/signout")
    def signout(request: Request, response: Response):
        token = session_token(request)
        if token:
            store.delete_session(token)
        response.delete_cookie(SESSION_COOKIE, path="/")
        return {"ok": True}

    @app.get("/api/auth/status")
    def status(request: Request):
        user = current_user(request)
        if user is None:
            return {"authenticated": False, "username": None}
        return {"authenticated": True, "username": user.username}

    # -- datasets ------------------------------------------------------------

    @app.post("/api/datasets", status_code=201)
    async def upload_dataset(request: Request, name: str = Query("untitled.csv")):
        user = require_user(request)
        raw = await request.body()
        size_only = validate_size(len(raw), 0, 0, cfg.rules())
        if not size_only.ok:
            return _report_response(size_only)
        d = codec.parse_csv(raw)
        report = validate_size(len(raw), d.n_rows, d.n_cols, cfg.rules())
        if not report.ok:
            return _report_response(report)
        stored = store.store_dataset(user.id, name, raw, d.n_rows, d.n_cols)
        store.record_action(user.id, "upload", f"dataset_id={stored.id} name={name}")
        return {
            "dataset_id": stored.id,
            "rows": d.n_rows,
            "cols": d.n_cols,
            "columns": list(d.columns),
        }

    @app.get("/api/datasets")
    def list_datasets(request: Request):
        user = require_user(request)
        return {
            "datasets": [
                {
                    "dataset_id": d.id,
                    "name": d.name,
                    "rows": d.row_count,
                    "cols": d.col_count,
                    "uploaded_at": d.uploaded_at,
                }
                for d in store.list_datasets(user.id)
            ]
        }

    @app.get("/api/datasets/{dataset_id}")
    def get_dataset(request: Request, dataset_id: int):
        user = require_user(request)
        stored = store.load_dataset(user.id, dataset_id)
        return Response(content=stored.csv_bytes, media_type="text/csv")

    # -- analysis ------------------------------------------------------------

    @app.post("/api/analyze/train")
    def train(request: Request, payload: dict = Body(...)):
        user = require_user(request)
        check_captcha(request, payload)
        algorithm = str_field(payload, "algorithm")
        params = payload.get("params") or {}
        if not isinstance(params, dict):
            raise ParamsError("params must be an object")
        parsed = parse_params(algorithm, params)
        d, byte_len = load_request_dataset(user.id, payload)

        report = validate_size(byte_len, d.n_rows, d.n_cols, cfg.rules())
        if not report.ok:
            return _report_response(report, status=400)
        req = SchemaRequirement(algorithm, parsed.get("target_column"))
        report = validate_schema(d, req)
        if not report.ok:
            return _report_response(report, status=400)

        outcome = run_with_timeout(run_train, algorithm, d, parsed)
        return analysis_response(user.id, outcome, "train")

    @app.post("/api/analyze/predict")
    def predict(request: Request, payload: dict = Body(...)):
        user = require_user(request)
        check_captcha(request, payload)
        result_id = payload.get("result_id")
        if not isinstance(result_id, int) or isinstance(result_id, bool):
            raise ParamsError("result_id must be an integer")
        stored = store.load_result(user.id, result_id)
        model = model_from_json(stored.model_json)
        d = codec.decode_wire(str_field(payload, "data"))
        outcome = run_with_timeout(run_predict, stored.algorithm, model, d)
        return analysis_response(user.id, outcome, "predict")

    # -- downloads -----------------------------------------------------------

    @app.get("/api/results/{result_id}/download")
    def download(request: Request, result_id: int, format: str = Query("csv")):
        user = require_user(request)
        stored = store.load_result(user.id, result_id)
        d = codec.parse_csv(stored.output_csv)
        payload = codec.export(d, format)  # E_FORMAT for anything but csv/txt
        media = "text/csv" if format == "csv" else "text/plain"
        store.record_action(user.id, "download", f"result_id={result_id} format={format}")
        return Response(
            content=payload,
            media_type=media,
            headers={
                "Content-Disposition": f'attachment; filename="result-{result_id}.{format}"'
            },
        )

    static_dir = cfg.static_dir
    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


def main():
    import uvicorn

    cfg = ServiceConfig.from_env()
    uvicorn.run(create_app(cfg), host="0.0.0.0", port=cfg.port)


if __name__ == "__main__":
    main()
