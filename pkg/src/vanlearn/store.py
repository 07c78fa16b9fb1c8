"""SQLite-backed persistence for accounts, sessions, datasets, actions, results.

Every query is a parameterized statement. Passwords are stored as salted
PBKDF2-SHA256 hashes (200k iterations), never in clear. Sessions carry a
128-bit random token and a 24-hour expiry that slides on use.
"""

from __future__ import annotations

import base64
import hashlib
import hmac
import secrets
import sqlite3
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources

from .errors import (
    ArgumentError,
    AuthError,
    DuplicateUsernameError,
    ForbiddenError,
    NotFoundError,
    WeakPasswordError,
)

SESSION_TTL_SECS = 24 * 3600
PBKDF2_ITERATIONS = 200_000
MIN_PASSWORD_LEN = 8
USERNAME_RANGE = (3, 32)

ACTION_KINDS = ("signin", "signup", "upload", "train", "predict", "download")


def hash_password(password: str) -> str:
    salt = secrets.token_bytes(16)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, PBKDF2_ITERATIONS)
    return "pbkdf2_sha256${}${}${}".format(
        PBKDF2_ITERATIONS,
        base64.b64encode(salt).decode(),
        base64.b64encode(digest).decode(),
    )


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, iters, salt_b64, digest_b64 = stored.split("$")
        if scheme != "pbkdf2_sha256":
            return False
        salt = base64.b64decode(salt_b64)
        expected = base64.b64decode(digest_b64)
    except (ValueError, TypeError):
        return False
    candidate = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, int(iters))
    return hmac.compare_digest(candidate, expected)


# Hash compared against when the username is unknown, so signin cost does
# not reveal whether the account exists.
_DUMMY_HASH = hash_password("timing-equalizer")


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class UserAccount:
    id: int
    username: str
    email: str
    created_at: str


@dataclass(frozen=True)
class SessionToken:
    token: str
    user_id: int
    expires_at: float


@dataclass(frozen=True)
class StoredDataset:
    id: int
    owner_id: int
    name: str
    csv_bytes: bytes
    row_count: int
    col_count: int
    uploaded_at: str


@dataclass(frozen=True)
class ActionRecord:
    id: int
    user_id: int
    kind: str
    detail: str
    at: str


@dataclass(frozen=True)
class StoredResult:
    id: int
    owner_id: int
    algorithm: str
    model_json: str
    output_csv: bytes
    created_at: str


class Store:
    """One store per database file; connections are per-thread so the HTTP
    layer can serve concurrent requests."""

    def __init__(self, path: str):
        self.path = path
        self._local = threading.local()
        with self._conn() as conn:
            conn.executescript(resources.files("vanlearn").joinpath("schema.sql").read_text())

    def _conn(self) -> sqlite3.Connection:
        conn = getattr(self._local, "conn", None)
        if conn is None:
            conn = sqlite3.connect(self.path, timeout=30.0)
            conn.row_factory = sqlite3.Row
            conn.execute("PRAGMA journal_mode=WAL")
            conn.execute("PRAGMA foreign_keys=ON")
            self._local.conn = conn
        return conn

    def close(self):
        conn = getattr(self._local, "conn", None)
        if conn is not None:
            conn.close()
            self._local.conn = None

    def table_names(self) -> list[str]:
        rows = self._conn().execute(
            "SELECT name FROM sqlite_master WHERE type='table' AND name NOT LIKE 'sqlite_%'"
        ).fetchall()
        return sorted(r["name"] for r in rows)

    # -- users & sessions --------------------------------------------------

    def create_user(self, username: str, password: str, email: str = "") -> UserAccount:
        lo, hi = USERNAME_RANGE
        if not lo <= len(username) <= hi:
            raise ArgumentError(f"username must be {lo}-{hi} characters")
        if len(password) < MIN_PASSWORD_LEN:
            raise WeakPasswordError(f"password must be at least {MIN_PASSWORD_LEN} characters")
        created = _now_iso()
        try:
            with self._conn() as conn:
                cur = conn.execute(
                    "INSERT INTO users (username, password_hash, email, created_at)"
                    " VALUES (?, ?, ?, ?)",
                    (username, hash_password(password), email, created),
                )
        except sqlite3.IntegrityError:
            raise DuplicateUsernameError(f"username {username!r} is taken") from None
        return UserAccount(cur.lastrowid, username, email, created)

    def authenticate(self, username: str, password: str) -> SessionToken:
        """Uniform E_AUTH for unknown user and wrong password alike."""
        row = self._conn().execute(
            "SELECT id, password_hash FROM users WHERE username = ?", (username,)
        ).fetchone()
        stored = row["password_hash"] if row else _DUMMY_HASH
        if not verify_password(password, stored) or row is None:
            raise AuthError("invalid credentials")
        token = base64.urlsafe_b64encode(secrets.token_bytes(16)).decode().rstrip("=")
        expires = time.time() + SESSION_TTL_SECS
        with self._conn() as conn:
            conn.execute(
                "INSERT INTO sessions (token, user_id, expires_at) VALUES (?, ?, ?)",
                (token, row["id"], expires),
            )
        return SessionToken(token, row["id"], expires)

    def check_session(self, token: str) -> UserAccount | None:
        """Valid sessions slide their expiry forward; expired ones are dropped."""
        row = self._conn().execute(
            "SELECT s.token, s.expires_at, u.id, u.username, u.email, u.created_at"
            " FROM sessions s JOIN users u ON u.id = s.user_id WHERE s.token = ?",
            (token,),
        ).fetchone()
        if row is None:
            return None
        now = time.time()
        if row["expires_at"] <= now:
            with self._conn() as conn:
                conn.execute("DELETE FROM sessions WHERE token = ?", (token,))
            return None
        with self._conn() as conn:
            conn.execute(
                "UPDATE sessions SET expires_at = ? WHERE token = ?",
                (now + SESSION_TTL_SECS, token),
            )
        return UserAccount(row["id"], row["username"], row["email"], row["created_at"])

    def delete_session(self, token: str):
        with self._conn() as conn:
            conn.execute("DELETE FROM sessions WHERE token = ?", (token,))

    def get_user(self, username: str) -> UserAccount | None:
        row = self._conn().execute(
            "SELECT id, username, email, created_at FROM users WHERE username = ?",
            (username,),
        ).fetchone()
        if row is None:
            return None
        return UserAccount(row["id"], row["username"], row["email"], row["created_at"])

    # -- datasets -----------------------------------------------------------

    def store_dataset(
        self, owner_id: int, name: str, csv_bytes: bytes, row_count: int, col_count: int
    ) -> StoredDataset:
        uploaded = _now_iso()
        with self._conn() as conn:
            cur = conn.execute(
                "INSERT INTO datasets (owner_id, name, csv_bytes, row_count, col_count,"
                " uploaded_at) VALUES (?, ?, ?, ?, ?, ?)",
                (owner_id, name, csv_bytes, row_count, col_count, uploaded),
            )
        return StoredDataset(cur.lastrowid, owner_id, name, csv_bytes, row_count, col_count, uploaded)

    def load_dataset(self, owner_id: int, dataset_id: int) -> StoredDataset:
        row = self._conn().execute(
            "SELECT * FROM datasets WHERE id = ?", (dataset_id,)
        ).fetchone()
        if row is None:
            raise NotFoundError(f"dataset {dataset_id} not found")
        if row["owner_id"] != owner_id:
            raise ForbiddenError("dataset belongs to another user")
        return StoredDataset(
            row["id"], row["owner_id"], row["name"], row["csv_bytes"],
            row["row_count"], row["col_count"], row["uploaded_at"],
        )

    def list_datasets(self, owner_id: int) -> list[StoredDataset]:
        rows = self._conn().execute(
            "SELECT * FROM datasets WHERE owner_id = ? ORDER BY id", (owner_id,)
        ).fetchall()
        return [
            StoredDataset(
                r["id"], r["owner_id"], r["name"], r["csv_bytes"],
                r["row_count"], r["col_count"], r["uploaded_at"],
            )
            for r in rows
        ]

    # -- actions ------------------------------------------------------------

    def record_action(self, user_id: int, kind: str, detail: str = "") -> ActionRecord:
        if kind not in ACTION_KINDS:
            raise ValueError(f"unknown action kind {kind!r}")
        at = _now_iso()
        with self._conn() as conn:
            cur = conn.execute(
                "INSERT INTO actions (user_id, kind, detail, at) VALUES (?, ?, ?, ?)",
                (user_id, kind, detail, at),
            )
        return ActionRecord(cur.lastrowid, user_id, kind, detail, at)

    def list_actions(self, user_id: int) -> list[ActionRecord]:
        rows = self._conn().execute(
            "SELECT * FROM actions WHERE user_id = ? ORDER BY id", (user_id,)
        ).fetchall()
        return [ActionRecord(r["id"], r["user_id"], r["kind"], r["detail"], r["at"]) for r in rows]

    # -- results ------------------------------------------------------------

    def store_result(
        self,
        owner_id: int,
        algorithm: str,
        model_json: str,
        output_csv: bytes,
        action_detail: str = "",
        action_kind: str | None = None,
    ) -> StoredResult:
        """Insert the result row and, when requested, its audit record in a
        single transaction so a failed train persists nothing. A result that
        is byte-identical to one the owner already has is reused rather than
        duplicated, which keeps repeated identical requests returning the
        same id (the action record is still appended)."""
        created = _now_iso()
        with self._conn() as conn:
            row = conn.execute(
                "SELECT id, created_at FROM results WHERE owner_id = ? AND algorithm = ?"
                " AND model_json = ? AND output_csv = ?",
                (owner_id, algorithm, model_json, output_csv),
            ).fetchone()
            if row is not None:
                result_id, created = row["id"], row["created_at"]
            else:
                cur = conn.execute(
                    "INSERT INTO results (owner_id, algorithm, model_json, output_csv,"
                    " created_at) VALUES (?, ?, ?, ?, ?)",
                    (owner_id, algorithm, model_json, output_csv, created),
                )
                result_id = cur.lastrowid
            if action_kind is not None:
                conn.execute(
                    "INSERT INTO actions (user_id, kind, detail, at) VALUES (?, ?, ?, ?)",
                    (owner_id, action_kind, action_detail, _now_iso()),
                )
        return StoredResult(result_id, owner_id, algorithm, model_json, output_csv, created)

    def load_result(self, owner_id: int, result_id: int) -> StoredResult:
        row = self._conn().execute(
            "SELECT * FROM results WHERE id = ?", (result_id,)
        ).fetchone()
        if row is None:
            raise NotFoundError(f"result {result_id} not found")
        if row["owner_id"] != owner_id:
            raise ForbiddenError("result belongs to another user")
        return StoredResult(
            row["id"], row["owner_id"], row["algorithm"], row["model_json"],
            row["output_csv"], row["created_at"],
        )
