"""Registration / authentication / replacement protocol core.

A pure state machine over a single-file JSON store plus an append-only
JSONL attempt log. The clock is injected so lockout behavior is
deterministic under test. Secrets are stored only as salted scrypt
digests; a scheme identifier travels with each digest for future
migration.
"""

import hashlib
import hmac
import json
import os
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional

from .errors import (
    AlreadyRegistered,
    CorpusFormatError,
    EmptySecret,
    ExpiredCode,
    InvalidCode,
    MissingCueParams,
    UnknownUser,
)
from .params import CueblotParams

SCHEMA_VERSION = 1

CONDITIONS = ("password", "cueblot")

DEFAULT_CODE_TTL_SECONDS = 14 * 24 * 3600
DEFAULT_LOCKOUT_THRESHOLD = 3
DEFAULT_COOLDOWN_SECONDS = 15 * 60
DEFAULT_GAP_WINDOW_SECONDS = 300.0

OUTCOME_SUCCESS = "success"
OUTCOME_FAILURE = "failure"
OUTCOME_LOCKED_OUT = "locked_out"


@dataclass
class ScryptScheme:
    """Memory-hard credential digest parameters."""

    n: int = 2 ** 14
    r: int = 8
    p: int = 1

    @property
    def scheme_id(self) -> str:
        return f"scrypt-n{self.n}-r{self.r}-p{self.p}"

    def digest(self, secret: str, salt: bytes) -> bytes:
        return hashlib.scrypt(secret.encode(), salt=salt, n=self.n, r=self.r,
                              p=self.p, maxmem=128 * 1024 * 1024, dklen=32)


@dataclass
class RegistrationCode:
    code: str
    username: str
    issued_at: float
    consumed: bool = False


@dataclass
class UserRecord:
    username: str
    condition: str
    credential_digest: Optional[bytes]
    salt: bytes
    scheme_id: str
    created_at: float
    cue_params: Optional[CueblotParams] = None
    cue_digest: Optional[str] = None
    pending_replacement: bool = False


@dataclass(frozen=True)
class AttemptRecord:
    username: str
    timestamp: float
    outcome: str
    entry_duration: float
    condition: str = "password"


@dataclass(frozen=True)
class Challenge:
    condition: str
    cue_params: Optional[CueblotParams] = None


@dataclass(frozen=True)
class SessionStats:
    n_sessions: int = 0
    failed_session_rate: float = 0.0
    mean_attempts_per_failed_session: float = 0.0
    total_failure_sessions: int = 0
    mean_login_duration: float = 0.0


def _iso(ts: float) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).isoformat()


def _from_iso(text: str) -> float:
    return datetime.fromisoformat(text).timestamp()


class UserStore:
    """Single-file JSON store with a schema version header.

    Layout: {"schema_version": 1, "users": {...}, "codes": {...}}.
    Writes are atomic (temp file + rename).
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.users: dict[str, UserRecord] = {}
        self.codes: dict[str, RegistrationCode] = {}
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        doc = json.loads(self.path.read_text())
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported store schema version {doc.get('schema_version')}")
        for name, u in doc["users"].items():
            self.users[name] = UserRecord(
                username=name,
                condition=u["condition"],
                credential_digest=bytes.fromhex(u["credential_digest"]) if u["credential_digest"] else None,
                salt=bytes.fromhex(u["salt"]),
                scheme_id=u["scheme_id"],
                created_at=u["created_at"],
                cue_params=CueblotParams.from_text(u["cue_params"]) if u.get("cue_params") else None,
                cue_digest=u.get("cue_digest"),
                pending_replacement=u.get("pending_replacement", False),
            )
        for name, c in doc["codes"].items():
            self.codes[name] = RegistrationCode(
                code=c["code"], username=name,
                issued_at=c["issued_at"], consumed=c["consumed"],
            )

    def save(self) -> None:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "users": {
                name: {
                    "condition": u.condition,
                    "credential_digest": u.credential_digest.hex() if u.credential_digest else None,
                    "salt": u.salt.hex(),
                    "scheme_id": u.scheme_id,
                    "created_at": u.created_at,
                    "cue_params": u.cue_params.to_text() if u.cue_params else None,
                    "cue_digest": u.cue_digest,
                    "pending_replacement": u.pending_replacement,
                }
                for name, u in self.users.items()
            },
            "codes": {
                name: {"code": c.code, "issued_at": c.issued_at, "consumed": c.consumed}
                for name, c in self.codes.items()
            },
        }
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(doc, indent=1, sort_keys=True))
        os.replace(tmp, self.path)


class AttemptLog:
    """Append-only newline-delimited JSON attempt log."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, record: AttemptRecord) -> None:
        line = json.dumps({
            "username": record.username,
            "timestamp": _iso(record.timestamp),
            "outcome": record.outcome,
            "duration_seconds": record.entry_duration,
            "condition": record.condition,
        })
        with open(self.path, "a") as fh:
            fh.write(line + "\n")

    def read(self) -> list[AttemptRecord]:
        if not self.path.exists():
            return []
        return parse_attempt_log(self.path)


def parse_attempt_log(path: str | Path) -> list[AttemptRecord]:
    records = []
    with open(path) as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
                records.append(AttemptRecord(
                    username=doc["username"],
                    timestamp=_from_iso(doc["timestamp"]),
                    outcome=doc["outcome"],
                    entry_duration=float(doc["duration_seconds"]),
                    condition=doc.get("condition", "password"),
                ))
            except (ValueError, KeyError, TypeError) as exc:
                raise CorpusFormatError(f"line {line_number}: bad log line: {exc}", line_number) from exc
    return records


@dataclass
class _LoginState:
    consecutive_failures: int = 0
    locked_until: float = 0.0
    challenge_issued_at: Optional[float] = None


class AuthService:
    """The protocol state machine.

    All mutating operations on a single username are linearized behind one
    lock; session_stats is a pure function over a log snapshot.
    """

    def __init__(
        self,
        store_path: str | Path,
        log_path: str | Path,
        clock: Callable[[], float] = None,
        lockout_threshold: int = DEFAULT_LOCKOUT_THRESHOLD,
        cooldown_seconds: float = DEFAULT_COOLDOWN_SECONDS,
        code_ttl_seconds: float = DEFAULT_CODE_TTL_SECONDS,
        scheme: ScryptScheme = None,
    ):
        import time

        self.store = UserStore(store_path)
        self.log = AttemptLog(log_path)
        self.clock = clock or time.time
        self.lockout_threshold = lockout_threshold
        self.cooldown_seconds = cooldown_seconds
        self.code_ttl_seconds = code_ttl_seconds
        self.scheme = scheme or ScryptScheme()
        self._login_states: dict[str, _LoginState] = {}
        self._lock = threading.RLock()

    # -- registration -----------------------------------------------------

    def issue_registration_code(self, username: str) -> RegistrationCode:
        if not username or not username.strip():
            raise ValueError("username must be non-empty")
        with self._lock:
            user = self.store.users.get(username)
            if user is not None and not user.pending_replacement:
                raise AlreadyRegistered(f"user {username!r} is already registered")
            # A re-issued code supersedes and invalidates any earlier one.
            code = RegistrationCode(
                code=secrets.token_urlsafe(16),
                username=username,
                issued_at=self.clock(),
            )
            self.store.codes[username] = code
            self.store.save()
            return code

    def register(
        self,
        code: str,
        secret: str,
        condition: str,
        cue_params: Optional[CueblotParams] = None,
        cue_digest: Optional[str] = None,
    ) -> UserRecord:
        if not secret:
            raise EmptySecret("secret must be non-empty")
        if condition not in CONDITIONS:
            raise ValueError(f"condition must be one of {CONDITIONS}")
        if condition == "cueblot" and cue_params is None:
            raise MissingCueParams("cueblot condition requires cue parameters")
        if condition == "password":
            cue_params = None
            cue_digest = None
        with self._lock:
            issued = None
            for candidate in self.store.codes.values():
                if hmac.compare_digest(candidate.code, code):
                    issued = candidate
                    break
            if issued is None or issued.consumed:
                raise InvalidCode("registration code is unknown or already used")
            if self.clock() - issued.issued_at > self.code_ttl_seconds:
                raise ExpiredCode("registration code has expired")
            issued.consumed = True

            salt = secrets.token_bytes(16)
            user = UserRecord(
                username=issued.username,
                condition=condition,
                credential_digest=self.scheme.digest(secret, salt),
                salt=salt,
                scheme_id=self.scheme.scheme_id,
                created_at=self.clock(),
                cue_params=cue_params,
                cue_digest=cue_digest,
            )
            self.store.users[issued.username] = user
            self.store.save()
            self._login_states.pop(issued.username, None)
            return user

    # -- authentication ---------------------------------------------------

    def _state(self, username: str) -> _LoginState:
        return self._login_states.setdefault(username, _LoginState())

    def begin_login(self, username: str) -> Challenge:
        with self._lock:
            user = self.store.users.get(username)
            if user is None:
                raise UnknownUser(f"no such user {username!r}")
            self._state(username).challenge_issued_at = self.clock()
            return Challenge(condition=user.condition, cue_params=user.cue_params)

    def attempt(self, username: str, secret: str, now: Optional[float] = None) -> str:
        with self._lock:
            user = self.store.users.get(username)
            if user is None:
                raise UnknownUser(f"no such user {username!r}")
            now = self.clock() if now is None else now
            state = self._state(username)
            issued_at = state.challenge_issued_at if state.challenge_issued_at is not None else now
            duration = max(now - issued_at, 0.0)

            if now < state.locked_until:
                outcome = OUTCOME_LOCKED_OUT
            else:
                if state.locked_until and now >= state.locked_until:
                    # Cool-down elapsed: fresh window.
                    state.locked_until = 0.0
                    state.consecutive_failures = 0
                if user.credential_digest is None:
                    ok = False
                    # Replaced credential: burn comparable time, always fail.
                    self.scheme.digest(secret, user.salt)
                else:
                    candidate = self.scheme.digest(secret, user.salt)
                    ok = hmac.compare_digest(candidate, user.credential_digest)
                if ok:
                    state.consecutive_failures = 0
                    outcome = OUTCOME_SUCCESS
                else:
                    state.consecutive_failures += 1
                    outcome = OUTCOME_FAILURE
                    if state.consecutive_failures >= self.lockout_threshold:
                        state.locked_until = now + self.cooldown_seconds
                        state.consecutive_failures = 0

            self.log.append(AttemptRecord(
                username=username, timestamp=now, outcome=outcome,
                entry_duration=duration, condition=user.condition,
            ))
            return outcome

    # -- replacement ------------------------------------------------------

    def request_replacement(self, username: str) -> RegistrationCode:
        with self._lock:
            user = self.store.users.get(username)
            if user is None:
                raise UnknownUser(f"no such user {username!r}")
            user.credential_digest = None
            user.pending_replacement = True
            self.store.save()
            return self.issue_registration_code(username)


def session_stats(
    records: list[AttemptRecord],
    gap_window: float = DEFAULT_GAP_WINDOW_SECONDS,
) -> SessionStats:
    """Segment an attempt log into sessions and summarize.

    A session is a run of consecutive attempts by one user with inter-attempt
    gaps below ``gap_window``. A failed session contains at least one
    failure; a total failure contains failures but no eventual success.
    """
    if not records:
        return SessionStats()
    by_user: dict[str, list[AttemptRecord]] = {}
    for rec in sorted(records, key=lambda r: (r.username, r.timestamp)):
        by_user.setdefault(rec.username, []).append(rec)

    sessions: list[list[AttemptRecord]] = []
    for recs in by_user.values():
        current = [recs[0]]
        for rec in recs[1:]:
            if rec.timestamp - current[-1].timestamp >= gap_window:
                sessions.append(current)
                current = [rec]
            else:
                current.append(rec)
        sessions.append(current)

    failed = [s for s in sessions if any(r.outcome == OUTCOME_FAILURE for r in s)]
    total_failures = [
        s for s in failed if not any(r.outcome == OUTCOME_SUCCESS for r in s)
    ]
    success_durations = [
        r.entry_duration for s in sessions for r in s if r.outcome == OUTCOME_SUCCESS
    ]
    n = len(sessions)
    return SessionStats(
        n_sessions=n,
        failed_session_rate=len(failed) / n,
        mean_attempts_per_failed_session=(
            sum(len(s) for s in failed) / len(failed) if failed else 0.0
        ),
        total_failure_sessions=len(total_failures),
        mean_login_duration=(
            sum(success_durations) / len(success_durations) if success_durations else 0.0
        ),
    )
