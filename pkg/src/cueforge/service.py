"""HTTP layer over the auth core and image generators.

Registration codes are returned directly to the caller (no email in the
demo); unknown usernames receive a deterministic synthetic challenge so
the login endpoints never disclose whether an account exists.

Configuration comes from a key-value file and/or CUEFORGE_* environment
variables; see ApiConfig.
"""

import hmac
import os
import secrets
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import authcore
from .cueblot import generate_cueblot
from .errors import (
    AlreadyRegistered,
    EmptySecret,
    ExpiredCode,
    InvalidCode,
    InvalidParams,
    MissingCueParams,
    UnknownUser,
)
from .params import CueblotParams
from .prng import SplitMix64
from .raster import encode_png, raster_digest

ENV_PREFIX = "CUEFORGE_"


@dataclass
class ApiConfig:
    bind_address: str = "127.0.0.1:8000"
    store_path: str = "cueforge-store.json"
    log_path: str = "cueforge-attempts.jsonl"
    lockout_threshold: int = authcore.DEFAULT_LOCKOUT_THRESHOLD
    cooldown_seconds: float = authcore.DEFAULT_COOLDOWN_SECONDS
    canvas: int = 256
    gap_window: float = authcore.DEFAULT_GAP_WINDOW_SECONDS
    static_dir: Optional[str] = None
    admin_token: Optional[str] = None
    # Scrypt cost; lowered in tests, production default in ScryptScheme.
    scrypt_n: int = 2 ** 14

    _FIELD_TYPES = {
        "bind_address": str, "store_path": str, "log_path": str,
        "lockout_threshold": int, "cooldown_seconds": float, "canvas": int,
        "gap_window": float, "static_dir": str, "admin_token": str,
        "scrypt_n": int,
    }

    def __post_init__(self):
        if self.canvas not in (128, 256, 512):
            raise ValueError(f"config field 'canvas' must be 128, 256 or 512, got {self.canvas}")
        if self.lockout_threshold < 1:
            raise ValueError(f"config field 'lockout_threshold' must be >= 1, got {self.lockout_threshold}")
        if self.cooldown_seconds < 0:
            raise ValueError(f"config field 'cooldown_seconds' must be >= 0, got {self.cooldown_seconds}")
        if self.gap_window <= 0:
            raise ValueError(f"config field 'gap_window' must be > 0, got {self.gap_window}")
        if self.scrypt_n < 2 or self.scrypt_n & (self.scrypt_n - 1):
            raise ValueError(f"config field 'scrypt_n' must be a power of two >= 2, got {self.scrypt_n}")
        if self.static_dir is not None and not Path(self.static_dir).is_dir():
            raise ValueError(f"config field 'static_dir' is not a directory: {self.static_dir}")

    @classmethod
    def load(cls, config_file: str | None = None, env: dict | None = None) -> "ApiConfig":
        """Build a config from an optional key-value file plus CUEFORGE_*
        environment overrides (environment wins)."""
        env = os.environ if env is None else env
        values: dict = {}
        config_file = config_file or env.get(ENV_PREFIX + "CONFIG")
        if config_file:
            for line_number, line in enumerate(Path(config_file).read_text().splitlines(), 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"{config_file}:{line_number}: expected 'key = value'")
                key, _, raw = line.partition("=")
                values[key.strip()] = raw.strip()
        for name in cls._FIELD_TYPES:
            env_key = ENV_PREFIX + name.upper()
            if env_key in env:
                values[name] = env[env_key]
        kwargs = {}
        for key, raw in values.items():
            caster = cls._FIELD_TYPES.get(key)
            if caster is None:
                raise ValueError(f"unknown config field {key!r}")
            try:
                kwargs[key] = caster(raw)
            except (TypeError, ValueError) as exc:
                raise ValueError(f"config field {key!r}: {exc}") from exc
        return cls(**kwargs)


class RegisterStartBody(BaseModel):
    username: str


class RegisterCompleteBody(BaseModel):
    code: str
    secret: str
    condition: str
    cue_params: Optional[str] = None


class LoginStartBody(BaseModel):
    username: str


class LoginAttemptBody(BaseModel):
    username: str
    secret: str


def _error(status: int, error_code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error_code": error_code, "message": message})


def _dummy_params(anti_enum_key: bytes, username: str) -> CueblotParams:
    """Deterministic decoy cue for unknown usernames."""
    digest = hmac.new(anti_enum_key, username.encode(), "sha256").digest()
    rng = SplitMix64(int.from_bytes(digest[:8], "big"))
    return CueblotParams(
        seed=rng.next_u64(),
        max_blot_diameter=rng.next_int(24, 96),
        num_blots=rng.next_int(3, 12),
        blot_spacing=rng.next_int(8, 48),
        num_colors=rng.next_int(1, 8),
    )


def _preview_url(params: CueblotParams) -> str:
    return (
        f"/api/cueblot/preview?seed={params.seed}&max_diam={params.max_blot_diameter}"
        f"&num_blots={params.num_blots}&spacing={params.blot_spacing}"
        f"&num_colors={params.num_colors}"
    )


def create_app(config: ApiConfig, clock=None) -> FastAPI:
    auth = authcore.AuthService(
        store_path=config.store_path,
        log_path=config.log_path,
        clock=clock,
        lockout_threshold=config.lockout_threshold,
        cooldown_seconds=config.cooldown_seconds,
        scheme=authcore.ScryptScheme(n=config.scrypt_n),
    )
    anti_enum_key = secrets.token_bytes(32)
    app = FastAPI(title="cueforge", docs_url=None, redoc_url=None)
    app.state.auth = auth
    app.state.config = config

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception):
        # Never leak stack traces; structured error body only.
        return _error(500, "internal", "internal error")

    @app.post("/api/register/start")
    def register_start(body: RegisterStartBody):
        try:
            code = auth.issue_registration_code(body.username)
        except AlreadyRegistered as exc:
            return _error(409, "already_registered", str(exc))
        except ValueError as exc:
            return _error(400, "bad_username", str(exc))
        return {"code": code.code}

    @app.post("/api/register/complete")
    def register_complete(body: RegisterCompleteBody):
        try:
            cue_params = CueblotParams.from_text(body.cue_params) if body.cue_params else None
            cue_digest = None
            if cue_params is not None:
                cue_digest = raster_digest(generate_cueblot(cue_params, config.canvas))
            auth.register(body.code, body.secret, body.condition,
                          cue_params=cue_params, cue_digest=cue_digest)
        except InvalidCode as exc:
            return _error(410, "invalid_code", str(exc))
        except ExpiredCode as exc:
            return _error(410, "expired_code", str(exc))
        except (MissingCueParams, EmptySecret, InvalidParams, ValueError) as exc:
            return _error(400, "bad_request", str(exc))
        return {"ok": True}

    @app.get("/api/cueblot/preview")
    def cueblot_preview(seed: int, max_diam: int, num_blots: int, spacing: int, num_colors: int):
        try:
            params = CueblotParams(seed=seed, max_blot_diameter=max_diam,
                                   num_blots=num_blots, blot_spacing=spacing,
                                   num_colors=num_colors)
        except InvalidParams as exc:
            return _error(400, "invalid_params", str(exc))
        raster = generate_cueblot(params, config.canvas)
        body = encode_png(raster)
        return Response(content=body, media_type="image/png",
                        headers={"ETag": f'"{raster_digest(raster)}"',
                                 "Cache-Control": "public, max-age=31536000, immutable"})

    @app.post("/api/login/start")
    def login_start(body: LoginStartBody):
        try:
            challenge = auth.begin_login(body.username)
            condition = challenge.condition
            cue_params = challenge.cue_params
        except UnknownUser:
            decoy = _dummy_params(anti_enum_key, body.username)
            condition = "cueblot" if decoy.seed % 2 else "password"
            cue_params = decoy if condition == "cueblot" else None
        out = {"condition": condition}
        if cue_params is not None:
            out["cue_image_url"] = _preview_url(cue_params)
        return out

    @app.post("/api/login/attempt")
    def login_attempt(body: LoginAttemptBody):
        try:
            outcome = auth.attempt(body.username, body.secret)
        except UnknownUser:
            # Burn the same hashing cost as a real failed attempt.
            auth.scheme.digest(body.secret, b"\x00" * 16)
            return {"outcome": authcore.OUTCOME_FAILURE}
        if outcome == authcore.OUTCOME_LOCKED_OUT:
            return _error(423, "locked_out",
                          "account temporarily locked after repeated failures")
        return {"outcome": outcome}

    @app.get("/api/admin/stats")
    def admin_stats(x_admin_token: Optional[str] = Header(default=None)):
        if not config.admin_token or x_admin_token != config.admin_token:
            return _error(401, "unauthorized", "admin token required")
        records = auth.log.read()
        out = {}
        for condition in authcore.CONDITIONS:
            stats = authcore.session_stats(
                [r for r in records if r.condition == condition], config.gap_window
            )
            out[condition] = {
                "n_sessions": stats.n_sessions,
                "failed_session_rate": stats.failed_session_rate,
                "mean_attempts_per_failed_session": stats.mean_attempts_per_failed_session,
                "total_failure_sessions": stats.total_failure_sessions,
                "mean_login_duration": stats.mean_login_duration,
            }
        return out

    if config.static_dir:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app


def main() -> None:
    """Run the service from environment / config-file settings."""
    import uvicorn

    config = ApiConfig.load()
    host, _, port = config.bind_address.partition(":")
    uvicorn.run(create_app(config), host=host, port=int(port or "8000"))


if __name__ == "__main__":
    main()
