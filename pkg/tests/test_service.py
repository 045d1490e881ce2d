import hashlib
import json
import statistics
import time

import pytest
from fastapi.testclient import TestClient

from cueforge.params import CueblotParams
from cueforge.service import ApiConfig, create_app

CUE_TEXT = "cueblot:v1:42:60:8:30:4"
PREVIEW = "/api/cueblot/preview?seed=42&max_diam=60&num_blots=8&spacing=30&num_colors=4"


@pytest.fixture
def config(tmp_path):
    return ApiConfig(
        store_path=str(tmp_path / "store.json"),
        log_path=str(tmp_path / "attempts.jsonl"),
        admin_token="sekrit-admin",
        scrypt_n=2 ** 11,
    )


@pytest.fixture
def client(config):
    with TestClient(create_app(config), raise_server_exceptions=False) as c:
        yield c


def register(client, username="alice", secret="bunnysplat", condition="cueblot",
             cue_params=CUE_TEXT):
    code = client.post("/api/register/start", json={"username": username}).json()["code"]
    body = {"code": code, "secret": secret, "condition": condition}
    if condition == "cueblot":
        body["cue_params"] = cue_params
    resp = client.post("/api/register/complete", json=body)
    assert resp.status_code == 200, resp.text
    return code


# --- registration ----------------------------------------------------------

def test_register_start_ok(client):
    resp = client.post("/api/register/start", json={"username": "alice"})
    assert resp.status_code == 200
    assert len(resp.json()["code"]) >= 22


def test_register_duplicate_409(client):
    register(client)
    resp = client.post("/api/register/start", json={"username": "alice"})
    assert resp.status_code == 409
    assert resp.json()["error_code"] == "already_registered"


def test_register_malformed_body_400(client):
    resp = client.post("/api/register/start", json={"user": "alice"})
    assert resp.status_code in (400, 422)


def test_register_complete_reused_code_410(client):
    code = register(client)
    resp = client.post("/api/register/complete", json={
        "code": code, "secret": "x", "condition": "password"})
    assert resp.status_code == 410


def test_register_cueblot_without_params_400(client):
    code = client.post("/api/register/start", json={"username": "bob"}).json()["code"]
    resp = client.post("/api/register/complete", json={
        "code": code, "secret": "x", "condition": "cueblot"})
    assert resp.status_code == 400


# --- cue preview -----------------------------------------------------------

def test_preview_deterministic_bytes(client):
    a = client.get(PREVIEW)
    b = client.get(PREVIEW)
    assert a.status_code == 200
    assert a.headers["content-type"] == "image/png"
    assert a.content == b.content
    assert a.headers["etag"] == b.headers["etag"]


def test_preview_invalid_params_400(client):
    resp = client.get("/api/cueblot/preview?seed=1&max_diam=60&num_blots=0&spacing=3&num_colors=4")
    assert resp.status_code == 400
    body = resp.json()
    assert body["error_code"] == "invalid_params"
    assert "num_blots" in body["message"]


def test_preview_size_small_palette(client):
    resp = client.get(PREVIEW)
    assert len(resp.content) < 8192


def test_preview_is_pure(client, config):
    register(client)
    before = hashlib.sha256(open(config.store_path, "rb").read()).hexdigest()
    for seed in range(50):
        client.get(f"/api/cueblot/preview?seed={seed}&max_diam=30&num_blots=3&spacing=10&num_colors=2")
    after = hashlib.sha256(open(config.store_path, "rb").read()).hexdigest()
    assert before == after


# --- login -----------------------------------------------------------------

def test_login_start_returns_cue_url(client):
    register(client)
    resp = client.post("/api/login/start", json={"username": "alice"})
    body = resp.json()
    assert body["condition"] == "cueblot"
    assert body["cue_image_url"] == PREVIEW
    cue = client.get(body["cue_image_url"])
    assert cue.status_code == 200


def test_login_attempt_success(client):
    register(client)
    client.post("/api/login/start", json={"username": "alice"})
    resp = client.post("/api/login/attempt", json={"username": "alice", "secret": "bunnysplat"})
    assert resp.json() == {"outcome": "success"}


def test_lockout_423_on_fourth_failure(client):
    register(client)
    client.post("/api/login/start", json={"username": "alice"})
    for _ in range(3):
        resp = client.post("/api/login/attempt", json={"username": "alice", "secret": "wrong"})
        assert resp.status_code == 200
        assert resp.json()["outcome"] == "failure"
    resp = client.post("/api/login/attempt", json={"username": "alice", "secret": "wrong"})
    assert resp.status_code == 423
    assert resp.json()["error_code"] == "locked_out"


def test_unknown_user_not_disclosed(client):
    resp = client.post("/api/login/start", json={"username": "ghost-user"})
    assert resp.status_code == 200
    assert resp.json()["condition"] in ("password", "cueblot")
    again = client.post("/api/login/start", json={"username": "ghost-user"})
    assert again.json() == resp.json()  # deterministic decoy
    attempt = client.post("/api/login/attempt", json={"username": "ghost-user", "secret": "x"})
    assert attempt.status_code == 200
    assert attempt.json()["outcome"] == "failure"


def test_unknown_user_timing_close_to_known_failure(client):
    register(client)
    client.post("/api/login/start", json={"username": "alice"})

    def median_ms(username):
        times = []
        for _ in range(15):
            t0 = time.perf_counter()
            client.post("/api/login/attempt", json={"username": username, "secret": "wrong"})
            times.append((time.perf_counter() - t0) * 1000)
        return statistics.median(times)

    unknown = median_ms("ghost")
    client.post("/api/login/start", json={"username": "alice"})
    known = median_ms("alice")
    assert abs(known - unknown) < 10.0


# --- admin stats -----------------------------------------------------------

def test_admin_stats_requires_token(client):
    assert client.get("/api/admin/stats").status_code == 401


def test_admin_stats_empty_log_zeros(client):
    resp = client.get("/api/admin/stats", headers={"X-Admin-Token": "sekrit-admin"})
    body = resp.json()
    assert body["password"]["n_sessions"] == 0
    assert body["cueblot"]["n_sessions"] == 0


def test_admin_stats_counts_sessions(client):
    register(client)
    client.post("/api/login/start", json={"username": "alice"})
    client.post("/api/login/attempt", json={"username": "alice", "secret": "wrong"})
    client.post("/api/login/attempt", json={"username": "alice", "secret": "bunnysplat"})
    body = client.get("/api/admin/stats", headers={"X-Admin-Token": "sekrit-admin"}).json()
    assert body["cueblot"]["n_sessions"] == 1
    assert body["cueblot"]["failed_session_rate"] == 1.0
    assert body["cueblot"]["total_failure_sessions"] == 0


# --- hygiene ---------------------------------------------------------------

def test_responses_never_leak_digests(client, config):
    register(client)
    store = json.loads(open(config.store_path).read())
    digest_hex = store["users"]["alice"]["credential_digest"]
    salt_hex = store["users"]["alice"]["salt"]
    for resp in [
        client.post("/api/login/start", json={"username": "alice"}),
        client.post("/api/login/attempt", json={"username": "alice", "secret": "nope"}),
        client.get("/api/admin/stats", headers={"X-Admin-Token": "sekrit-admin"}),
    ]:
        assert digest_hex not in resp.text
        assert salt_hex not in resp.text


def test_errors_are_structured(client):
    resp = client.get("/api/cueblot/preview?seed=1&max_diam=1&num_blots=1&spacing=0&num_colors=1")
    assert resp.status_code == 400
    assert set(resp.json()) == {"error_code", "message"}
    assert "Traceback" not in resp.text


# --- config ----------------------------------------------------------------

def test_config_file_and_env(tmp_path):
    cfg_file = tmp_path / "cueforge.conf"
    cfg_file.write_text("# demo config\nlockout_threshold = 5\ncanvas = 128\n")
    config = ApiConfig.load(str(cfg_file), env={"CUEFORGE_CANVAS": "512"})
    assert config.lockout_threshold == 5
    assert config.canvas == 512  # env wins


def test_config_invalid_field_named(tmp_path):
    with pytest.raises(ValueError, match="canvas"):
        ApiConfig(canvas=100)
    with pytest.raises(ValueError, match="lockout_threshold"):
        ApiConfig(lockout_threshold=0)


def test_config_unknown_key_rejected(tmp_path):
    cfg_file = tmp_path / "bad.conf"
    cfg_file.write_text("mystery = 1\n")
    with pytest.raises(ValueError, match="mystery"):
        ApiConfig.load(str(cfg_file), env={})
