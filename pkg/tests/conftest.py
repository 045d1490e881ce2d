import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cueforge.authcore import AuthService, ScryptScheme

DATA_DIR = Path(__file__).parent / "data"

# Low-cost scrypt for tests; the scheme id still travels with each digest.
FAST_SCHEME = ScryptScheme(n=2 ** 11)


class FakeClock:
    def __init__(self, start=1_700_000_000.0):
        self.now = start

    def __call__(self):
        return self.now

    def advance(self, seconds):
        self.now += seconds


@pytest.fixture
def clock():
    return FakeClock()


@pytest.fixture
def auth(tmp_path, clock):
    return AuthService(
        store_path=tmp_path / "store.json",
        log_path=tmp_path / "attempts.jsonl",
        clock=clock,
        scheme=FAST_SCHEME,
    )


@pytest.fixture
def data_dir():
    return DATA_DIR
