import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

REPO_ROOT = Path(__file__).resolve().parent.parent
GOLDEN_DIR = REPO_ROOT / "shared" / "golden"
RULES_JSON = REPO_ROOT / "shared" / "validation-rules.json"


@pytest.fixture
def store(tmp_path):
    from vanlearn.store import Store

    return Store(str(tmp_path / "test.db"))


def bundled(name: str) -> bytes:
    from importlib import resources

    return resources.files("vanlearn").joinpath(f"data/{name}.csv").read_bytes()
