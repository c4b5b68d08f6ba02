import hashlib
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from sccode.io import read_matrix

DATA = Path(__file__).parent / "data"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def fixture_pair(code: str):
    """Published (4,29) partition and lifting matrices; ``code`` is 'gd' or 'unf'."""
    P = read_matrix(DATA / f"{code}_4_29_partition.csv", (4, 29), 0, 20)
    L = read_matrix(DATA / f"{code}_4_29_lifting.csv", (4, 29), 0, 29)
    return P, L


def checksums_ok() -> bool:
    for line in (DATA / "SHA256SUMS").read_text().splitlines():
        digest, name = line.split()
        if hashlib.sha256((DATA / name).read_bytes()).hexdigest() != digest:
            return False
    return True


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
