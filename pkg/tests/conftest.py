from __future__ import annotations

from pathlib import Path

import pytest

from mpmcs.encoding import build_wcnf, event_weights
from mpmcs.fault_tree import parse_fault_tree

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Worked example: probabilities and their log-space weights.
FIRE_WEIGHTS = {
    "x1": (0.2, 1.60944),
    "x2": (0.1, 2.30259),
    "x3": (0.001, 6.90776),
    "x4": (0.002, 6.21461),
    "x5": (0.05, 2.99573),
    "x6": (0.1, 2.30259),
    "x7": (0.05, 2.99573),
}


@pytest.fixture(scope="session")
def fire_path() -> Path:
    return DATA_DIR / "fire_protection.json"


@pytest.fixture(scope="session")
def fire_tree(fire_path):
    return parse_fault_tree(fire_path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fire_instance(fire_tree):
    return build_wcnf(fire_tree)


@pytest.fixture(scope="session")
def fire_weights(fire_tree):
    return event_weights(fire_tree)
