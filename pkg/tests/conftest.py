"""Shared fixtures."""

import random

import pytest

from qgraph.config import Settings, set_settings
from qgraph.core.graph import Graph, family
from qgraph.search.coding import CodingClique
from qgraph.stabilizer.check_matrix import CheckMatrix
from qgraph.utils import labels_to_bits

EQ5_LABELS = [[], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3], [1, 2, 4]]

FIVE_QUBIT_GENERATORS = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]

STEANE_GENERATORS = ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Every test runs with single-threaded defaults and no config file."""
    for name in ("QGRAPH_THREADS", "QGRAPH_TIME_BUDGET_SECS", "QGRAPH_CACHE_DIR", "QGRAPH_G10_WITNESS"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("QGRAPH_CONFIG", str(tmp_path / "missing_config.json"))
    set_settings(Settings(threads=1))
    yield
    set_settings(None)


@pytest.fixture
def l5() -> Graph:
    return family("loop", 5)


@pytest.fixture
def eq5_members() -> list:
    return [labels_to_bits(labels, 5) for labels in EQ5_LABELS]


@pytest.fixture
def eq5_clique(l5, eq5_members) -> CodingClique:
    return CodingClique(l5, 2, tuple(eq5_members))


@pytest.fixture
def pentagon_group(l5) -> CodingClique:
    return CodingClique.from_generators(l5, 3, [0b11111])


@pytest.fixture
def five_qubit_code() -> CheckMatrix:
    return CheckMatrix.from_strings(FIVE_QUBIT_GENERATORS)


@pytest.fixture
def steane_code() -> CheckMatrix:
    return CheckMatrix.from_strings(STEANE_GENERATORS)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240607)
