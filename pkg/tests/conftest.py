import json
from pathlib import Path

import pytest

from conifold.config import ConfigMatrix

VECTORS = json.loads((Path(__file__).parent / "vectors.json").read_text())


@pytest.fixture(scope="session")
def vectors():
    return VECTORS


@pytest.fixture
def quintic():
    return ConfigMatrix.of((4,), [[5]])


@pytest.fixture
def bicubic():
    return ConfigMatrix.of((2, 2), [[3, 3]])


@pytest.fixture
def p1p4():
    return ConfigMatrix.of((1, 4), [[1, 1], [1, 4]])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
