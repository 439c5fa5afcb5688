from pathlib import Path

import numpy as np
import pytest

from holant3.sigcore import SignatureGrid

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixture_dir():
    return FIXTURE_DIR


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def theta(F, G=None):
    """Two ternary vertices joined by three parallel edges."""
    sigs = {"F": F} if G is None else {"F": F, "G": G}
    verts = [("a", "F"), ("b", "F" if G is None else "G")]
    return SignatureGrid(sigs, verts, [(("a", i), ("b", i)) for i in range(3)], [])


def two_cycle(M):
    return SignatureGrid({"M": M}, [("a", "M"), ("b", "M")], [(("a", 0), ("b", 0)), (("a", 1), ("b", 1))], [])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
