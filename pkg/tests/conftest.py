from __future__ import annotations

from pathlib import Path

import pytest

from qlsbench.circuits import Circuit, parse_qasm

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def toffoli() -> Circuit:
    """The 15-gate controlled-controlled-not decomposition on 3 qubits."""
    return parse_qasm((DATA / "toffoli.qasm").read_text())
