import sys
from pathlib import Path

import pytest

from zddmap.circuit import parse_circuit, ring
from zddmap.zdd import available_backends

sys.path.insert(0, str(Path(__file__).parent))

_SUMMARY: list[str] = []

HUB_CIRCUIT = """\
# three CNOTs that all touch b
.v a b c d
cx a b
cx b c
cx b d
"""


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


@pytest.fixture
def hub():
    return parse_circuit(HUB_CIRCUIT)


@pytest.fixture
def ring4():
    return ring(4, list("ABCD"))


def record(line: str) -> None:
    print(line)
    _SUMMARY.append(line)


def pytest_terminal_summary(terminalreporter):
    if _SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_SUMMARY):
            terminalreporter.write_line(line)
