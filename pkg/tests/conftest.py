import pathlib

import pytest
from hypothesis import HealthCheck, settings

from sftcross.sft import TransitionMatrix

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

F2 = TransitionMatrix([[1, 1], [1, 1]])
FIB = TransitionMatrix([[1, 1], [1, 0]])
P3 = TransitionMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
RED = TransitionMatrix([[1, 1], [0, 1]])
FULL3 = TransitionMatrix([[1, 1, 1]] * 3)
# column sums all 2 without being a full shift
RING = TransitionMatrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])

ALL = {"F2": F2, "FIB": FIB, "P3": P3, "RED": RED}


@pytest.fixture(params=sorted(ALL), ids=sorted(ALL))
def matrix(request):
    return ALL[request.param]


_acceptance_lines = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
