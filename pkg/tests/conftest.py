import numpy as np
import pytest

from evosim.core import Entity, SimConfig, Traits


class ScriptedRng:
    """Stand-in stream that replays fixed draws and counts consumption."""

    def __init__(self, values):
        self.values = list(values)
        self.draws = 0

    def random(self):
        value = self.values[self.draws]
        self.draws += 1
        return value

    def randoms(self, n):
        return np.array([self.random() for _ in range(n)], dtype=np.float64)


@pytest.fixture
def scripted():
    return ScriptedRng


@pytest.fixture
def config():
    return SimConfig()


def make_entity(id=0, pos=(50.0, 50.0), heading=0.0, speed=1.0, size=2.0, cloning=0.5, food=0):
    return Entity(id, pos, heading, Traits(speed, size, cloning), food)


# ---------------------------------------------------------------------------
# Acceptance verdicts, printed once at the end of the session.
# ---------------------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
