import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def two_group_sentences(n=500, seed=0):
    """Sentences drawn from one of two disjoint 10-word groups."""
    r = np.random.default_rng(seed)
    a = [f"alpha{i}" for i in range(10)]
    b = [f"beta{i}" for i in range(10)]
    out = []
    for s in range(n):
        g = a if s % 2 == 0 else b
        out.append([g[j] for j in r.integers(0, 10, 8)])
    return out, a, b


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
