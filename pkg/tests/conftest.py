import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("qjsd", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qjsd")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call":
                lines += [v for k, v in rep.user_properties if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: _criterion_key(l)):
            terminalreporter.write_line(line)


def _criterion_key(line):
    label = line.split("criterion ", 1)[1]
    head = label.split()[0].rstrip(":")
    return (int(head), label)
