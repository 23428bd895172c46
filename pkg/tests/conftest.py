import os

import hypothesis
import numpy as np
import pytest

from su2k_braid.anyon_model import AnyonModel

hypothesis.settings.register_profile("dev", max_examples=25, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None, derandomize=True)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))

LEVELS = (3, 5, 6, 7)


@pytest.fixture(scope="session", params=LEVELS, ids=lambda k: f"k{k}")
def model(request):
    return AnyonModel(request.param)


def random_su2(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    a, b, c, d = q / np.linalg.norm(q)
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def random_u2(rng: np.random.Generator) -> np.ndarray:
    return np.exp(1j * rng.uniform(0, 2 * np.pi)) * random_su2(rng)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
