import math

import numpy as np
import pytest
from hypothesis import settings

from reillyspec import validate_polygon

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rotation(dim: int, seed: int) -> np.ndarray:
    q, r = np.linalg.qr(np.random.default_rng(seed).standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def nudge(p, eps: float, vertex: int = 0):
    """Scale one vertex about the origin by ``1 + eps``; keeps the family tag."""
    A = np.array(p.vertices)
    A[vertex] *= 1.0 + eps
    return validate_polygon(A, family=p.family)


@pytest.fixture
def unit_square():
    return validate_polygon([(0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.5, -0.5)])


THETAS = [k * math.pi / 40 for k in range(1, 20)]


#: one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip("]"))):
            terminalreporter.write_line(line)
