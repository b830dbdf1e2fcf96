import numpy as np
import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES: list[str] = []


def c_from_weights(w):
    """Correlation triple of the Bell mixture with weights (l00, l01, l10, l11)."""
    w = np.asarray(w, dtype=float)
    w = w / w.sum()
    l00, l01, l10, l11 = w
    return np.array(
        [
            l00 + l01 - l10 - l11,
            -l00 + l01 + l10 - l11,
            l00 - l01 + l10 - l11,
        ]
    )


@st.composite
def physical_c(draw):
    w = draw(st.lists(st.floats(0.0, 1.0), min_size=4, max_size=4).filter(lambda v: sum(v) > 1e-3))
    return c_from_weights(w)


def random_physical_c(rng, n):
    return np.array([c_from_weights(w) for w in rng.dirichlet(np.ones(4), size=n)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
