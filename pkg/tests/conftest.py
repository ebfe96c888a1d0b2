import numpy as np
import pytest

from peaking.data import GaussianProblem, LabeledDataset

_ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def peak_problem():
    return GaussianProblem(50, 4.0)


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def report(criterion, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {criterion}" + (f": {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def balanced_gaussian(rng, n_per_class, p, shift=1.0):
    """Interleaved balanced sample with class means at -shift and +shift."""
    y = np.tile([1, 2], n_per_class)
    X = rng.standard_normal((2 * n_per_class, p)) + np.where((y == 1)[:, None], -shift, shift)
    return LabeledDataset(X, y)


def random_psd(rng, dim, rank, scale=1.0):
    A = rng.standard_normal((dim, rank))
    return scale * (A @ A.T)
