import numpy as np
import pytest

from copos3.tensor import SymmetricTensor, sorted_indices
from copos3.z3 import Z3Params


def random_tensor(rng, order=3, low=-1.0, high=1.0):
    return SymmetricTensor(order, rng.uniform(low, high, len(sorted_indices(order))))


def diagonal_mask(order):
    return np.array([len(set(ix)) == 1 for ix in sorted_indices(order)])


def biased_tensor(rng, order=3):
    """Nonnegative diagonal and mildly negative off-diagonal entries.

    Most such tensors pass the vertex and edge tests, so the interior
    test decides.
    """
    v = rng.uniform(-0.5, 1.0, len(sorted_indices(order)))
    mask = diagonal_mask(order)
    v[mask] = rng.uniform(0.0, 1.0, mask.sum())
    return SymmetricTensor(order, v)


def sparse_integer_tensor(rng, order=3):
    """Small integer entries with many zeros: degenerate resultants."""
    v = rng.integers(-1, 2, len(sorted_indices(order))).astype(float)
    mask = diagonal_mask(order)
    v[mask] = rng.integers(0, 3, mask.sum())
    return SymmetricTensor(order, v)


def random_params(rng, positive_diagonal=False):
    lam = rng.uniform(-2, 2, 8)
    if positive_diagonal:
        lam[[0, 1, 4]] = np.abs(lam[[0, 1, 4]])
    return Z3Params(*lam, rng.uniform(0, 1))


def tensor_a123():
    return SymmetricTensor.from_entries(3, {"111": 1, "222": 1, "333": 1, "123": -1})


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- acceptance summary ---------------------------------------------------------

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
