import sys
import numpy as np
import pytest

from gbsim._kernels import numba_backend, numpy_backend

BACKENDS = [pytest.param(numpy_backend, id="numpy")]
if numba_backend is not None:
    BACKENDS.append(pytest.param(numba_backend, id="numba"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20180108)


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


def random_symmetric(rng, n):
    x = random_complex(rng, n)
    return (x + x.T) / 2


def symmetric_beamsplitter():
    """50:50 beamsplitter that turns two equal single-mode squeezers into a two-mode squeezer."""
    return np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
