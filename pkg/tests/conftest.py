import numpy as np
import pytest

from poissondisk.solver import PoissonSolution


def fd_wirtinger(F, w, h=1e-5):
    """Fourth-order central differences for ``(dF/dw, dF/dwbar)``."""
    def d(step):
        return (-F(w + 2 * step) + 8 * F(w + step) - 8 * F(w - step) + F(w - 2 * step)) / (12 * h)
    fx, fy = d(h), d(1j * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


@pytest.fixture(scope="session")
def unit_source_solution():
    """``psi = 0, g = 1``: exact solution ``-(1 - |z|^2)/4``."""
    return PoissonSolution().fit(np.zeros(2048), 1.0)


@pytest.fixture(scope="session")
def cubic_solution():
    """Boundary datum and source of ``z + c z |z|^2`` with ``c = 0.1``."""
    c = 0.1
    return PoissonSolution().fit(lambda e: e + c * e, lambda w: 8 * c * w)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance criteria outcomes, printed in the terminal summary
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        status, title, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}  [{detail}]")
