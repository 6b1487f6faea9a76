import numpy as np
import pytest

from qhashgen.analysis import best_bset_exhaustive
from qhashgen.codes import repetition_code, simplex_code
from qhashgen.qgen import binary_fingerprint_generator, composed_generator, hdq_generator
from qhashgen.uhash import rs_family

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def simplex():
    return simplex_code(4)


@pytest.fixture(scope="session")
def simplex_gen(simplex):
    return binary_fingerprint_generator(simplex)


@pytest.fixture(scope="session")
def repetition_gen():
    return binary_fingerprint_generator(repetition_code(3))


@pytest.fixture(scope="session")
def best_b5():
    return best_bset_exhaustive(5, 4)


@pytest.fixture(scope="session")
def rs_hdq(best_b5):
    return composed_generator(rs_family(5, 2, 4), hdq_generator(best_b5.bset))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
