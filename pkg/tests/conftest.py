import itertools

import numpy as np
import pytest

from aeqts import _backend

BACKENDS = [b for b in _backend.BACKENDS if _backend.available(b)]


@pytest.fixture(params=BACKENDS)
def backend(request):
    with _backend.use_backend(request.param):
        yield request.param


def all_subsets(k):
    return np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.int64)


def brute_force_optimum(weights, profits, capacity_x2):
    """Max profit over every subset with 2 * weight <= capacity_x2."""
    subsets = all_subsets(len(weights))
    w = subsets @ np.asarray(weights, dtype=np.int64)
    p = subsets @ np.asarray(profits, dtype=np.int64)
    return int(p[2 * w <= capacity_x2].max())


def is_maximal(bits, weights, budget):
    room = budget - int(np.asarray(weights) @ bits)
    return room >= 0 and not np.any((bits == 0) & (np.asarray(weights) <= room))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
