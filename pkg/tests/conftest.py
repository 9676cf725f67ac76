import random

import pytest

from ascurves import _kernels
from ascurves.gf import field_create

# Lines printed at the end of the run, one per acceptance criterion.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so timed tests measure steady state."""
    from ascurves.linpoly import LinPoly
    from ascurves.quadform import count_zero_trace

    count_zero_trace(LinPoly.parse("1@0,1@1", field_create(3, 1, 4)))
    ctx = field_create(3, 1, 4)
    _kernels.batch_mul(ctx.all_vectors()[:4], ctx.all_vectors()[:4], ctx.reduction, ctx.p)


@pytest.fixture
def rng():
    return random.Random(20240607)


def random_element(ctx, rng, nonzero=False):
    lo = 1 if nonzero else 0
    return ctx.from_int(rng.randrange(lo, ctx.order))
