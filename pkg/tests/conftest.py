import numpy as np
import pytest

from assocsort.backend import HAS_NUMBA, use_backend


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    """Run the test under each kernel backend."""
    if request.param == "numba" and not HAS_NUMBA:
        pytest.skip("numba not installed")
    with use_backend(request.param):
        yield request.param


@pytest.fixture
def rng():
    return np.random.default_rng(0xA55)


def arr(*values):
    return np.array(values, dtype=np.int64)


@pytest.fixture(autouse=True, scope="session")
def _warm_kernels():
    # Compile the numba kernels once up front so individual test timings
    # (and the allocation accounting in the acceptance tests) stay clean.
    if HAS_NUMBA:
        from assocsort.backend import warmup

        warmup()
    yield
