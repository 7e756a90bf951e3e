import pytest

from superdiv import _kernels


@pytest.fixture(scope="session", autouse=True)
def _jit_warm():
    # compile once so timing checks measure the algorithms, not numba
    _kernels.warmup()
