import pytest

from qstack.backend import getBackend


@pytest.fixture(params=["reference", "optimized"])
def backend(request):
    handle = getBackend(request.param)
    handle.warmup()
    return handle
