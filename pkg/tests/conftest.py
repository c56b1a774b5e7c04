import pytest

from compdistinct import _backend

BACKENDS = [_backend.python_kernels]
if _backend.compiled_kernels is not None:
    BACKENDS.append(_backend.compiled_kernels)


@pytest.fixture(params=BACKENDS, ids=lambda k: k.BACKEND)
def kernels(request):
    return request.param
