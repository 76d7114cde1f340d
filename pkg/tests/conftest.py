import pytest

from primematrix import kernels


def _load_backend(name):
    try:
        return kernels.get_backend(name)
    except ImportError:
        return None


@pytest.fixture(params=["pure", "cython"])
def backend(request):
    """Each kernel backend that is actually importable."""
    mod = _load_backend(request.param)
    if mod is None:
        pytest.skip(f"{request.param} backend not built")
    return mod
