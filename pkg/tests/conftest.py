import pytest


@pytest.fixture(scope="session")
def numba_warm():
    """Compile the jitted stencil once so timed tests measure the algorithm."""
    from graphpotentials import _fastbrute

    _fastbrute.warmup()
    return _fastbrute.HAVE_NUMBA


@pytest.fixture(autouse=True)
def _no_ambient_backend_flag(monkeypatch):
    # keep the backend-forcing variable out of tests unless a test sets it
    monkeypatch.delenv("GRAPHPOTENTIALS_PURE", raising=False)
