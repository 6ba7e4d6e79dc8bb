"""PyTest configuration."""


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        # --runslow given in cli: do not skip slow tests
        return
    import pytest

    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


import numpy as _np  # noqa: E402
import pytest as _pytest  # noqa: E402


@_pytest.fixture(autouse=True)
def _doctest_numpy(request, doctest_namespace):
    """Provide ``np`` to doctests and keep numpy<2 scalar reprs for them."""
    from _pytest.doctest import DoctestItem

    if not isinstance(request.node, DoctestItem):
        yield
        return
    doctest_namespace["np"] = _np
    opts = _np.get_printoptions()
    if _np.lib.NumpyVersion(_np.__version__) >= "2.0.0":
        _np.set_printoptions(legacy="1.25")
    yield
    _np.set_printoptions(**opts)
