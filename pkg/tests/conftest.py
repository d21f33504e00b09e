import warnings

import pytest

from nfdensity.number_field import IrreducibilityWarning, NumberFieldOrder


@pytest.fixture(autouse=True, scope="session")
def _split_cache(tmp_path_factory):
    mp = pytest.MonkeyPatch()
    mp.setenv("NF_DENSITY_CACHE", str(tmp_path_factory.mktemp("splitcache")))
    yield
    mp.undo()


def make_order(poly: str) -> NumberFieldOrder:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IrreducibilityWarning)
        return NumberFieldOrder(poly)


@pytest.fixture(scope="session")
def rationals():
    return make_order("x")


@pytest.fixture(scope="session")
def gauss():
    return make_order("x^2 + 1")


@pytest.fixture(scope="session")
def gauss_rotated(gauss):
    # E' = {1, -1 + i}
    return gauss.with_basis([[1, 0], [-1, 1]])


@pytest.fixture(scope="session")
def golden():
    return make_order("x^2 - x - 1")


@pytest.fixture(scope="session")
def sqrt2():
    return make_order("x^2 - 2")


@pytest.fixture(scope="session")
def cubic():
    return make_order("x^3 - x - 1")
