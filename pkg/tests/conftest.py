import pytest

import matdeg as md


@pytest.fixture(scope="session")
def fano():
    return md.catalog("fano")


@pytest.fixture(scope="session")
def qs():
    return md.catalog("qs")


@pytest.fixture(scope="session")
def vamos():
    return md.catalog("vamos")


@pytest.fixture(scope="session")
def k33dual():
    return md.catalog("k33dual")


@pytest.fixture(scope="session")
def steiner348():
    return md.catalog("steiner348")


@pytest.fixture(scope="session")
def fanodual():
    return md.catalog("fanodual")


@pytest.fixture(scope="session")
def small_matroids():
    """All labeled matroids of rank <= 3 on [d], keyed by d, for d <= 5."""
    return {d: list(md.all_matroids(d, 3)) for d in range(1, 6)}
