from __future__ import annotations

import pytest

from cloudselect.fixtures import load_bundled_catalog, load_bundled_rates


@pytest.fixture(scope="session")
def catalog():
    """Shipped nine-provider catalog with equal-price regions merged."""
    return load_bundled_catalog(merge_regions=True)


@pytest.fixture(scope="session")
def raw_catalog():
    """Shipped catalog without region merging."""
    return load_bundled_catalog(merge_regions=False)


@pytest.fixture(scope="session")
def rates():
    return load_bundled_rates()
