"""Access to the data files shipped with the package.

The bundled catalog covers nine public IaaS providers with calibrated
2012-era price sheets; the bundled rate table quotes every supported
currency against USD.
"""

from __future__ import annotations

from importlib import resources

from .catalog import Catalog, load_catalog, merge_catalog_regions
from .pricing import RateTable, load_rates


def bundled_catalog_text() -> str:
    return resources.files("cloudselect").joinpath("data/catalog.json").read_text("utf-8")


def bundled_rates_text() -> str:
    return resources.files("cloudselect").joinpath("data/rates.json").read_text("utf-8")


def load_bundled_catalog(merge_regions: bool = True) -> Catalog:
    """Load the shipped nine-provider catalog.

    By default equal-price regions are merged, matching how the CLI and
    API serve it; pass merge_regions=False for the raw per-region form.
    """
    catalog = load_catalog(bundled_catalog_text())
    return merge_catalog_regions(catalog) if merge_regions else catalog


def load_bundled_rates() -> RateTable:
    return load_rates(bundled_rates_text())
