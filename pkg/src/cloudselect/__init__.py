"""cloudselect: cost-ranked selection of cloud infrastructure bundles.

Normalizes heterogeneous provider price sheets into one catalog, prices
candidate compute/storage/transfer combinations with graduated-tier
decimal arithmetic, and ranks them by total cost in any supported
currency.  Exposed as a library, a CLI (`cloudselect`) and a REST API.
"""

from .catalog import (
    Catalog,
    CatalogError,
    CatalogInvariantError,
    CatalogParseError,
    ChargeStatus,
    ComputeBilling,
    ComputeOffering,
    Location,
    MemoryUnit,
    PlanPricing,
    PlanType,
    Provider,
    Region,
    RequestOp,
    RequestPricing,
    ServiceType,
    StorageOffering,
    StoragePlanType,
    Tier,
    TierSchedule,
    TransferOffering,
    dump_catalog,
    list_offerings,
    load_catalog,
    merge_catalog_regions,
    merge_equal_price_regions,
    normalize_memory,
    upsert_offering,
    validate_catalog,
)
from .fixtures import load_bundled_catalog, load_bundled_rates
from .pricing import (
    CapacityExceededError,
    ComputeDemand,
    CostBreakdown,
    RateTable,
    UnknownCurrencyError,
    UsageEstimate,
    compute_cost,
    convert_currency,
    load_rates,
    plan_cost,
    requests_cost,
    storage_cost,
    tiered_cost,
    transfer_cost,
)
from .selection import (
    Bound,
    ComputeRequirement,
    ConfigParameter,
    Criterion,
    InvalidRequestError,
    OfferCountReport,
    Recommendation,
    ResultNotFoundError,
    ResultStore,
    SelectionRequest,
    build_requirements,
    enumerate_candidates,
    filter_compute,
    iter_compute_candidates,
    offer_count,
    select,
    validate_request,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
