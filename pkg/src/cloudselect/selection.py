"""Selection controller: turn a validated request into cost-ranked bundles.

The pipeline filters offerings against the request's criteria, enumerates
every same-provider same-region combination of storage, compute and
transfer offerings (bundles never span providers or regions), prices each
bundle with the pricing module, converts to the requested currency and
ranks ascending by total.  Results can be parked in a TTL store so a
caller can fetch full per-component details later.
"""

from __future__ import annotations

import itertools
import threading
import time
import uuid
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from . import pricing
from .catalog import (
    ZERO,
    Catalog,
    ComputeOffering,
    Region,
    StorageOffering,
    TransferOffering,
)
from .pricing import (
    HOURS_PER_MONTH,
    CostBreakdown,
    RateTable,
    UsageEstimate,
    USD_ONLY,
)


class InvalidRequestError(Exception):
    """A request is malformed in a way that cannot be represented at all."""


class ResultNotFoundError(KeyError):
    """Result id is unknown or its TTL has elapsed."""


class ConfigParameter(Enum):
    RAM_GB = "ram_gb"
    LOCAL_STORAGE_GB = "local_storage_gb"
    CORES = "cores"
    SPEED_GHZ = "speed_ghz"
    STORAGE_GB = "storage_gb"
    LOCATION = "location"
    PROVIDER = "provider"


class Bound(Enum):
    MIN = "min"
    MAX = "max"
    EQUAL = "equal"


NUMERIC_PARAMETERS = {
    ConfigParameter.RAM_GB,
    ConfigParameter.LOCAL_STORAGE_GB,
    ConfigParameter.CORES,
    ConfigParameter.SPEED_GHZ,
    ConfigParameter.STORAGE_GB,
}


@dataclass(frozen=True)
class Criterion:
    """A Min/Max/Equal bound on one configuration parameter."""

    parameter: ConfigParameter
    bound: Bound
    value: Union[Decimal, str]


@dataclass(frozen=True)
class ComputeRequirement:
    """One compute slot: capacity bounds plus how long/how many instances run.

    Exactly one of hours/months should be set; months convert at 744 h.
    """

    ram_range: tuple[Decimal, Optional[Decimal]]
    local_storage_range: tuple[Decimal, Optional[Decimal]] = (ZERO, None)
    hours: Optional[Decimal] = None
    months: Optional[Decimal] = None
    instance_count: int = 1
    extra_criteria: tuple[Criterion, ...] = ()

    @property
    def effective_hours(self) -> Decimal:
        if self.hours is not None:
            return self.hours
        if self.months is not None:
            return self.months * HOURS_PER_MONTH
        return HOURS_PER_MONTH


@dataclass(frozen=True)
class SelectionRequest:
    include_compute: bool
    include_storage: bool
    compute_requirements: tuple[ComputeRequirement, ...] = ()
    usage: UsageEstimate = UsageEstimate()
    provider_filter: Optional[tuple[str, ...]] = None
    currency: str = "USD"
    limit: Optional[int] = None


@dataclass(frozen=True)
class CandidateBundle:
    """One same-provider same-region combination before costing."""

    provider_name: str
    region_name: str
    storage: Optional[StorageOffering]
    computes: tuple[ComputeOffering, ...]
    transfer: TransferOffering


@dataclass(frozen=True)
class Recommendation:
    provider_name: str
    region_name: str
    storage_offering: Optional[StorageOffering]
    compute_offerings: tuple[ComputeOffering, ...]
    transfer_offering: TransferOffering
    breakdown: CostBreakdown
    data_in_cost: Decimal
    data_out_cost: Decimal
    rank: int


@dataclass(frozen=True)
class ProviderOfferCount:
    simple: int
    detailed: int


@dataclass(frozen=True)
class OfferCountReport:
    """Diagnostic size of the enumeration space.

    simple counts service combinations per provider; detailed weighs each
    service by its price-structure tier count and multiplies by the
    provider's region count.  Tier counts: a storage service counts its
    GB-month bands, a transfer service its inbound plus outbound bands,
    and a compute service its non-zero hourly price components (minimum 1
    each).  Services are identified by name across a provider's regions.
    """

    simple_count: int
    detailed_count: int
    per_provider: Mapping[str, ProviderOfferCount]


# ---------------------------------------------------------------------------
# Request building and validation

def build_requirements(
    ram_ranges: Optional[Sequence[tuple[Decimal, Decimal]]] = None,
    local_storage_ranges: Optional[Sequence[tuple[Decimal, Decimal]]] = None,
    hours: Optional[Sequence[Decimal]] = None,
    months: Optional[Sequence[Decimal]] = None,
    instance_counts: Optional[Sequence[int]] = None,
) -> tuple[ComputeRequirement, ...]:
    """Zip the parallel multi-value parameters into requirements.

    All provided lists must agree on length; hour and month are mutually
    exclusive.  Missing lists fall back to full ranges, 744 hours and one
    instance.
    """
    if hours and months:
        raise InvalidRequestError("specify hour or month, not both")
    provided = {
        name: values
        for name, values in (
            ("ram_range", ram_ranges),
            ("storage_range", local_storage_ranges),
            ("hour", hours),
            ("month", months),
            ("n", instance_counts),
        )
        if values
    }
    count = next((len(values) for values in provided.values()), 1)
    for name, values in provided.items():
        if len(values) != count:
            raise InvalidRequestError(
                f"{name} has {len(values)} values but {count} expected; "
                "multi-value parameters must match with each other"
            )
    requirements = []
    for i in range(count):
        requirements.append(
            ComputeRequirement(
                ram_range=ram_ranges[i] if ram_ranges else (ZERO, None),
                local_storage_range=(
                    local_storage_ranges[i] if local_storage_ranges else (ZERO, None)
                ),
                hours=hours[i] if hours else (None if months else HOURS_PER_MONTH),
                months=months[i] if months else None,
                instance_count=instance_counts[i] if instance_counts else 1,
            )
        )
    return tuple(requirements)


def validate_request(
    request: SelectionRequest, rates: Optional[RateTable] = None
) -> list[str]:
    """Collect every problem with a request; an empty list means valid."""
    errors: list[str] = []
    usage = request.usage

    if not request.include_compute and not request.include_storage:
        errors.append("at least one of compute or storage must be requested")

    if usage.transfer_in_gb is None:
        errors.append("data_upload_size required: transfer quantities are never optional")
    elif usage.transfer_in_gb < 0:
        errors.append("data_upload_size must be non-negative")
    if usage.transfer_out_gb is None:
        errors.append("data_download_size required: transfer quantities are never optional")
    elif usage.transfer_out_gb < 0:
        errors.append("data_download_size must be non-negative")

    if request.include_storage:
        if usage.storage_gb is None:
            errors.append("storage required")
        elif usage.storage_gb < 0:
            errors.append("storage must be non-negative")

    if usage.duration_days <= 0:
        errors.append("duration must be positive")

    for op, count in usage.request_counts.items():
        if count < 0:
            errors.append(f"request count for {op} must be non-negative")

    if request.include_compute:
        if not request.compute_requirements:
            errors.append("at least one compute requirement (ram_range) required")
        if usage.compute_demands and len(usage.compute_demands) != len(
            request.compute_requirements
        ):
            errors.append(
                "compute demand list must match the requirement list length"
            )
        for i, req in enumerate(request.compute_requirements):
            errors.extend(_validate_requirement(req, f"requirement {i + 1}"))

    if request.limit is not None and request.limit < 1:
        errors.append("limit must be >= 1")

    if rates is not None and request.currency not in rates.rates:
        supported = ", ".join(sorted(rates.rates))
        errors.append(f"unknown currency {request.currency!r}; supported: {supported}")

    return errors


def _validate_requirement(req: ComputeRequirement, label: str) -> list[str]:
    errors = []
    for name, (low, high) in (
        ("ram_range", req.ram_range),
        ("storage_range", req.local_storage_range),
    ):
        if low < 0:
            errors.append(f"{label}: {name} low bound must be non-negative")
        if high is not None and low > high:
            errors.append(f"{label}: {name} low bound exceeds high bound")
    if req.hours is not None and req.months is not None:
        errors.append(f"{label}: specify hours or months, not both")
    if req.hours is None and req.months is None:
        errors.append(f"{label}: hours or months required")
    if req.hours is not None and req.hours < 0:
        errors.append(f"{label}: hours must be non-negative")
    if req.months is not None and req.months < 0:
        errors.append(f"{label}: months must be non-negative")
    if req.instance_count < 1:
        errors.append(f"{label}: instance count must be >= 1")
    for criterion in req.extra_criteria:
        if criterion.parameter in (ConfigParameter.LOCATION, ConfigParameter.PROVIDER):
            if criterion.bound is not Bound.EQUAL:
                errors.append(f"{label}: {criterion.parameter.value} supports Equal only")
            if not isinstance(criterion.value, str):
                errors.append(f"{label}: {criterion.parameter.value} takes a string value")
        elif criterion.parameter is ConfigParameter.STORAGE_GB:
            errors.append(f"{label}: storage_gb criteria do not apply to compute slots")
        elif not isinstance(criterion.value, Decimal):
            errors.append(f"{label}: {criterion.parameter.value} takes a numeric value")
    return errors


# ---------------------------------------------------------------------------
# Filtering and enumeration

@dataclass(frozen=True)
class ComputeCandidate:
    provider: str
    region: Region
    offering: ComputeOffering


def iter_compute_candidates(catalog: Catalog) -> list[ComputeCandidate]:
    return [
        ComputeCandidate(provider.name, region, offering)
        for provider in catalog.providers
        for region in provider.regions
        for offering in region.compute
    ]


def filter_compute(
    candidates: Iterable[ComputeCandidate],
    requirement: ComputeRequirement,
    provider_filter: Optional[Sequence[str]] = None,
) -> list[ComputeCandidate]:
    """Keep offerings inside the requirement's bounds and provider filter.

    An absent provider filter considers all providers.
    """
    wanted = None if provider_filter is None else set(provider_filter)
    return [
        candidate
        for candidate in candidates
        if (wanted is None or candidate.provider in wanted)
        and _requirement_matches(candidate.provider, candidate.region, candidate.offering, requirement)
    ]


def _requirement_matches(
    provider_name: str,
    region: Region,
    offering: ComputeOffering,
    requirement: ComputeRequirement,
) -> bool:
    if not _within(offering.ram_gb, requirement.ram_range):
        return False
    if not _within(offering.local_storage_gb, requirement.local_storage_range):
        return False
    return all(
        _criterion_matches(criterion, provider_name, region, offering)
        for criterion in requirement.extra_criteria
    )


def _within(value: Decimal, bounds: tuple[Decimal, Optional[Decimal]]) -> bool:
    low, high = bounds
    return value >= low and (high is None or value <= high)


def _criterion_matches(
    criterion: Criterion, provider_name: str, region: Region, offering: ComputeOffering
) -> bool:
    if criterion.parameter is ConfigParameter.PROVIDER:
        return provider_name == criterion.value
    if criterion.parameter is ConfigParameter.LOCATION:
        # a region published for "Any" location satisfies every location bound
        return (
            criterion.value == "Any"
            or region.location.value == "Any"
            or region.location.value == criterion.value
        )
    actual = {
        ConfigParameter.RAM_GB: offering.ram_gb,
        ConfigParameter.LOCAL_STORAGE_GB: offering.local_storage_gb,
        ConfigParameter.CORES: Decimal(offering.cores),
        ConfigParameter.SPEED_GHZ: offering.speed_ghz,
    }.get(criterion.parameter)
    if actual is None:
        return False
    if criterion.bound is Bound.MIN:
        return actual >= criterion.value
    if criterion.bound is Bound.MAX:
        return actual <= criterion.value
    return actual == criterion.value


def _schedule_covers(tiers, quantity: Decimal) -> bool:
    capacity = tiers.capacity
    return capacity is None or quantity <= capacity


def enumerate_candidates(
    catalog: Catalog, request: SelectionRequest
) -> list[CandidateBundle]:
    """Materialize every feasible same-provider same-region bundle.

    A transfer offering is always part of a bundle.  Offerings that cannot
    cover the requested quantities (storage size band, bounded tier
    capacity) are dropped here rather than failing the whole query.
    """
    usage = request.usage
    wanted = None if request.provider_filter is None else set(request.provider_filter)
    in_gb = usage.transfer_in_gb if usage.transfer_in_gb is not None else ZERO
    out_gb = usage.transfer_out_gb if usage.transfer_out_gb is not None else ZERO
    bundles: list[CandidateBundle] = []
    for provider in catalog.providers:
        if wanted is not None and provider.name not in wanted:
            continue
        for region in provider.regions:
            transfers = [
                t
                for t in region.transfer
                if _schedule_covers(t.in_tiers, in_gb)
                and _schedule_covers(t.out_tiers, out_gb)
            ]
            if not transfers:
                continue
            if request.include_storage:
                gb = usage.storage_gb if usage.storage_gb is not None else ZERO
                storages: list[Optional[StorageOffering]] = [
                    s for s in region.storage if s.covers(gb)
                ]
                if not storages:
                    continue
            else:
                storages = [None]
            if request.include_compute:
                compute_choices = [
                    [
                        c
                        for c in region.compute
                        if _requirement_matches(provider.name, region, c, req)
                    ]
                    for req in request.compute_requirements
                ]
                if any(not choices for choices in compute_choices):
                    continue
            else:
                compute_choices = []
            for storage in storages:
                for combo in itertools.product(*compute_choices):
                    for transfer in transfers:
                        bundles.append(
                            CandidateBundle(
                                provider_name=provider.name,
                                region_name=region.name,
                                storage=storage,
                                computes=tuple(combo) if request.include_compute else (),
                                transfer=transfer,
                            )
                        )
    return bundles


# ---------------------------------------------------------------------------
# Costing and ranking

def select(
    request: SelectionRequest,
    catalog: Catalog,
    rates: RateTable = USD_ONLY,
) -> list[Recommendation]:
    """Cost every candidate bundle and rank ascending by total.

    Ties break on (provider, region) and then on offering names so the
    ordering is fully deterministic.  Totals and components come back in
    the requested currency.
    """
    usage = request.usage
    in_gb = usage.transfer_in_gb if usage.transfer_in_gb is not None else ZERO
    out_gb = usage.transfer_out_gb if usage.transfer_out_gb is not None else ZERO
    costed = []
    for bundle in enumerate_candidates(catalog, request):
        if bundle.storage is not None:
            gb = usage.storage_gb if usage.storage_gb is not None else ZERO
            storage_usd = pricing.storage_cost(bundle.storage, gb, usage.duration_days)
            requests_usd = pricing.requests_cost(bundle.storage, usage.request_counts)
        else:
            storage_usd = ZERO
            requests_usd = ZERO
        in_usd = pricing.tiered_cost(bundle.transfer.in_tiers, in_gb)
        out_usd = pricing.tiered_cost(bundle.transfer.out_tiers, out_gb)
        compute_usd = ZERO
        for req, offering in zip(request.compute_requirements, bundle.computes):
            compute_usd += pricing.compute_cost(
                offering.billing,
                offering.ram_gb,
                offering.cores,
                req.effective_hours,
                req.instance_count,
            )
        breakdown = CostBreakdown.build(
            storage=storage_usd,
            requests=requests_usd,
            transfer=in_usd + out_usd,
            compute=compute_usd,
        ).converted(request.currency, rates)
        costed.append(
            (
                bundle,
                breakdown,
                pricing.convert_currency(in_usd, request.currency, rates),
                pricing.convert_currency(out_usd, request.currency, rates),
            )
        )

    costed.sort(key=lambda item: _rank_key(item[0], item[1]))
    if request.limit is not None:
        costed = costed[: request.limit]
    return [
        Recommendation(
            provider_name=bundle.provider_name,
            region_name=bundle.region_name,
            storage_offering=bundle.storage,
            compute_offerings=bundle.computes,
            transfer_offering=bundle.transfer,
            breakdown=breakdown,
            data_in_cost=in_cost,
            data_out_cost=out_cost,
            rank=rank,
        )
        for rank, (bundle, breakdown, in_cost, out_cost) in enumerate(costed, start=1)
    ]


def _rank_key(bundle: CandidateBundle, breakdown: CostBreakdown):
    return (
        breakdown.total,
        bundle.provider_name,
        bundle.region_name,
        bundle.storage.name if bundle.storage else "",
        tuple(c.name for c in bundle.computes),
        bundle.transfer.name,
    )


# ---------------------------------------------------------------------------
# Enumeration-space diagnostics

def offer_count(catalog: Catalog) -> OfferCountReport:
    """Count the selection space per provider, simple and tier-weighted."""
    per_provider: dict[str, ProviderOfferCount] = {}
    for provider in catalog.providers:
        compute_tiers: dict[str, int] = {}
        storage_tiers: dict[str, int] = {}
        transfer_tiers: dict[str, int] = {}
        for region in provider.regions:
            for c in region.compute:
                compute_tiers.setdefault(c.name, max(1, c.billing.component_count()))
            for s in region.storage:
                storage_tiers.setdefault(s.name, max(1, len(s.gb_month_tiers.tiers)))
            for t in region.transfer:
                transfer_tiers.setdefault(
                    t.name, max(1, len(t.in_tiers.tiers) + len(t.out_tiers.tiers))
                )
        simple = len(compute_tiers) * len(storage_tiers) * len(transfer_tiers)
        detailed = (
            sum(compute_tiers.values())
            * sum(storage_tiers.values())
            * sum(transfer_tiers.values())
            * len(provider.regions)
        )
        per_provider[provider.name] = ProviderOfferCount(simple=simple, detailed=detailed)
    return OfferCountReport(
        simple_count=sum(entry.simple for entry in per_provider.values()),
        detailed_count=sum(entry.detailed for entry in per_provider.values()),
        per_provider=per_provider,
    )


# ---------------------------------------------------------------------------
# Result store

class ResultStore:
    """Thread-safe TTL store for selection results.

    Entries expire `ttl_seconds` after storage (default 30 minutes) and
    are purged lazily.  The clock is injectable for tests.
    """

    def __init__(
        self,
        ttl_seconds: float = 1800.0,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.ttl_seconds = ttl_seconds
        self._clock = clock
        self._lock = threading.Lock()
        self._entries: dict[str, tuple[float, tuple[Recommendation, ...]]] = {}

    def store(self, recommendations: Sequence[Recommendation]) -> str:
        if not recommendations:
            raise ValueError("refusing to store an empty result")
        result_id = uuid.uuid4().hex
        now = self._clock()
        with self._lock:
            self._purge(now)
            self._entries[result_id] = (now + self.ttl_seconds, tuple(recommendations))
        return result_id

    def fetch(self, result_id: str) -> tuple[Recommendation, ...]:
        now = self._clock()
        with self._lock:
            self._purge(now)
            entry = self._entries.get(result_id)
            if entry is None:
                raise ResultNotFoundError(result_id)
            return entry[1]

    def _purge(self, now: float) -> None:
        expired = [key for key, (deadline, _) in self._entries.items() if deadline <= now]
        for key in expired:
            del self._entries[key]
