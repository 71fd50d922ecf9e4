"""Unified catalog of provider infrastructure offerings.

Providers publish compute, storage and network-transfer prices in wildly
different shapes (RAM-hours vs. instance-hours, per-transaction vs.
per-10k-request fees, regional price sheets, graduated size tiers).  This
module holds the normalized model everything else works against: one
`Catalog` of providers, regions and typed offerings, with all memory in
GB, all money in USD `Decimal`s, and graduated tariffs as `TierSchedule`s.

Catalog values are immutable snapshots.  Mutation (`upsert_offering`)
returns a new snapshot with a fresh version string; readers can hold a
snapshot across threads safely.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, replace
from decimal import Decimal, ROUND_HALF_UP
from enum import Enum
from typing import Iterable, Optional, Union

ZERO = Decimal(0)

MB_PER_GB = Decimal(1024)


class CatalogError(Exception):
    """Base class for catalog loading/validation failures."""


class CatalogParseError(CatalogError):
    """Raised when catalog text is malformed; message carries the field path."""


class CatalogInvariantError(CatalogError):
    """Raised when a structurally valid catalog violates a domain invariant."""


class PatternError(CatalogError):
    """Raised for an invalid search regular expression."""


class Location(Enum):
    NORTH_AMERICA = "North America"
    SOUTH_AMERICA = "South America"
    AFRICA = "Africa"
    EUROPE = "Europe"
    ASIA = "Asia"
    AUSTRALIA = "Australia"
    ANY = "Any"


class ServiceType(Enum):
    COMPUTE = "compute"
    STORAGE = "storage"
    TRANSFER = "transfer"


class RequestOp(Enum):
    PUT = "PUT"
    COPY = "COPY"
    POST = "POST"
    LIST = "LIST"
    GET = "GET"
    DELETE = "DELETE"
    SEARCH = "SEARCH"
    HEAD = "HEAD"
    ANY = "ANY"


class ChargeStatus(Enum):
    CHARGED = "charged"
    FREE = "free"
    UNSPECIFIED = "unspecified"


class StoragePlanType(Enum):
    PAY_AS_YOU_GO = "pay_as_you_go"
    REDUCED_REDUNDANCY = "reduced_redundancy"


class PlanType(Enum):
    ON_DEMAND = "on_demand"
    PERIOD = "period"


class MemoryUnit(Enum):
    MB = "MB"
    GB = "GB"


@dataclass(frozen=True)
class Tier:
    """One graduated price band: `rate` applies to quantity up to `upto`.

    `upto` is a cumulative ceiling; None means the band is unbounded and
    must be the last band of its schedule.
    """

    upto: Optional[Decimal]
    rate: Decimal


@dataclass(frozen=True)
class TierSchedule:
    """Ordered graduated bands.  An empty schedule prices everything at 0."""

    tiers: tuple[Tier, ...] = ()

    @property
    def capacity(self) -> Optional[Decimal]:
        """Largest quantity the schedule can price; None if unbounded."""
        if not self.tiers or self.tiers[-1].upto is None:
            return None
        return self.tiers[-1].upto


@dataclass(frozen=True)
class PlanPricing:
    """Prepaid-period terms; the default is plain on-demand (no commitment)."""

    plan_type: PlanType = PlanType.ON_DEMAND
    per_period_cost: Decimal = ZERO
    period_length_days: int = 0
    included_units: Decimal = ZERO
    overage_rate: Decimal = ZERO


ON_DEMAND = PlanPricing()


@dataclass(frozen=True)
class ComputeBilling:
    """Hourly price components; providers combine any subset of the three."""

    per_instance_hour: Decimal = ZERO
    per_ram_gb_hour: Decimal = ZERO
    per_vcpu_hour: Decimal = ZERO

    def component_count(self) -> int:
        return sum(
            1
            for value in (self.per_instance_hour, self.per_ram_gb_hour, self.per_vcpu_hour)
            if value > 0
        )


@dataclass(frozen=True)
class ComputeOffering:
    name: str
    cores: int
    speed_ghz: Decimal
    ram_gb: Decimal
    local_storage_gb: Decimal
    billing: ComputeBilling
    plan: PlanPricing = ON_DEMAND


@dataclass(frozen=True)
class RequestPricing:
    """Fee for a set of storage API operations, quoted per 10,000 requests.

    ANY acts as a fallback matching operations not named by a more
    specific entry.  Free/unspecified entries carry a zero rate.
    """

    operations: frozenset[RequestOp]
    rate_per_10k: Decimal = ZERO
    charged: ChargeStatus = ChargeStatus.CHARGED


@dataclass(frozen=True)
class StorageOffering:
    name: str
    min_gb: Decimal
    max_gb: Optional[Decimal]
    gb_month_tiers: TierSchedule
    requests: tuple[RequestPricing, ...] = ()
    plan_type: StoragePlanType = StoragePlanType.PAY_AS_YOU_GO
    plan: PlanPricing = ON_DEMAND

    def covers(self, gb: Decimal) -> bool:
        """Whether `gb` lies inside the offering's size band and tier capacity."""
        if gb < self.min_gb:
            return False
        if self.max_gb is not None and gb > self.max_gb:
            return False
        capacity = self.gb_month_tiers.capacity
        return capacity is None or gb <= capacity


@dataclass(frozen=True)
class TransferOffering:
    name: str
    in_tiers: TierSchedule
    out_tiers: TierSchedule


Offering = Union[ComputeOffering, StorageOffering, TransferOffering]


@dataclass(frozen=True)
class Region:
    name: str
    location: Location
    compute: tuple[ComputeOffering, ...] = ()
    storage: tuple[StorageOffering, ...] = ()
    transfer: tuple[TransferOffering, ...] = ()

    def offerings(self, service_type: ServiceType) -> tuple[Offering, ...]:
        return {
            ServiceType.COMPUTE: self.compute,
            ServiceType.STORAGE: self.storage,
            ServiceType.TRANSFER: self.transfer,
        }[service_type]


@dataclass(frozen=True)
class Provider:
    name: str
    regions: tuple[Region, ...] = ()


@dataclass(frozen=True)
class Catalog:
    providers: tuple[Provider, ...] = ()
    base_currency: str = "USD"
    version: str = "0"

    def provider(self, name: str) -> Optional[Provider]:
        for provider in self.providers:
            if provider.name == name:
                return provider
        return None


@dataclass(frozen=True)
class OfferingRow:
    """One offering with its provider/region context, as listed or filtered."""

    provider: str
    region: str
    offering: Offering


def normalize_memory(value: Decimal, unit: MemoryUnit) -> Decimal:
    """Convert a memory quantity to GB (1 GB = 1024 MB).

    MB values are rounded to 3 decimal places to absorb 1/1024 artifacts;
    GB values pass through unchanged.
    """
    if value < 0:
        raise CatalogInvariantError("memory quantity must be non-negative")
    if unit is MemoryUnit.GB:
        return value
    return (value / MB_PER_GB).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP)


# ---------------------------------------------------------------------------
# Validation

def validate_catalog(catalog: Catalog) -> list[str]:
    """Return every invariant violation, each naming the offending element."""
    problems: list[str] = []
    if catalog.base_currency != "USD":
        problems.append(f"base_currency must be USD, got {catalog.base_currency!r}")
    seen_providers: set[str] = set()
    for provider in catalog.providers:
        if provider.name in seen_providers:
            problems.append(f"duplicate provider name {provider.name!r}")
        seen_providers.add(provider.name)
        problems.extend(_validate_provider(provider))
    return problems


def _validate_provider(provider: Provider) -> list[str]:
    problems: list[str] = []
    if not provider.regions:
        problems.append(f"provider {provider.name!r} has no regions")
    seen_regions: set[str] = set()
    for region in provider.regions:
        path = f"{provider.name}/{region.name}"
        if region.name in seen_regions:
            problems.append(f"duplicate region name {region.name!r} in provider {provider.name!r}")
        seen_regions.add(region.name)
        for service_type in ServiceType:
            names: set[str] = set()
            for offering in region.offerings(service_type):
                if offering.name in names:
                    problems.append(
                        f"{path}: duplicate {service_type.value} offering {offering.name!r}"
                    )
                names.add(offering.name)
                problems.extend(validate_offering(offering, path=path))
    return problems


def validate_offering(offering: Offering, path: str = "") -> list[str]:
    label = f"{path}/{offering.name}" if path else offering.name
    if isinstance(offering, ComputeOffering):
        return _validate_compute(offering, label)
    if isinstance(offering, StorageOffering):
        return _validate_storage(offering, label)
    if isinstance(offering, TransferOffering):
        return _validate_transfer(offering, label)
    return [f"{label}: unknown offering type {type(offering).__name__}"]


def _validate_compute(offering: ComputeOffering, label: str) -> list[str]:
    problems = []
    if offering.cores < 1:
        problems.append(f"{label}: cores must be >= 1, got {offering.cores}")
    if offering.speed_ghz <= 0:
        problems.append(f"{label}: speed_ghz must be > 0")
    if offering.ram_gb <= 0:
        problems.append(f"{label}: ram_gb must be > 0")
    if offering.local_storage_gb < 0:
        problems.append(f"{label}: local_storage_gb must be >= 0")
    billing = offering.billing
    for name in ("per_instance_hour", "per_ram_gb_hour", "per_vcpu_hour"):
        if getattr(billing, name) < 0:
            problems.append(f"{label}: billing.{name} must be >= 0")
    if billing.component_count() == 0:
        problems.append(f"{label}: at least one billing component must be > 0")
    problems.extend(_validate_plan(offering.plan, label))
    return problems


def _validate_storage(offering: StorageOffering, label: str) -> list[str]:
    problems = []
    if offering.min_gb < 0:
        problems.append(f"{label}: min_gb must be >= 0")
    if offering.max_gb is not None and offering.max_gb < offering.min_gb:
        problems.append(f"{label}: min_gb exceeds max_gb")
    problems.extend(_validate_tiers(offering.gb_month_tiers, f"{label}.gb_month_tiers"))
    seen_ops: set[RequestOp] = set()
    for i, entry in enumerate(offering.requests):
        where = f"{label}.requests[{i}]"
        if not entry.operations:
            problems.append(f"{where}: empty operation set")
        if entry.operations & seen_ops:
            problems.append(f"{where}: operation sets must be disjoint")
        seen_ops |= entry.operations
        if entry.rate_per_10k < 0:
            problems.append(f"{where}: rate_per_10k must be >= 0")
        if entry.charged is not ChargeStatus.CHARGED and entry.rate_per_10k != 0:
            problems.append(f"{where}: free/unspecified entries must carry rate 0")
    problems.extend(_validate_plan(offering.plan, label))
    return problems


def _validate_transfer(offering: TransferOffering, label: str) -> list[str]:
    problems = _validate_tiers(offering.in_tiers, f"{label}.in_tiers")
    problems.extend(_validate_tiers(offering.out_tiers, f"{label}.out_tiers"))
    return problems


def _validate_tiers(schedule: TierSchedule, label: str) -> list[str]:
    problems = []
    previous: Optional[Decimal] = None
    for i, tier in enumerate(schedule.tiers):
        if tier.rate < 0:
            problems.append(f"{label}[{i}]: rate must be >= 0")
        if tier.upto is None:
            if i != len(schedule.tiers) - 1:
                problems.append(f"{label}[{i}]: only the last tier may be unbounded")
            continue
        if tier.upto <= 0:
            problems.append(f"{label}[{i}]: upto must be > 0")
        if previous is not None and tier.upto <= previous:
            problems.append(f"{label}[{i}]: upto must be strictly increasing")
        previous = tier.upto
    return problems


def _validate_plan(plan: PlanPricing, label: str) -> list[str]:
    problems = []
    if plan.per_period_cost < 0 or plan.overage_rate < 0 or plan.included_units < 0:
        problems.append(f"{label}: plan amounts must be >= 0")
    if plan.plan_type is PlanType.ON_DEMAND and plan.per_period_cost != 0:
        problems.append(f"{label}: on-demand plans carry no per-period cost")
    if plan.plan_type is PlanType.PERIOD and plan.period_length_days < 1:
        problems.append(f"{label}: period plans need period_length_days > 0")
    return problems


# ---------------------------------------------------------------------------
# File format (JSON)

def load_catalog(text: str) -> Catalog:
    """Parse catalog JSON and enforce every domain invariant.

    Raises CatalogParseError with a field path on malformed input, or
    CatalogInvariantError naming the offending element.
    """
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise CatalogParseError(f"invalid JSON: {exc}") from None
    catalog = _read_catalog(doc)
    problems = validate_catalog(catalog)
    if problems:
        raise CatalogInvariantError("; ".join(problems))
    return catalog


def dump_catalog(catalog: Catalog, indent: int = 2) -> str:
    """Serialize a catalog back to its JSON file form."""
    return json.dumps(_catalog_doc(catalog), indent=indent)


def _catalog_doc(catalog: Catalog) -> dict:
    return {
        "base_currency": catalog.base_currency,
        "version": catalog.version,
        "providers": [
            {
                "name": provider.name,
                "regions": [_region_doc(region) for region in provider.regions],
            }
            for provider in catalog.providers
        ],
    }


def _region_doc(region: Region) -> dict:
    return {
        "name": region.name,
        "location": region.location.value,
        "compute": [
            {
                "name": c.name,
                "cores": c.cores,
                "speed_ghz": _num(c.speed_ghz),
                "ram_gb": _num(c.ram_gb),
                "local_storage_gb": _num(c.local_storage_gb),
                "billing": {
                    "per_instance_hour": _num(c.billing.per_instance_hour),
                    "per_ram_gb_hour": _num(c.billing.per_ram_gb_hour),
                    "per_vcpu_hour": _num(c.billing.per_vcpu_hour),
                },
                "plan": _plan_doc(c.plan),
            }
            for c in region.compute
        ],
        "storage": [
            {
                "name": s.name,
                "min_gb": _num(s.min_gb),
                "max_gb": None if s.max_gb is None else _num(s.max_gb),
                "gb_month_tiers": _tiers_doc(s.gb_month_tiers),
                "requests": [
                    {
                        "ops": sorted(op.value for op in r.operations),
                        "rate_per_10k": _num(r.rate_per_10k),
                        "charged": r.charged.value,
                    }
                    for r in s.requests
                ],
                "plan_type": s.plan_type.value,
                "plan": _plan_doc(s.plan),
            }
            for s in region.storage
        ],
        "transfer": [
            {
                "name": t.name,
                "in_tiers": _tiers_doc(t.in_tiers),
                "out_tiers": _tiers_doc(t.out_tiers),
            }
            for t in region.transfer
        ],
    }


def _plan_doc(plan: PlanPricing) -> dict:
    return {
        "plan_type": plan.plan_type.value,
        "per_period_cost": _num(plan.per_period_cost),
        "period_length_days": plan.period_length_days,
        "included_units": _num(plan.included_units),
        "overage_rate": _num(plan.overage_rate),
    }


def _tiers_doc(schedule: TierSchedule) -> list[dict]:
    return [
        {"upto": None if t.upto is None else _num(t.upto), "rate": _num(t.rate)}
        for t in schedule.tiers
    ]


def _num(value: Decimal):
    """JSON number for a Decimal; exact for values up to 15 significant digits."""
    if value == value.to_integral_value():
        return int(value)
    return float(value)


def _read_catalog(doc) -> Catalog:
    if not isinstance(doc, dict):
        raise CatalogParseError("top level: expected an object")
    providers = tuple(
        _read_provider(item, f"providers[{i}]")
        for i, item in enumerate(_get_list(doc, "providers", "", required=True))
    )
    return Catalog(
        providers=providers,
        base_currency=str(doc.get("base_currency", "USD")),
        version=str(doc.get("version", "0")),
    )


def _read_provider(doc, path: str) -> Provider:
    _expect_object(doc, path)
    return Provider(
        name=_get_str(doc, "name", path),
        regions=tuple(
            _read_region(item, f"{path}.regions[{i}]")
            for i, item in enumerate(_get_list(doc, "regions", path, required=True))
        ),
    )


def _read_region(doc, path: str) -> Region:
    _expect_object(doc, path)
    return Region(
        name=_get_str(doc, "name", path),
        location=_read_enum(Location, doc.get("location", "Any"), f"{path}.location"),
        compute=tuple(
            _read_compute(item, f"{path}.compute[{i}]")
            for i, item in enumerate(_get_list(doc, "compute", path))
        ),
        storage=tuple(
            _read_storage(item, f"{path}.storage[{i}]")
            for i, item in enumerate(_get_list(doc, "storage", path))
        ),
        transfer=tuple(
            _read_transfer(item, f"{path}.transfer[{i}]")
            for i, item in enumerate(_get_list(doc, "transfer", path))
        ),
    )


def _read_compute(doc, path: str) -> ComputeOffering:
    _expect_object(doc, path)
    billing = doc.get("billing", {})
    _expect_object(billing, f"{path}.billing")
    return ComputeOffering(
        name=_get_str(doc, "name", path),
        cores=_get_int(doc, "cores", path),
        speed_ghz=_get_decimal(doc, "speed_ghz", path),
        ram_gb=_get_decimal(doc, "ram_gb", path),
        local_storage_gb=_get_decimal(doc, "local_storage_gb", path, default=ZERO),
        billing=ComputeBilling(
            per_instance_hour=_get_decimal(billing, "per_instance_hour", path, default=ZERO),
            per_ram_gb_hour=_get_decimal(billing, "per_ram_gb_hour", path, default=ZERO),
            per_vcpu_hour=_get_decimal(billing, "per_vcpu_hour", path, default=ZERO),
        ),
        plan=_read_plan(doc.get("plan"), f"{path}.plan"),
    )


def _read_storage(doc, path: str) -> StorageOffering:
    _expect_object(doc, path)
    max_gb = doc.get("max_gb")
    return StorageOffering(
        name=_get_str(doc, "name", path),
        min_gb=_get_decimal(doc, "min_gb", path, default=ZERO),
        max_gb=None if max_gb is None else _as_decimal(max_gb, f"{path}.max_gb"),
        gb_month_tiers=_read_tiers(doc.get("gb_month_tiers", []), f"{path}.gb_month_tiers"),
        requests=tuple(
            _read_request_pricing(item, f"{path}.requests[{i}]")
            for i, item in enumerate(_get_list(doc, "requests", path))
        ),
        plan_type=_read_enum(
            StoragePlanType, doc.get("plan_type", "pay_as_you_go"), f"{path}.plan_type"
        ),
        plan=_read_plan(doc.get("plan"), f"{path}.plan"),
    )


def _read_transfer(doc, path: str) -> TransferOffering:
    _expect_object(doc, path)
    return TransferOffering(
        name=_get_str(doc, "name", path),
        in_tiers=_read_tiers(doc.get("in_tiers", []), f"{path}.in_tiers"),
        out_tiers=_read_tiers(doc.get("out_tiers", []), f"{path}.out_tiers"),
    )


def _read_request_pricing(doc, path: str) -> RequestPricing:
    _expect_object(doc, path)
    ops = doc.get("ops", [])
    if not isinstance(ops, list):
        raise CatalogParseError(f"{path}.ops: expected a list")
    return RequestPricing(
        operations=frozenset(
            _read_enum(RequestOp, str(op).upper(), f"{path}.ops[{i}]") for i, op in enumerate(ops)
        ),
        rate_per_10k=_get_decimal(doc, "rate_per_10k", path, default=ZERO),
        charged=_read_enum(ChargeStatus, doc.get("charged", "charged"), f"{path}.charged"),
    )


def _read_tiers(doc, path: str) -> TierSchedule:
    if not isinstance(doc, list):
        raise CatalogParseError(f"{path}: expected a list")
    tiers = []
    for i, item in enumerate(doc):
        _expect_object(item, f"{path}[{i}]")
        upto = item.get("upto")
        tiers.append(
            Tier(
                upto=None if upto is None else _as_decimal(upto, f"{path}[{i}].upto"),
                rate=_get_decimal(item, "rate", f"{path}[{i}]"),
            )
        )
    return TierSchedule(tiers=tuple(tiers))


def _read_plan(doc, path: str) -> PlanPricing:
    if doc is None:
        return ON_DEMAND
    _expect_object(doc, path)
    return PlanPricing(
        plan_type=_read_enum(PlanType, doc.get("plan_type", "on_demand"), f"{path}.plan_type"),
        per_period_cost=_get_decimal(doc, "per_period_cost", path, default=ZERO),
        period_length_days=int(doc.get("period_length_days", 0)),
        included_units=_get_decimal(doc, "included_units", path, default=ZERO),
        overage_rate=_get_decimal(doc, "overage_rate", path, default=ZERO),
    )


def _read_enum(enum_cls, value, path: str):
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(repr(member.value) for member in enum_cls)
        raise CatalogParseError(f"{path}: {value!r} is not one of {allowed}") from None


def _expect_object(doc, path: str) -> None:
    if not isinstance(doc, dict):
        raise CatalogParseError(f"{path}: expected an object")


def _get_list(doc: dict, key: str, path: str, required: bool = False) -> list:
    value = doc.get(key)
    if value is None:
        if required:
            raise CatalogParseError(f"{path}.{key}: missing" if path else f"{key}: missing")
        return []
    if not isinstance(value, list):
        raise CatalogParseError(f"{path}.{key}: expected a list")
    return value


def _get_str(doc: dict, key: str, path: str) -> str:
    value = doc.get(key)
    if not isinstance(value, str) or not value:
        raise CatalogParseError(f"{path}.{key}: expected a non-empty string")
    return value


def _get_int(doc: dict, key: str, path: str) -> int:
    value = doc.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise CatalogParseError(f"{path}.{key}: expected an integer")
    return value


def _get_decimal(doc: dict, key: str, path: str, default: Optional[Decimal] = None) -> Decimal:
    value = doc.get(key)
    if value is None:
        if default is not None:
            return default
        raise CatalogParseError(f"{path}.{key}: missing number")
    return _as_decimal(value, f"{path}.{key}")


def _as_decimal(value, path: str) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Decimal(value)
    raise CatalogParseError(f"{path}: expected a number, got {value!r}")


# ---------------------------------------------------------------------------
# Operations

def merge_equal_price_regions(provider: Provider) -> Provider:
    """Collapse regions whose full offering/price vectors are identical.

    Merged regions keep the first member's offerings, join the names with
    " and ", and keep the common location (Any when locations differ).
    Selection over the merged provider is cost-identical to the original.
    """
    order: list[str] = []
    groups: dict[str, list[Region]] = {}
    for region in provider.regions:
        key = _region_price_key(region)
        if key not in groups:
            order.append(key)
            groups[key] = []
        groups[key].append(region)
    merged = []
    for key in order:
        members = groups[key]
        if len(members) == 1:
            merged.append(members[0])
            continue
        locations = {region.location for region in members}
        merged.append(
            replace(
                members[0],
                name=" and ".join(region.name for region in members),
                location=members[0].location if len(locations) == 1 else Location.ANY,
            )
        )
    return replace(provider, regions=tuple(merged))


def merge_catalog_regions(catalog: Catalog) -> Catalog:
    """Apply merge_equal_price_regions to every provider."""
    return replace(
        catalog,
        providers=tuple(merge_equal_price_regions(p) for p in catalog.providers),
    )


def _region_price_key(region: Region) -> str:
    doc = _region_doc(region)
    del doc["name"], doc["location"]
    for service in ("compute", "storage", "transfer"):
        doc[service] = sorted(doc[service], key=lambda item: item["name"])
    return json.dumps(doc, sort_keys=True)


def list_offerings(
    catalog: Catalog,
    service_type: ServiceType,
    name_pattern: Optional[str] = None,
    providers: Optional[Iterable[str]] = None,
) -> list[OfferingRow]:
    """List offerings of one type, optionally narrowed by name regex and provider.

    An absent provider list means every provider is considered.
    """
    matcher = None
    if name_pattern is not None:
        try:
            matcher = re.compile(name_pattern)
        except re.error as exc:
            raise PatternError(f"invalid pattern {name_pattern!r}: {exc}") from None
    wanted = None if providers is None else set(providers)
    rows = []
    for provider in catalog.providers:
        if wanted is not None and provider.name not in wanted:
            continue
        for region in provider.regions:
            for offering in region.offerings(service_type):
                if matcher is not None and not matcher.search(offering.name):
                    continue
                rows.append(OfferingRow(provider.name, region.name, offering))
    return rows


def upsert_offering(
    catalog: Catalog,
    provider_name: str,
    region_name: Optional[str],
    offering: Offering,
) -> Catalog:
    """Insert or replace one offering, returning a new catalog snapshot.

    The slot is keyed by (provider, region, service type, offering name).
    Unknown providers are created; a missing region name lands in "Any".
    The snapshot version always changes.
    """
    problems = validate_offering(offering, path=f"{provider_name}/{region_name or 'Any'}")
    if problems:
        raise CatalogInvariantError("; ".join(problems))
    region_name = region_name or "Any"

    service_field = {
        ComputeOffering: "compute",
        StorageOffering: "storage",
        TransferOffering: "transfer",
    }[type(offering)]

    def updated_region(region: Region) -> Region:
        existing = list(getattr(region, service_field))
        for i, current in enumerate(existing):
            if current.name == offering.name:
                existing[i] = offering
                break
        else:
            existing.append(offering)
        return replace(region, **{service_field: tuple(existing)})

    providers = list(catalog.providers)
    for pi, provider in enumerate(providers):
        if provider.name != provider_name:
            continue
        regions = list(provider.regions)
        for ri, region in enumerate(regions):
            if region.name == region_name:
                regions[ri] = updated_region(region)
                break
        else:
            regions.append(
                updated_region(Region(name=region_name, location=Location.ANY))
            )
        providers[pi] = replace(provider, regions=tuple(regions))
        break
    else:
        providers.append(
            Provider(
                name=provider_name,
                regions=(updated_region(Region(name=region_name, location=Location.ANY)),),
            )
        )

    updated = replace(catalog, providers=tuple(providers))
    return replace(updated, version=_next_version(catalog.version, updated))


def _next_version(previous: str, catalog: Catalog) -> str:
    digest = hashlib.sha256()
    digest.update(previous.encode())
    digest.update(dump_catalog(replace(catalog, version=""), indent=0).encode())
    return digest.hexdigest()[:12]
