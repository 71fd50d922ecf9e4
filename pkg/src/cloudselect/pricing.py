"""Pure cost calculus over catalog offerings.

Everything here is a function of its inputs: graduated tier evaluation,
compute/storage/request/transfer billing, prepaid-plan costing and
currency conversion.  All money is `Decimal` in USD unless converted; a
month is fixed at 31 days (744 hours) so short-term usage prorates
linearly — 2 GB for half a month costs the same as 1 GB for a full month.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from decimal import Decimal
from typing import Mapping, Optional, Union

from .catalog import (
    ZERO,
    ChargeStatus,
    ComputeBilling,
    PlanPricing,
    PlanType,
    RequestOp,
    RequestPricing,
    StorageOffering,
    TierSchedule,
    TransferOffering,
)

MONTH_DAYS = Decimal(31)
HOURS_PER_MONTH = Decimal(744)  # 24 * 31
REQUEST_QUOTE_SIZE = Decimal(10000)


class PricingError(Exception):
    """Base class for costing failures."""


class CapacityExceededError(PricingError):
    """Quantity exceeds what a bounded tier schedule or size band can price."""


class UnknownCurrencyError(PricingError):
    """Currency code missing from the rate table; message lists supported codes."""


@dataclass(frozen=True)
class RateTable:
    """Conversion rates quoted as units of target currency per 1 USD."""

    rates: Mapping[str, Decimal]
    effective_date: Optional[date] = None

    def __post_init__(self):
        usd = self.rates.get("USD")
        if usd != 1:
            raise ValueError("rate table must quote USD at exactly 1")
        for code, rate in self.rates.items():
            if rate <= 0:
                raise ValueError(f"rate for {code} must be > 0")


USD_ONLY = RateTable(rates={"USD": Decimal(1)})


@dataclass(frozen=True)
class ComputeDemand:
    """How long and how many instances a compute slot runs."""

    hours: Decimal
    instance_count: int = 1


@dataclass(frozen=True)
class UsageEstimate:
    """Anticipated usage a cost query is priced against.

    Transfer quantities are deliberately not defaulted: data always moves
    in and out, so callers must state both.
    """

    storage_gb: Optional[Decimal] = None
    duration_days: Decimal = MONTH_DAYS
    request_counts: Mapping[str, int] = field(default_factory=dict)
    transfer_in_gb: Optional[Decimal] = None
    transfer_out_gb: Optional[Decimal] = None
    compute_demands: tuple[ComputeDemand, ...] = ()


@dataclass(frozen=True)
class CostBreakdown:
    """Per-component costs of one candidate bundle, in a single currency."""

    storage_cost: Decimal
    requests_cost: Decimal
    data_transfer_cost: Decimal
    compute_total_cost: Decimal
    total: Decimal
    currency: str = "USD"

    @classmethod
    def build(
        cls,
        storage: Decimal = ZERO,
        requests: Decimal = ZERO,
        transfer: Decimal = ZERO,
        compute: Decimal = ZERO,
        currency: str = "USD",
    ) -> "CostBreakdown":
        return cls(
            storage_cost=storage,
            requests_cost=requests,
            data_transfer_cost=transfer,
            compute_total_cost=compute,
            total=storage + requests + transfer + compute,
            currency=currency,
        )

    def converted(self, target: str, rates: RateTable) -> "CostBreakdown":
        """Convert per component; totals re-sum, which equals converting once."""
        return CostBreakdown.build(
            storage=convert_currency(self.storage_cost, target, rates),
            requests=convert_currency(self.requests_cost, target, rates),
            transfer=convert_currency(self.data_transfer_cost, target, rates),
            compute=convert_currency(self.compute_total_cost, target, rates),
            currency=target,
        )


def tiered_cost(schedule: TierSchedule, quantity: Decimal) -> Decimal:
    """Graduated cost: each band's rate applies only to quantity inside it.

    An empty schedule is free.  Quantity beyond the last bounded band uses
    the unbounded band if present, otherwise raises CapacityExceededError.
    """
    if quantity < 0:
        raise ValueError("quantity must be non-negative")
    if not schedule.tiers:
        return ZERO
    total = ZERO
    floor = ZERO
    for tier in schedule.tiers:
        if tier.upto is None:
            if quantity > floor:
                total += (quantity - floor) * tier.rate
            return total
        ceiling = min(quantity, tier.upto)
        if ceiling > floor:
            total += (ceiling - floor) * tier.rate
        if quantity <= tier.upto:
            return total
        floor = tier.upto
    raise CapacityExceededError(
        f"quantity {quantity} exceeds schedule capacity {schedule.tiers[-1].upto}"
    )


def compute_cost(
    billing: ComputeBilling,
    ram_gb: Decimal,
    cores: int,
    hours: Decimal,
    count: int = 1,
) -> Decimal:
    """Hourly compute billing: instance, RAM-GB and vCPU components combine.

    A 1 GB instance for 1 hour consumes one RAM-hour; 2 GB consumes two.
    """
    if hours < 0:
        raise ValueError("hours must be non-negative")
    if count < 1:
        raise ValueError("instance count must be >= 1")
    hourly = (
        billing.per_instance_hour
        + billing.per_ram_gb_hour * ram_gb
        + billing.per_vcpu_hour * cores
    )
    return Decimal(count) * hours * hourly


def storage_cost(offering: StorageOffering, gb: Decimal, duration_days: Decimal) -> Decimal:
    """GB-month cost prorated linearly over a 31-day month."""
    if gb < 0:
        raise ValueError("stored GB must be non-negative")
    if gb < offering.min_gb or (offering.max_gb is not None and gb > offering.max_gb):
        raise CapacityExceededError(
            f"{offering.name}: {gb} GB outside size band "
            f"[{offering.min_gb}, {offering.max_gb if offering.max_gb is not None else 'unbounded'}]"
        )
    return tiered_cost(offering.gb_month_tiers, gb) * duration_days / MONTH_DAYS


def requests_cost(
    offering: StorageOffering, counts: Mapping[Union[str, RequestOp], int]
) -> Decimal:
    """Request fees: specific operation entry first, then ANY, else free.

    Unknown operation names fall through to the ANY entry when present.
    Free and unspecified entries contribute nothing.
    """
    total = ZERO
    for op, count in counts.items():
        if count < 0:
            raise ValueError("request counts must be non-negative")
        if count == 0:
            continue
        entry = _match_request_entry(offering.requests, op)
        if entry is None or entry.charged is not ChargeStatus.CHARGED:
            continue
        total += Decimal(count) / REQUEST_QUOTE_SIZE * entry.rate_per_10k
    return total


def _match_request_entry(
    entries: tuple[RequestPricing, ...], op: Union[str, RequestOp]
) -> Optional[RequestPricing]:
    if isinstance(op, RequestOp):
        wanted = op
    else:
        try:
            wanted = RequestOp(str(op).upper())
        except ValueError:
            wanted = None
    if wanted is not None and wanted is not RequestOp.ANY:
        for entry in entries:
            if wanted in entry.operations:
                return entry
    for entry in entries:
        if RequestOp.ANY in entry.operations:
            return entry
    return None


def transfer_cost(offering: TransferOffering, in_gb: Decimal, out_gb: Decimal) -> Decimal:
    """Inbound plus outbound graduated transfer cost."""
    return tiered_cost(offering.in_tiers, in_gb) + tiered_cost(offering.out_tiers, out_gb)


def plan_cost(plan: PlanPricing, used_units: Decimal, duration_days: Decimal) -> Decimal:
    """Prepaid-period cost: whole periods billed up front, overage beyond
    the included units of those periods."""
    if plan.plan_type is not PlanType.PERIOD:
        raise ValueError("plan_cost applies to period plans only")
    length = Decimal(plan.period_length_days)
    periods, remainder = divmod(duration_days, length)
    if remainder > 0 or periods == 0:
        periods += 1
    total = periods * plan.per_period_cost
    overage = used_units - plan.included_units * periods
    if overage > 0:
        total += overage * plan.overage_rate
    return total


def convert_currency(amount: Decimal, target: str, rates: RateTable) -> Decimal:
    """Convert a USD amount into the target currency by straight multiplication."""
    rate = rates.rates.get(target)
    if rate is None:
        supported = ", ".join(sorted(rates.rates))
        raise UnknownCurrencyError(f"unknown currency {target!r}; supported: {supported}")
    return amount * rate


def load_rates(text: str) -> RateTable:
    """Parse a rates file: {"effective_date": "YYYY-MM-DD", "rates": {"USD": 1, ...}}."""
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid rates JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("rates"), dict):
        raise ValueError("rates file must carry a 'rates' object")
    rates = {}
    for code, rate in doc["rates"].items():
        if not isinstance(rate, (int, Decimal)) or isinstance(rate, bool):
            raise ValueError(f"rate for {code} must be a number")
        rates[str(code)] = Decimal(rate) if isinstance(rate, int) else rate
    effective = doc.get("effective_date")
    return RateTable(
        rates=rates,
        effective_date=date.fromisoformat(effective) if effective else None,
    )
