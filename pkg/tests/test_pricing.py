from __future__ import annotations

import random
from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cloudselect.catalog import (
    ChargeStatus,
    ComputeBilling,
    PlanPricing,
    PlanType,
    RequestOp,
    RequestPricing,
    StorageOffering,
    Tier,
    TierSchedule,
    TransferOffering,
)
from cloudselect.pricing import (
    CapacityExceededError,
    CostBreakdown,
    RateTable,
    UnknownCurrencyError,
    compute_cost,
    convert_currency,
    load_rates,
    plan_cost,
    requests_cost,
    storage_cost,
    tiered_cost,
    transfer_cost,
)

from .oracles import increment_tier_cost, random_schedule

D = Decimal

S3_LIKE = TierSchedule(
    tiers=(Tier(upto=D(1024), rate=D("0.125")), Tier(upto=D(51200), rate=D("0.093")))
)


def flat_storage(rate, min_gb=D(0), max_gb=None, requests=()):
    return StorageOffering(
        name="flat",
        min_gb=min_gb,
        max_gb=max_gb,
        gb_month_tiers=TierSchedule(tiers=(Tier(upto=None, rate=D(str(rate))),)),
        requests=tuple(requests),
    )


class TestTieredCost:
    def test_within_first_band(self):
        assert tiered_cost(S3_LIKE, D(50)) == D("6.25")

    def test_spanning_two_bands(self):
        # 1024 * 0.125 + 512 * 0.093
        assert tiered_cost(S3_LIKE, D(1536)) == D("175.616")

    def test_zero_quantity(self):
        assert tiered_cost(S3_LIKE, D(0)) == 0

    def test_empty_schedule_is_free(self):
        assert tiered_cost(TierSchedule(), D(12345)) == 0

    def test_capacity_exceeded(self):
        with pytest.raises(CapacityExceededError):
            tiered_cost(S3_LIKE, D(51201))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            tiered_cost(S3_LIKE, D(-1))

    def test_matches_increment_oracle(self):
        rng = random.Random(42)
        for _ in range(40):
            schedule = random_schedule(rng)
            pairs = [(t.upto, t.rate) for t in schedule.tiers]
            capacity = pairs[-1][0]
            hi = float(capacity) if capacity is not None else 25.0
            quantity = D(str(round(rng.uniform(0, hi), 3)))
            assert tiered_cost(schedule, quantity) == increment_tier_cost(pairs, quantity)

    def test_monotone_in_quantity(self):
        rng = random.Random(43)
        for _ in range(30):
            schedule = random_schedule(rng)
            capacity = schedule.capacity
            hi = float(capacity) if capacity is not None else 40.0
            a = D(str(round(rng.uniform(0, hi), 3)))
            b = D(str(round(rng.uniform(0, hi), 3)))
            low, high = sorted((a, b))
            assert tiered_cost(schedule, low) <= tiered_cost(schedule, high)


class TestComputeCost:
    def test_one_ram_hour(self):
        billing = ComputeBilling(per_ram_gb_hour=D("0.1"))
        assert compute_cost(billing, D(1), 1, D(1)) == D("0.1")

    def test_two_ram_hours(self):
        billing = ComputeBilling(per_ram_gb_hour=D("0.1"))
        assert compute_cost(billing, D(2), 1, D(1)) == D("0.2")

    def test_instance_hours_month(self):
        billing = ComputeBilling(per_instance_hour=D("0.05"))
        assert compute_cost(billing, D(1), 1, D(744)) == D("37.2")

    def test_combined_components(self):
        billing = ComputeBilling(
            per_instance_hour=D("0.01"), per_ram_gb_hour=D("0.02"), per_vcpu_hour=D("0.03")
        )
        # 10 h * (0.01 + 4 * 0.02 + 2 * 0.03)
        assert compute_cost(billing, D(4), 2, D(10)) == D("1.50")

    def test_count_rejected_below_one(self):
        with pytest.raises(ValueError):
            compute_cost(ComputeBilling(per_instance_hour=D(1)), D(1), 1, D(1), count=0)

    @given(
        rate=st.decimals(min_value="0.0001", max_value="5", places=4),
        ram=st.decimals(min_value="0.1", max_value="70", places=3),
        hours=st.decimals(min_value=0, max_value=2000, places=2),
        count=st.integers(min_value=1, max_value=20),
    )
    def test_ram_hour_law(self, rate, ram, hours, count):
        billing = ComputeBilling(per_ram_gb_hour=rate)
        assert compute_cost(billing, ram, 1, hours, count) == rate * ram * hours * count

    @given(
        hours=st.decimals(min_value=0, max_value=1000, places=2),
        count=st.integers(min_value=1, max_value=10),
    )
    def test_linear_in_hours_and_count(self, hours, count):
        billing = ComputeBilling(per_instance_hour=D("0.07"))
        single = compute_cost(billing, D(2), 1, hours, 1)
        assert compute_cost(billing, D(2), 1, hours, count) == single * count
        assert compute_cost(billing, D(2), 1, hours * 2, count) == single * 2 * count


class TestStorageCost:
    def test_flat_month(self):
        assert storage_cost(flat_storage("0.14"), D(10), D(31)) == D("1.40")

    def test_half_month_equivalence(self):
        offering = flat_storage("0.14")
        assert storage_cost(offering, D(2), D("15.5")) == storage_cost(offering, D(1), D(31))

    def test_zero_usage(self):
        assert storage_cost(flat_storage("0.14"), D(0), D(31)) == 0

    def test_outside_band_rejected(self):
        offering = flat_storage("0.1", min_gb=D(100))
        with pytest.raises(CapacityExceededError):
            storage_cost(offering, D(50), D(31))
        bounded = flat_storage("0.1", max_gb=D(40))
        with pytest.raises(CapacityExceededError):
            storage_cost(bounded, D(50), D(31))

    def test_proration_equality_random(self):
        rng = random.Random(99)
        for _ in range(100):
            rate = D(str(round(rng.uniform(0.01, 2.0), 4)))
            gb = D(str(round(rng.uniform(0.001, 500.0), 3)))
            offering = flat_storage(rate)
            assert storage_cost(offering, gb * 2, D("15.5")) == storage_cost(offering, gb, D(31))


class TestRequestsCost:
    def test_flat_any_rate(self):
        offering = flat_storage(
            "0.1",
            requests=[RequestPricing(operations=frozenset({RequestOp.ANY}), rate_per_10k=D("0.01"))],
        )
        assert requests_cost(offering, {"COPY": 1000, "GET": 5000}) == D("0.006")

    def test_free_operation_contributes_nothing(self):
        offering = flat_storage(
            "0.1",
            requests=[
                RequestPricing(
                    operations=frozenset({RequestOp.DELETE}),
                    rate_per_10k=D(0),
                    charged=ChargeStatus.FREE,
                )
            ],
        )
        assert requests_cost(offering, {"DELETE": 10**6}) == 0

    def test_unspecified_is_free(self):
        offering = flat_storage(
            "0.1",
            requests=[
                RequestPricing(
                    operations=frozenset({RequestOp.ANY}),
                    rate_per_10k=D(0),
                    charged=ChargeStatus.UNSPECIFIED,
                )
            ],
        )
        assert requests_cost(offering, {"PUT": 12345, "GET": 999}) == 0

    def test_specific_match_beats_any(self):
        offering = flat_storage(
            "0.1",
            requests=[
                RequestPricing(operations=frozenset({RequestOp.GET}), rate_per_10k=D("1")),
                RequestPricing(operations=frozenset({RequestOp.ANY}), rate_per_10k=D("10")),
            ],
        )
        assert requests_cost(offering, {"GET": 10000}) == D(1)

    def test_unknown_operation_falls_to_any(self):
        offering = flat_storage(
            "0.1",
            requests=[RequestPricing(operations=frozenset({RequestOp.ANY}), rate_per_10k=D("2"))],
        )
        assert requests_cost(offering, {"FROBNICATE": 5000}) == D(1)

    def test_unknown_operation_without_any_is_free(self):
        offering = flat_storage(
            "0.1",
            requests=[RequestPricing(operations=frozenset({RequestOp.GET}), rate_per_10k=D("2"))],
        )
        assert requests_cost(offering, {"FROBNICATE": 5000}) == 0

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            requests_cost(flat_storage("0.1"), {"GET": -1})


class TestTransferCost:
    def test_free_in_flat_out(self):
        offering = TransferOffering(
            name="t",
            in_tiers=TierSchedule(),
            out_tiers=TierSchedule(tiers=(Tier(upto=None, rate=D("0.12")),)),
        )
        assert transfer_cost(offering, D(50), D(10)) == D("1.2")

    def test_charged_inbound(self):
        offering = TransferOffering(
            name="t",
            in_tiers=TierSchedule(tiers=(Tier(upto=None, rate=D("0.1")),)),
            out_tiers=TierSchedule(tiers=(Tier(upto=None, rate=D("0.1")),)),
        )
        assert transfer_cost(offering, D(50), D(10)) == D("6.0")

    def test_zero_usage(self):
        offering = TransferOffering(
            name="t",
            in_tiers=TierSchedule(tiers=(Tier(upto=None, rate=D("0.5")),)),
            out_tiers=TierSchedule(tiers=(Tier(upto=None, rate=D("0.5")),)),
        )
        assert transfer_cost(offering, D(0), D(0)) == 0

    def test_capacity_error_propagates(self):
        offering = TransferOffering(
            name="t",
            in_tiers=TierSchedule(tiers=(Tier(upto=D(10), rate=D("0.5")),)),
            out_tiers=TierSchedule(),
        )
        with pytest.raises(CapacityExceededError):
            transfer_cost(offering, D(11), D(0))


class TestPlanCost:
    PLAN = PlanPricing(
        plan_type=PlanType.PERIOD,
        per_period_cost=D(10),
        period_length_days=31,
        included_units=D(100),
        overage_rate=D("0.5"),
    )

    def test_within_included(self):
        assert plan_cost(self.PLAN, D(50), D(31)) == D(10)

    def test_overage(self):
        assert plan_cost(self.PLAN, D(150), D(31)) == D(10) + D(50) * D("0.5")

    def test_degenerate_plan(self):
        plan = PlanPricing(
            plan_type=PlanType.PERIOD, per_period_cost=D(7), period_length_days=31
        )
        assert plan_cost(plan, D(0), D(31)) == D(7)

    def test_partial_period_billed_in_full(self):
        assert plan_cost(self.PLAN, D(0), D(32)) == D(20)

    def test_on_demand_not_routed_here(self):
        with pytest.raises(ValueError):
            plan_cost(PlanPricing(), D(1), D(31))


class TestConvertCurrency:
    TABLE = RateTable(rates={"USD": D(1), "AUD": D("1.5")})

    def test_usd_identity(self):
        assert convert_currency(D(10), "USD", self.TABLE) == D(10)

    def test_multiplication(self):
        assert convert_currency(D(10), "AUD", self.TABLE) == D(15)

    def test_unknown_code_lists_supported(self):
        with pytest.raises(UnknownCurrencyError, match="AUD, USD"):
            convert_currency(D(10), "XXX", self.TABLE)

    @given(
        a=st.decimals(min_value=0, max_value=10**6, places=6),
        b=st.decimals(min_value=0, max_value=10**6, places=6),
        rate=st.decimals(min_value="0.0001", max_value=10**4, places=4),
    )
    def test_distributes_over_addition(self, a, b, rate):
        table = RateTable(rates={"USD": D(1), "ZZZ": rate})
        assert convert_currency(a + b, "ZZZ", table) == convert_currency(
            a, "ZZZ", table
        ) + convert_currency(b, "ZZZ", table)


class TestCostBreakdown:
    def test_total_is_component_sum(self):
        breakdown = CostBreakdown.build(
            storage=D("1.365"), requests=D(0), transfer=D("0.402"), compute=D("20.088")
        )
        assert breakdown.total == D("21.855")

    def test_converted_components_sum_to_converted_total(self):
        table = RateTable(rates={"USD": D(1), "AUD": D("1.25")})
        breakdown = CostBreakdown.build(
            storage=D("1.092"), requests=D("0.0048"), transfer=D("0.288"), compute=D("29.76")
        )
        converted = breakdown.converted("AUD", table)
        assert converted.total == breakdown.total * D("1.25")
        assert converted.total == (
            converted.storage_cost
            + converted.requests_cost
            + converted.data_transfer_cost
            + converted.compute_total_cost
        )


class TestLoadRates:
    def test_usd_must_be_one(self):
        with pytest.raises(ValueError):
            load_rates('{"rates": {"USD": 2}}')

    def test_positive_rates_required(self):
        with pytest.raises(ValueError):
            load_rates('{"rates": {"USD": 1, "AUD": -1}}')

    def test_bundled_file(self, rates):
        assert rates.rates["USD"] == 1
        assert rates.rates["AUD"] == D("1.25")
        assert rates.effective_date is not None
