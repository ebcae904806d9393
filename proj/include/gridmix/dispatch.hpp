#pragma once

#include "gridmix/core_types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gridmix
{

struct HourDispatch
{
    std::size_t hour = 0;
    Mwh load = 0.0;
    // One entry per fuel offered this hour, zero when not called on.
    FuelMap<Mwh> dispatched;
    Mwh unmet = 0.0;
    // One entry per curtailable fuel offered this hour.
    FuelMap<Mwh> curtailed;
    KgCo2 emissions = 0.0;
    // kg CO2 per kWh delivered; 0 when nothing was delivered.
    KgPerKwh intensity = 0.0;

    [[nodiscard]] Mwh generation() const;
    [[nodiscard]] Mwh dispatched_of(FuelType const& fuel) const;
    [[nodiscard]] Mwh curtailed_of(FuelType const& fuel) const;
    [[nodiscard]] Mwh total_curtailed() const;
};

struct YearDispatch
{
    std::vector<HourDispatch> hours;
    FuelMap<Mwh> generation;
    FuelMap<Mwh> curtailment;
    KgCo2 emissions = 0.0;
    Mwh unmet = 0.0;
    Mwh load = 0.0;

    [[nodiscard]] Mwh total_generation() const;
    [[nodiscard]] Mwh total_curtailment() const;

    // Rebuilds the annual totals from `hours`.
    static YearDispatch from_hours(std::vector<HourDispatch> hours);
};

// Walks `order`, taking min(cap, remaining load) from each fuel. Fuels in
// `order` must all appear in `caps`. Only fuels in `curtailable` record
// the undispatched remainder as curtailment.
HourDispatch dispatch_in_order(
    Mwh load,
    FuelMap<Mwh> const& caps,
    std::span<FuelType const> order,
    CarbonTable const& table,
    FuelSet const& curtailable
);

// Lowest-carbon first. Shortfall is reported in `unmet`, never thrown.
HourDispatch dispatch_hour(
    Mwh load, FuelMap<Mwh> const& caps, CarbonTable const& table, FuelSet const& curtailable
);

// Throws LengthMismatch when the load and fleet lengths differ.
YearDispatch dispatch_year(HourlySeries const& load, Fleet const& fleet, CarbonTable const& table);

// Total curtailed energy per hour.
HourlySeries curtailment_series(YearDispatch const& result);

} // namespace gridmix
