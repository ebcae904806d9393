#include "gridmix/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace gridmix
{

namespace
{
    Mwh
    lookup(FuelMap<Mwh> const& m, FuelType const& fuel)
    {
        auto it = m.find(fuel);
        return it == m.end() ? 0.0 : it->second;
    }

    Mwh
    sum(FuelMap<Mwh> const& m)
    {
        Mwh total = 0.0;
        for (auto const& [_, v] : m)
            total += v;
        return total;
    }
}

Mwh
HourDispatch::generation() const
{
    return sum(dispatched);
}

Mwh
HourDispatch::dispatched_of(FuelType const& fuel) const
{
    return lookup(dispatched, fuel);
}

Mwh
HourDispatch::curtailed_of(FuelType const& fuel) const
{
    return lookup(curtailed, fuel);
}

Mwh
HourDispatch::total_curtailed() const
{
    return sum(curtailed);
}

Mwh
YearDispatch::total_generation() const
{
    return sum(generation);
}

Mwh
YearDispatch::total_curtailment() const
{
    return sum(curtailment);
}

YearDispatch
YearDispatch::from_hours(std::vector<HourDispatch> hours)
{
    YearDispatch year;
    for (auto const& h : hours)
    {
        for (auto const& [fuel, mwh] : h.dispatched)
            year.generation[fuel] += mwh;
        for (auto const& [fuel, mwh] : h.curtailed)
            year.curtailment[fuel] += mwh;
        year.emissions += h.emissions;
        year.unmet += h.unmet;
        year.load += h.load;
    }
    year.hours = std::move(hours);
    return year;
}

HourDispatch
dispatch_in_order(
    Mwh load,
    FuelMap<Mwh> const& caps,
    std::span<FuelType const> order,
    CarbonTable const& table,
    FuelSet const& curtailable
)
{
    if (!(load >= 0.0) || !std::isfinite(load))
        throw InvalidValue{fmt::format("hourly load must be finite and >= 0 (got {})", load)};
    HourDispatch out;
    out.load = load;
    Mwh remaining = load;
    for (auto const& fuel : order)
    {
        auto const cap = caps.at(fuel);
        if (!(cap >= 0.0) || !std::isfinite(cap))
            throw InvalidValue{fmt::format("cap for '{}' must be finite and >= 0 (got {})", fuel.name(), cap)};
        auto const take = std::min(cap, remaining);
        remaining -= take;
        out.dispatched.emplace(fuel, take);
        if (curtailable.contains(fuel))
            out.curtailed.emplace(fuel, cap - take);
    }
    out.unmet = remaining;
    out.emissions = emissions_of(out.dispatched, table);
    auto const delivered = out.generation();
    out.intensity = delivered > 0.0 ? out.emissions / (delivered * 1000.0) : 0.0;
    return out;
}

HourDispatch
dispatch_hour(Mwh load, FuelMap<Mwh> const& caps, CarbonTable const& table, FuelSet const& curtailable)
{
    FuelSet fuels;
    for (auto const& [fuel, _] : caps)
        fuels.insert(fuel);
    auto const order = merit_order(table, fuels);
    return dispatch_in_order(load, caps, order, table, curtailable);
}

YearDispatch
dispatch_year(HourlySeries const& load, Fleet const& fleet, CarbonTable const& table)
{
    if (!fleet.availability().empty() && load.size() != fleet.hours())
    {
        throw LengthMismatch{fmt::format(
            "load has {} hours but fleet availability has {}", load.size(), fleet.hours()
        )};
    }
    auto const order = merit_order(table, fleet.fuels());
    std::vector<HourDispatch> hours;
    hours.reserve(load.size());
    for (std::size_t h = 0; h < load.size(); ++h)
    {
        auto hd = dispatch_in_order(load[h], fleet.caps_at(h), order, table, fleet.curtailable());
        hd.hour = h;
        hours.push_back(std::move(hd));
    }
    return YearDispatch::from_hours(std::move(hours));
}

HourlySeries
curtailment_series(YearDispatch const& result)
{
    std::vector<Mwh> values;
    values.reserve(result.hours.size());
    for (auto const& h : result.hours)
        values.push_back(h.total_curtailed());
    return HourlySeries{std::move(values), "curtailment"};
}

} // namespace gridmix
