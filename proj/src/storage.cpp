#include "gridmix/storage.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace gridmix
{

void
StorageSpec::validate() const
{
    auto non_negative = [](double v) { return v >= 0.0 && !std::isnan(v); };
    if (!non_negative(energy_capacity))
        throw InvalidSpec{fmt::format("storage energy capacity must be >= 0 (got {})", energy_capacity)};
    if (!non_negative(charge_power))
        throw InvalidSpec{fmt::format("storage charge power must be >= 0 (got {})", charge_power)};
    if (!non_negative(discharge_power))
        throw InvalidSpec{fmt::format("storage discharge power must be >= 0 (got {})", discharge_power)};
    if (!(round_trip_efficiency > 0.0 && round_trip_efficiency <= 1.0))
    {
        throw InvalidSpec{fmt::format(
            "storage round-trip efficiency must be in (0, 1] (got {})", round_trip_efficiency
        )};
    }
    if (!non_negative(initial_soc) || !std::isfinite(initial_soc) || initial_soc > energy_capacity)
    {
        throw InvalidSpec{fmt::format(
            "storage initial state of charge must be in [0, {}] (got {})", energy_capacity, initial_soc
        )};
    }
}

std::size_t
storage_slot(std::span<FuelType const> order, FuelSet const& curtailable)
{
    std::size_t slot = order.size();
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        if (order[i].is_fossil())
        {
            slot = i;
            break;
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        if (curtailable.contains(order[i]))
            slot = std::max(slot, i + 1);
    }
    return slot;
}

StorageRun
dispatch_year_with_storage(HourlySeries const& load, Fleet const& fleet, CarbonTable const& table, StorageSpec const& spec)
{
    spec.validate();
    if (!fleet.availability().empty() && load.size() != fleet.hours())
    {
        throw LengthMismatch{fmt::format(
            "load has {} hours but fleet availability has {}", load.size(), fleet.hours()
        )};
    }
    if (fleet.availability().contains(Storage))
        throw InvalidValue{"fleet availability must not contain the Storage pseudo-fuel"};

    auto order = merit_order(table, fleet.fuels());
    bool const active = spec.enabled();
    if (active)
    {
        auto const slot = storage_slot(order, fleet.curtailable());
        order.insert(order.begin() + static_cast<std::ptrdiff_t>(slot), Storage);
    }

    double const leg = std::sqrt(spec.round_trip_efficiency);
    Mwh soc = spec.initial_soc;
    // kg CO2 attached to the stored energy (ChargedAverage only).
    KgCo2 pool = 0.0;
    auto hour_table = table;

    StorageRun run;
    run.storage.reserve(load.size());
    std::vector<HourDispatch> hours;
    hours.reserve(load.size());
    for (std::size_t h = 0; h < load.size(); ++h)
    {
        auto caps = fleet.caps_at(h);
        Mwh deliverable = 0.0;
        if (active)
        {
            deliverable = std::min(soc * leg, spec.discharge_power);
            caps.emplace(Storage, deliverable);
            KgPerKwh discharge_intensity = 0.0;
            if (spec.discharge_intensity == DischargeIntensity::ChargedAverage && soc > 0.0)
                discharge_intensity = pool / (soc * leg * 1000.0);
            hour_table.set(Storage, discharge_intensity);
        }

        auto hd = dispatch_in_order(load[h], caps, order, hour_table, fleet.curtailable());
        hd.hour = h;

        StorageHour sh;
        if (active)
        {
            sh.discharged = hd.dispatched_of(Storage);
            if (sh.discharged > 0.0)
            {
                Mwh const before = soc;
                soc = sh.discharged == soc * leg ? 0.0 : std::max(0.0, soc - sh.discharged / leg);
                pool = before > 0.0 ? pool * (soc / before) : 0.0;
            }

            Mwh const surplus = hd.total_curtailed();
            if (surplus > 0.0 && soc < spec.energy_capacity)
            {
                Mwh charged = std::min(surplus, spec.charge_power);
                if (soc + charged * leg > spec.energy_capacity)
                {
                    charged = (spec.energy_capacity - soc) / leg;
                    soc = spec.energy_capacity;
                }
                else
                {
                    soc += charged * leg;
                }
                sh.charged = charged;

                // Charged energy leaves the curtailed pro-rata by fuel.
                for (auto& [fuel, mwh] : hd.curtailed)
                {
                    Mwh const absorbed = charged >= surplus ? mwh : charged * (mwh / surplus);
                    if (spec.discharge_intensity == DischargeIntensity::ChargedAverage)
                        pool += absorbed * 1000.0 * table.at(fuel);
                    mwh = charged >= surplus ? 0.0 : mwh - absorbed;
                }
            }
        }
        sh.soc_end = soc;
        run.storage.push_back(sh);
        hours.push_back(std::move(hd));
    }
    run.dispatch = YearDispatch::from_hours(std::move(hours));
    return run;
}

StorageSizing
size_storage(HourlySeries const& load, Fleet const& fleet, CarbonTable const& table)
{
    StorageSpec unbounded;
    auto const probe = dispatch_year_with_storage(load, fleet, table, unbounded);

    StorageSizing sizing;
    for (std::size_t h = 0; h < probe.storage.size(); ++h)
    {
        if (probe.storage[h].soc_end > sizing.capacity)
        {
            sizing.capacity = probe.storage[h].soc_end;
            sizing.peak_hour = h;
        }
    }

    StorageSpec sized;
    sized.energy_capacity = sizing.capacity;
    auto const check = dispatch_year_with_storage(load, fleet, table, sized);
    sizing.residual_curtailment = check.dispatch.total_curtailment();
    return sizing;
}

double
storage_utilization(std::span<StorageHour const> hours)
{
    if (hours.empty())
        return 0.0;
    auto const used = std::count_if(hours.begin(), hours.end(), [](StorageHour const& s) {
        return s.discharged > 0.0;
    });
    return static_cast<double>(used) / static_cast<double>(hours.size());
}

} // namespace gridmix
