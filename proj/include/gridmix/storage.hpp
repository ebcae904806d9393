#pragma once

#include "gridmix/dispatch.hpp"

#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace gridmix
{

inline constexpr double Unbounded = std::numeric_limits<double>::infinity();

class InvalidSpec : public ConfigError
{
  public:
    using ConfigError::ConfigError;
};

// How emissions are attributed to energy leaving storage.
enum class DischargeIntensity
{
    // Discharge is carbon-free; charged energy was curtailed, never counted.
    Zero,
    // Discharge carries the life-cycle intensity of the wind/solar mix that
    // charged it (tracked as a running pool).
    ChargedAverage,
};

struct StorageSpec
{
    Mwh energy_capacity = Unbounded;
    // MWh per hour limits on each leg, measured at the grid side.
    Mwh charge_power = Unbounded;
    Mwh discharge_power = Unbounded;
    // Applied as sqrt(eff) on each leg.
    double round_trip_efficiency = 1.0;
    Mwh initial_soc = 0.0;
    DischargeIntensity discharge_intensity = DischargeIntensity::Zero;

    // Throws InvalidSpec.
    void validate() const;
    [[nodiscard]] bool enabled() const noexcept { return energy_capacity > 0.0; }
};

struct StorageHour
{
    Mwh charged = 0.0;
    Mwh discharged = 0.0;
    Mwh soc_end = 0.0;
};

struct StorageRun
{
    // Curtailment and emissions here are after storage.
    YearDispatch dispatch;
    std::vector<StorageHour> storage;
};

// Position of Storage in a merit order of non-storage fuels: ahead of the
// first fossil fuel and behind every curtailable fuel.
std::size_t storage_slot(std::span<FuelType const> order, FuelSet const& curtailable);

// Sequential re-dispatch: storage is offered at its state of charge ahead
// of fossil fuels and is charged only from curtailed wind/solar.
// Throws LengthMismatch and InvalidSpec.
StorageRun dispatch_year_with_storage(
    HourlySeries const& load, Fleet const& fleet, CarbonTable const& table, StorageSpec const& spec
);

struct StorageSizing
{
    // Peak state of charge with unbounded capacity (eff = 1, no power limits).
    Mwh capacity = 0.0;
    // First hour at which the peak is reached; empty when nothing is stored.
    std::optional<std::size_t> peak_hour;
    // Curtailment left when re-run with `capacity`; zero up to rounding.
    Mwh residual_curtailment = 0.0;
};

StorageSizing size_storage(HourlySeries const& load, Fleet const& fleet, CarbonTable const& table);

// Fraction of hours with a discharge; 0 for no hours.
double storage_utilization(std::span<StorageHour const> hours);

} // namespace gridmix
