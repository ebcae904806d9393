#pragma once

#include "gridmix/dispatch.hpp"
#include "gridmix/ingest.hpp"
#include "gridmix/storage.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gridmix
{

class ZeroGeneration : public DataError
{
  public:
    using DataError::DataError;
};

class EmptyComparison : public ConfigError
{
  public:
    using ConfigError::ConfigError;
};

// Wraps a failure with the scenario it came from; keeps the category of the
// original error so callers can still tell data from configuration faults.
class ScenarioDataError : public DataError
{
  public:
    ScenarioDataError(std::string const& scenario, std::string const& what);
};

class ScenarioConfigError : public ConfigError
{
  public:
    ScenarioConfigError(std::string const& scenario, std::string const& what);
};

// Storage sized to absorb all curtailment (see size_storage).
struct SizedStorage
{
    friend bool operator==(SizedStorage, SizedStorage) = default;
};

using StorageChoice = std::variant<std::monostate, StorageSpec, SizedStorage>;

enum class ScenarioMode
{
    // Merit-order dispatch of the fleet against the load.
    Dispatch,
    // The hourly fuel mix is taken as delivered; no dispatch, no load file.
    Accounting,
};

struct ScenarioConfig
{
    std::string name;
    ScenarioMode mode = ScenarioMode::Dispatch;
    std::filesystem::path load_source;
    std::filesystem::path baseline_mix_source;
    std::optional<std::filesystem::path> projects_source;
    std::optional<std::filesystem::path> profiles_source;
    // Apply the interconnection-status filter to the project list.
    bool filter_projects = true;
    // Multiplies every project's capacity before profiles are applied.
    double capacity_multiplier = 1.0;
    StorageChoice storage;
    FuelMap<KgPerKwh> carbon_overrides;
    // Intensity for fuels outside the carbon table; defaults to the
    // combined-cycle gas value.
    std::optional<KgPerKwh> other_intensity;
    // Report storage discharge inside the wind/solar shares.
    bool fold_storage = false;
};

struct ScenarioInputs
{
    HourlySeries load;
    FuelMap<HourlySeries> baseline_mix;
    Fleet fleet;
    CarbonTable table;
    std::vector<std::filesystem::path> files_read;
};

struct ScenarioReport
{
    std::string name;
    std::size_t hours = 0;
    Mwh total_load = 0.0;
    Mwh total_generation = 0.0;
    FuelMap<Mwh> generation;
    FuelMap<double> shares;
    double renewables_share = 0.0;
    KgCo2 annual_emissions = 0.0;
    KgPerKwh average_intensity = 0.0;
    Mwh annual_curtailment = 0.0;
    Mwh unmet_energy = 0.0;
    std::optional<Mwh> storage_capacity;
    std::optional<double> storage_utilization;

    friend bool operator==(ScenarioReport const&, ScenarioReport const&) = default;
};

struct ScenarioResult
{
    ScenarioReport report;
    HourlySeries load;
    YearDispatch dispatch;
    // Empty when the scenario has no storage.
    std::vector<StorageHour> storage;
};

// Reads every file the config references and builds the fleet and table.
ScenarioInputs load_scenario_inputs(ScenarioConfig const& config, IngestOptions const& opts, Diagnostics& diag);

// Carbon table with overrides applied and an entry for every fleet fuel.
CarbonTable resolve_carbon_table(ScenarioConfig const& config, FuelSet const& fuels, Diagnostics& diag);

// Runs the pipeline on already-loaded inputs.
ScenarioResult run_scenario_on(ScenarioConfig const& config, ScenarioInputs const& inputs);

// load_scenario_inputs followed by run_scenario_on; errors carry the
// scenario name.
ScenarioResult run_scenario(ScenarioConfig const& config, IngestOptions const& opts, Diagnostics& diag);

// Annual fuel-mix totals as delivered energy, without dispatch.
YearDispatch account_fuel_mix(FuelMap<HourlySeries> const& mix, CarbonTable const& table);

// Per-fuel share of dispatched energy; storage discharge is its own slice
// unless folded into wind/solar in proportion to their generation.
// Throws ZeroGeneration.
FuelMap<double> generation_mix(YearDispatch const& year, bool fold_storage = false);

// Wind, solar and storage discharge over total generation.
double renewables_share(FuelMap<Mwh> const& generation);

ScenarioReport make_report(
    std::string name,
    YearDispatch const& year,
    std::span<StorageHour const> storage,
    std::optional<Mwh> storage_capacity,
    bool fold_storage
);

////////////////////////////////////////////////////////////
// Comparison

struct MetricChange
{
    double value = 0.0;
    double reference = 0.0;
    double delta = 0.0;
    // (value - reference) / reference; empty when reference <= 0.
    std::optional<double> relative;
};

struct ComparisonRow
{
    std::string scenario;
    MetricChange emissions;
    MetricChange average_intensity;
    MetricChange curtailment;
    MetricChange renewables_share;
};

struct ComparisonTable
{
    std::string reference;
    std::vector<ComparisonRow> rows;
};

MetricChange compare_metric(double value, double reference);

// Every report against reports[reference]. Throws EmptyComparison.
ComparisonTable compare_scenarios(std::span<ScenarioReport const> reports, std::size_t reference = 0);

} // namespace gridmix
