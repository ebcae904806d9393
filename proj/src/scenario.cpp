#include "gridmix/scenario.hpp"

#include <cmath>
#include <fmt/format.h>

namespace gridmix
{

ScenarioDataError::ScenarioDataError(std::string const& scenario, std::string const& what) :
    DataError{fmt::format("scenario '{}': {}", scenario, what)}
{
}

ScenarioConfigError::ScenarioConfigError(std::string const& scenario, std::string const& what) :
    ConfigError{fmt::format("scenario '{}': {}", scenario, what)}
{
}

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

    void
    check_config(ScenarioConfig const& config)
    {
        if (config.name.empty())
            throw ConfigError{"scenario name must not be empty"};
        if (config.projects_source.has_value() != config.profiles_source.has_value())
            throw ConfigError{"projects and profiles must be given together"};
        if (!(config.capacity_multiplier >= 0.0) || !std::isfinite(config.capacity_multiplier))
            throw ConfigError{"capacity multiplier must be finite and >= 0"};
        if (config.mode == ScenarioMode::Accounting)
        {
            if (config.projects_source)
                throw ConfigError{"accounting mode does not take projects"};
            if (!std::holds_alternative<std::monostate>(config.storage))
                throw ConfigError{"accounting mode does not take storage"};
        }
        else if (config.load_source.empty())
        {
            throw ConfigError{"dispatch mode requires a load file"};
        }
        if (auto const* spec = std::get_if<StorageSpec>(&config.storage))
            spec->validate();
    }
}

CarbonTable
resolve_carbon_table(ScenarioConfig const& config, FuelSet const& fuels, Diagnostics& diag)
{
    auto table = CarbonTable::defaults();
    for (auto const& [fuel, value] : config.carbon_overrides)
        table.set(fuel, value);
    auto const fallback = config.other_intensity.value_or(table.at(NaturalGasCombinedCycle));
    for (auto const& fuel : fuels)
    {
        if (table.contains(fuel) || fuel.kind() != FuelKind::Other)
            continue;
        table.set(fuel, fallback);
        diag.warn(fmt::format(
            "fuel '{}' has no published carbon intensity; using {} kgCO2/kWh", fuel.name(), fallback
        ));
    }
    return table;
}

ScenarioInputs
load_scenario_inputs(ScenarioConfig const& config, IngestOptions const& opts, Diagnostics& diag)
{
    check_config(config);
    ScenarioInputs inputs;

    auto const records = read_fuel_mix_file(config.baseline_mix_source, opts, diag);
    inputs.files_read.push_back(config.baseline_mix_source);
    inputs.baseline_mix = fuel_mix_to_hourly(records, opts, diag);

    FuelMap<HourlySeries> future;
    if (config.projects_source)
    {
        auto projects = read_projects_file(*config.projects_source, opts, diag);
        inputs.files_read.push_back(*config.projects_source);
        auto const profiles = read_profiles_file(*config.profiles_source, opts, diag);
        inputs.files_read.push_back(*config.profiles_source);
        if (config.filter_projects)
            projects = filter_gis_projects(projects);
        for (auto& p : projects)
            p.capacity_mw *= config.capacity_multiplier;
        future = build_future_renewables(projects, profiles);
    }

    if (config.mode == ScenarioMode::Dispatch)
    {
        inputs.load = read_load_file(config.load_source, opts, diag);
        inputs.files_read.push_back(config.load_source);
        inputs.fleet = build_fleet(inputs.baseline_mix, future);
        if (!inputs.fleet.availability().empty() && inputs.fleet.hours() != inputs.load.size())
        {
            throw LengthMismatch{fmt::format(
                "load '{}' has {} hours but the fuel mix covers {}",
                config.load_source.string(),
                inputs.load.size(),
                inputs.fleet.hours()
            )};
        }
    }
    else
    {
        inputs.fleet = Fleet::with_default_curtailment(inputs.baseline_mix);
    }
    inputs.table = resolve_carbon_table(config, inputs.fleet.fuels(), diag);
    return inputs;
}

YearDispatch
account_fuel_mix(FuelMap<HourlySeries> const& mix, CarbonTable const& table)
{
    std::size_t const n = mix.empty() ? 0 : mix.begin()->second.size();
    std::vector<HourDispatch> hours;
    hours.reserve(n);
    for (std::size_t h = 0; h < n; ++h)
    {
        HourDispatch hd;
        hd.hour = h;
        for (auto const& [fuel, series] : mix)
        {
            if (series.size() != n)
                throw LengthMismatch{fmt::format("fuel mix series '{}' has {} hours, expected {}", fuel.name(), series.size(), n)};
            hd.dispatched.emplace(fuel, series[h]);
        }
        hd.load = hd.generation();
        hd.emissions = emissions_of(hd.dispatched, table);
        hd.intensity = hd.load > 0.0 ? hd.emissions / (hd.load * 1000.0) : 0.0;
        hours.push_back(std::move(hd));
    }
    return YearDispatch::from_hours(std::move(hours));
}

FuelMap<double>
generation_mix(YearDispatch const& year, bool fold_storage)
{
    auto generation = year.generation;
    auto const total = sum(generation);
    if (!(total > 0.0))
        throw ZeroGeneration{"generation mix is undefined: no energy was dispatched"};

    if (fold_storage)
    {
        auto const stored = lookup(generation, Storage);
        auto const wind = lookup(generation, Wind);
        auto const solar = lookup(generation, Photovoltaic);
        if (stored > 0.0 && wind + solar > 0.0)
        {
            if (wind > 0.0)
                generation[Wind] = wind + stored * (wind / (wind + solar));
            if (solar > 0.0)
                generation[Photovoltaic] = solar + stored * (solar / (wind + solar));
            generation.erase(Storage);
        }
    }

    FuelMap<double> shares;
    for (auto const& [fuel, mwh] : generation)
        shares.emplace(fuel, mwh / total);
    return shares;
}

double
renewables_share(FuelMap<Mwh> const& generation)
{
    auto const total = sum(generation);
    if (!(total > 0.0))
        return 0.0;
    auto const renewable = lookup(generation, Wind) + lookup(generation, Photovoltaic) + lookup(generation, Storage);
    return renewable / total;
}

ScenarioReport
make_report(
    std::string name,
    YearDispatch const& year,
    std::span<StorageHour const> storage,
    std::optional<Mwh> storage_capacity,
    bool fold_storage
)
{
    ScenarioReport r;
    r.name = std::move(name);
    r.hours = year.hours.size();
    r.total_load = year.load;
    r.generation = year.generation;
    r.total_generation = year.total_generation();
    if (r.total_generation > 0.0)
        r.shares = generation_mix(year, fold_storage);
    r.renewables_share = renewables_share(r.generation);
    r.annual_emissions = year.emissions;
    r.average_intensity = r.total_generation > 0.0 ? r.annual_emissions / (r.total_generation * 1000.0) : 0.0;
    r.annual_curtailment = year.total_curtailment();
    r.unmet_energy = year.unmet;
    if (storage_capacity)
    {
        r.storage_capacity = storage_capacity;
        r.storage_utilization = storage_utilization(storage);
    }
    return r;
}

ScenarioResult
run_scenario_on(ScenarioConfig const& config, ScenarioInputs const& inputs)
{
    ScenarioResult result;
    if (config.mode == ScenarioMode::Accounting)
    {
        result.dispatch = account_fuel_mix(inputs.baseline_mix, inputs.table);
        std::vector<Mwh> delivered;
        for (auto const& h : result.dispatch.hours)
            delivered.push_back(h.load);
        result.load = HourlySeries{std::move(delivered), "load"};
        result.report = make_report(config.name, result.dispatch, {}, std::nullopt, config.fold_storage);
        return result;
    }

    result.load = inputs.load;
    std::optional<StorageSpec> spec;
    if (auto const* fixed = std::get_if<StorageSpec>(&config.storage))
    {
        spec = *fixed;
    }
    else if (std::holds_alternative<SizedStorage>(config.storage))
    {
        spec = StorageSpec{};
        spec->energy_capacity = size_storage(inputs.load, inputs.fleet, inputs.table).capacity;
    }

    std::optional<Mwh> capacity;
    if (spec)
    {
        auto run = dispatch_year_with_storage(inputs.load, inputs.fleet, inputs.table, *spec);
        result.dispatch = std::move(run.dispatch);
        result.storage = std::move(run.storage);
        capacity = spec->energy_capacity;
        if (!std::isfinite(*capacity))
        {
            // Unbounded storage reports the capacity it actually used.
            Mwh peak = spec->initial_soc;
            for (auto const& s : result.storage)
                peak = std::max(peak, s.soc_end);
            capacity = peak;
        }
    }
    else
    {
        result.dispatch = dispatch_year(inputs.load, inputs.fleet, inputs.table);
    }
    result.report = make_report(config.name, result.dispatch, result.storage, capacity, config.fold_storage);
    return result;
}

ScenarioResult
run_scenario(ScenarioConfig const& config, IngestOptions const& opts, Diagnostics& diag)
{
    try
    {
        auto const inputs = load_scenario_inputs(config, opts, diag);
        return run_scenario_on(config, inputs);
    }
    catch (ConfigError const& e)
    {
        throw ScenarioConfigError{config.name, e.what()};
    }
    catch (DataError const& e)
    {
        throw ScenarioDataError{config.name, e.what()};
    }
}

////////////////////////////////////////////////////////////
// Comparison

MetricChange
compare_metric(double value, double reference)
{
    MetricChange m;
    m.value = value;
    m.reference = reference;
    m.delta = value - reference;
    if (reference > 0.0)
        m.relative = (value - reference) / reference;
    return m;
}

ComparisonTable
compare_scenarios(std::span<ScenarioReport const> reports, std::size_t reference)
{
    if (reports.empty())
        throw EmptyComparison{"no scenario reports to compare"};
    if (reference >= reports.size())
        throw EmptyComparison{fmt::format("reference index {} out of range for {} reports", reference, reports.size())};

    auto const& ref = reports[reference];
    ComparisonTable table;
    table.reference = ref.name;
    for (auto const& r : reports)
    {
        table.rows.push_back(ComparisonRow{
            r.name,
            compare_metric(r.annual_emissions, ref.annual_emissions),
            compare_metric(r.average_intensity, ref.average_intensity),
            compare_metric(r.annual_curtailment, ref.annual_curtailment),
            compare_metric(r.renewables_share, ref.renewables_share),
        });
    }
    return table;
}

} // namespace gridmix
