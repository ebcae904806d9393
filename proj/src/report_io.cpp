#include "gridmix/report_io.hpp"

#include <fmt/format.h>
#include <ostream>

namespace gridmix
{

std::string
format_decimal(double value)
{
    return fmt::format("{:.6f}", value);
}

namespace
{
    Json
    fuel_map_to_json(FuelMap<double> const& m)
    {
        Json j = Json::object();
        for (auto const& [fuel, v] : m)
            j[fuel.name()] = v;
        return j;
    }

    FuelMap<double>
    fuel_map_from_json(Json const& j)
    {
        FuelMap<double> m;
        for (auto const& [name, v] : j.items())
            m.emplace(FuelType::parse(name), v.get<double>());
        return m;
    }

    template <typename T>
    Json
    optional_to_json(std::optional<T> const& v)
    {
        return v ? Json(*v) : Json(nullptr);
    }

    template <typename T>
    std::optional<T>
    optional_from_json(Json const& j)
    {
        if (j.is_null())
            return std::nullopt;
        return j.get<T>();
    }

    void
    write_line(std::ostream& out, std::string const& line)
    {
        out << line << '\n';
    }
}

Json
report_to_json(ScenarioReport const& r)
{
    Json j;
    j["name"] = r.name;
    j["hours"] = r.hours;
    j["total_load_mwh"] = r.total_load;
    j["total_generation_mwh"] = r.total_generation;
    j["generation_mwh"] = fuel_map_to_json(r.generation);
    j["shares"] = fuel_map_to_json(r.shares);
    j["renewables_share"] = r.renewables_share;
    j["annual_emissions_kg"] = r.annual_emissions;
    j["average_intensity_kg_per_kwh"] = r.average_intensity;
    j["annual_curtailment_mwh"] = r.annual_curtailment;
    j["unmet_energy_mwh"] = r.unmet_energy;
    j["storage_capacity_mwh"] = optional_to_json(r.storage_capacity);
    j["storage_utilization"] = optional_to_json(r.storage_utilization);
    return j;
}

ScenarioReport
report_from_json(Json const& j)
{
    try
    {
        ScenarioReport r;
        r.name = j.at("name").get<std::string>();
        r.hours = j.at("hours").get<std::size_t>();
        r.total_load = j.at("total_load_mwh").get<double>();
        r.total_generation = j.at("total_generation_mwh").get<double>();
        r.generation = fuel_map_from_json(j.at("generation_mwh"));
        r.shares = fuel_map_from_json(j.at("shares"));
        r.renewables_share = j.at("renewables_share").get<double>();
        r.annual_emissions = j.at("annual_emissions_kg").get<double>();
        r.average_intensity = j.at("average_intensity_kg_per_kwh").get<double>();
        r.annual_curtailment = j.at("annual_curtailment_mwh").get<double>();
        r.unmet_energy = j.at("unmet_energy_mwh").get<double>();
        r.storage_capacity = optional_from_json<double>(j.at("storage_capacity_mwh"));
        r.storage_utilization = optional_from_json<double>(j.at("storage_utilization"));
        return r;
    }
    catch (Json::exception const& e)
    {
        throw ConfigError{fmt::format("malformed scenario report: {}", e.what())};
    }
}

Json
sizing_to_json(std::string const& scenario, StorageSizing const& s)
{
    Json j;
    j["scenario"] = scenario;
    j["storage_capacity_mwh"] = s.capacity;
    j["storage_capacity_gwh"] = s.capacity / 1000.0;
    j["peak_soc_hour"] = optional_to_json(s.peak_hour);
    j["residual_curtailment_mwh"] = s.residual_curtailment;
    return j;
}

StorageSizing
sizing_from_json(Json const& j)
{
    try
    {
        StorageSizing s;
        s.capacity = j.at("storage_capacity_mwh").get<double>();
        s.peak_hour = optional_from_json<std::size_t>(j.at("peak_soc_hour"));
        s.residual_curtailment = j.at("residual_curtailment_mwh").get<double>();
        return s;
    }
    catch (Json::exception const& e)
    {
        throw ConfigError{fmt::format("malformed sizing record: {}", e.what())};
    }
}

void
write_hourly_csv(std::ostream& out, ScenarioResult const& result)
{
    FuelSet fuels;
    for (auto const& h : result.dispatch.hours)
        for (auto const& [fuel, _] : h.dispatched)
            fuels.insert(fuel);

    std::string header = "hour,load";
    for (auto const& fuel : fuels)
        header += "," + fuel.name();
    header += ",unmet,curtailment,storage_charge,soc,emissions_kg,intensity_kg_per_kwh";
    write_line(out, header);

    for (std::size_t i = 0; i < result.dispatch.hours.size(); ++i)
    {
        auto const& h = result.dispatch.hours[i];
        std::string line = fmt::format("{},{}", h.hour, format_decimal(h.load));
        for (auto const& fuel : fuels)
            line += "," + format_decimal(h.dispatched_of(fuel));
        StorageHour const s = i < result.storage.size() ? result.storage[i] : StorageHour{};
        line += "," + format_decimal(h.unmet);
        line += "," + format_decimal(h.total_curtailed());
        line += "," + format_decimal(s.charged);
        line += "," + format_decimal(s.soc_end);
        line += "," + format_decimal(h.emissions);
        line += "," + format_decimal(h.intensity);
        write_line(out, line);
    }
}

void
write_comparison_csv(std::ostream& out, ComparisonTable const& table)
{
    write_line(out, "scenario,metric,value,reference,delta,relative_change");
    auto row = [&](std::string const& scenario, char const* metric, MetricChange const& m) {
        write_line(
            out,
            fmt::format(
                "{},{},{},{},{},{}",
                scenario,
                metric,
                format_decimal(m.value),
                format_decimal(m.reference),
                format_decimal(m.delta),
                m.relative ? format_decimal(*m.relative) : std::string{"NA"}
            )
        );
    };
    for (auto const& r : table.rows)
    {
        row(r.scenario, "emissions_kg", r.emissions);
        row(r.scenario, "average_intensity_kg_per_kwh", r.average_intensity);
        row(r.scenario, "curtailment_mwh", r.curtailment);
        row(r.scenario, "renewables_share", r.renewables_share);
    }
}

void
write_mix_csv(std::ostream& out, std::span<ScenarioReport const> reports)
{
    write_line(out, "scenario,fuel,share");
    for (auto const& r : reports)
        for (auto const& [fuel, share] : r.shares)
            write_line(out, fmt::format("{},{},{}", r.name, fuel.name(), format_decimal(share)));
}

void
write_intensity_csv(std::ostream& out, std::span<ScenarioReport const> reports)
{
    write_line(out, "scenario,average_intensity_kg_per_kwh");
    for (auto const& r : reports)
        write_line(out, fmt::format("{},{}", r.name, format_decimal(r.average_intensity)));
}

} // namespace gridmix
