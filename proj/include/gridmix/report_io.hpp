#pragma once

#include "gridmix/scenario.hpp"

#include <iosfwd>
#include <json.hpp>
#include <string>

namespace gridmix
{

using Json = nlohmann::ordered_json;

// Fixed six-decimal rendering used by every CSV output.
std::string format_decimal(double value);

Json report_to_json(ScenarioReport const& report);
// Throws ConfigError when fields are missing or mistyped.
ScenarioReport report_from_json(Json const& j);

Json sizing_to_json(std::string const& scenario, StorageSizing const& sizing);
StorageSizing sizing_from_json(Json const& j);

// hour,load,<fuels...>,unmet,curtailment,storage_charge,soc,emissions_kg,intensity_kg_per_kwh
void write_hourly_csv(std::ostream& out, ScenarioResult const& result);

// scenario,metric,value,reference,delta,relative_change ("NA" when undefined)
void write_comparison_csv(std::ostream& out, ComparisonTable const& table);

// scenario,fuel,share
void write_mix_csv(std::ostream& out, std::span<ScenarioReport const> reports);

// scenario,average_intensity_kg_per_kwh
void write_intensity_csv(std::ostream& out, std::span<ScenarioReport const> reports);

} // namespace gridmix
