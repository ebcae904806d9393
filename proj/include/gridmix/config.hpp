#pragma once

#include "gridmix/report_io.hpp"
#include "gridmix/scenario.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace gridmix
{

// A scenario set as declared in one JSON config file:
//
//   {
//     "reference": "baseline",                  (optional, default: first)
//     "strict": true,                           (optional)
//     "carbon_intensity": {"Coal": 0.92},       (optional, all scenarios)
//     "other_intensity": 0.44,                  (optional)
//     "scenarios": [
//       {
//         "name": "baseline",
//         "mode": "dispatch" | "accounting",
//         "load": "load.csv",
//         "fuel_mix": "fuel_mix.csv",
//         "projects": "projects.csv",           (with "profiles")
//         "profiles": "profiles.csv",
//         "filter_projects": true,
//         "capacity_multiplier": 1.0,
//         "storage": null | "sized" | {
//           "energy_capacity_mwh": 100 | "unbounded",
//           "charge_power_mw": ..., "discharge_power_mw": ...,
//           "round_trip_efficiency": 1.0, "initial_soc_mwh": 0,
//           "discharge_intensity": "zero" | "charged_average"
//         },
//         "carbon_intensity": {...}, "other_intensity": ...,
//         "fold_storage": false
//       }
//     ]
//   }
//
// Relative paths resolve against the config file's directory.
struct RunConfig
{
    std::filesystem::path path;
    std::vector<ScenarioConfig> scenarios;
    std::size_t reference = 0;
    std::optional<bool> strict;
};

// Throws ConfigError naming the offending key.
RunConfig parse_config(Json const& j, std::filesystem::path const& base_dir);
RunConfig load_config(std::filesystem::path const& path);

} // namespace gridmix
