#pragma once

#include "gridmix/core_types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace gridmix
{

// Collects non-fatal findings (lenient-mode repairs, unknown fuels).
struct Diagnostics
{
    std::vector<std::string> warnings;

    void warn(std::string message);
};

struct IngestOptions
{
    // Strict: incomplete hours and negative/NaN values are errors.
    // Lenient: they are repaired and reported as warnings.
    bool strict = true;
};

// Malformed file content; the message carries "source:line: ".
class ParseError : public DataError
{
  public:
    ParseError(std::string const& source, std::size_t line, std::string const& message);
};

class IncompleteHour : public DataError
{
  public:
    using DataError::DataError;
};

class MissingProfile : public DataError
{
  public:
    explicit MissingProfile(std::string const& project_id);
};

////////////////////////////////////////////////////////////
// Time

// Wall-clock minutes since 1970-01-01 00:00; no time zone or DST.
struct Timestamp
{
    std::int64_t minutes = 0;

    friend auto operator<=>(Timestamp const&, Timestamp const&) = default;
};

// Accepts "YYYY-MM-DD HH:MM[:SS]" and the ISO "T" separator.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

////////////////////////////////////////////////////////////
// Records

struct FuelMixRecord
{
    Timestamp timestamp;
    FuelType fuel;
    Mwh energy;
};

enum class ProjectStatus
{
    SecurityScreeningComplete,
    InterconnectStudyComplete,
    FullInterconnectSurveyInProgress,
    InterconnectionAgreementComplete,
};

std::string to_string(ProjectStatus status);
ProjectStatus parse_project_status(std::string_view token);

struct ProjectRecord
{
    std::string project_id;
    FuelType fuel = Wind;
    double capacity_mw = 0.0;
    std::string county;
    std::set<ProjectStatus> status_flags;

    [[nodiscard]] bool has(ProjectStatus s) const { return status_flags.contains(s); }
};

struct ProjectProfile
{
    std::string project_id;
    // Capacity factors in [0, 1].
    HourlySeries normalized_output;
};

using ProfileMap = std::map<std::string, ProjectProfile>;

////////////////////////////////////////////////////////////
// Readers. Each takes an already-open stream plus the name used in messages.

std::vector<FuelMixRecord> read_fuel_mix(
    std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag
);
HourlySeries read_load(
    std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag
);
std::vector<ProjectRecord> read_projects(
    std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag
);
ProfileMap read_profiles(
    std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag
);

// File variants; a missing or unreadable file is a DataError naming the path.
std::vector<FuelMixRecord> read_fuel_mix_file(
    std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag
);
HourlySeries read_load_file(
    std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag
);
std::vector<ProjectRecord> read_projects_file(
    std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag
);
ProfileMap read_profiles_file(
    std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag
);

////////////////////////////////////////////////////////////
// Transformations

// Averages the four 15-minute values of each hour. Records must belong to
// a single fuel, be strictly time-ordered and cover consecutive hours.
HourlySeries average_to_hourly(
    std::span<FuelMixRecord const> records, IngestOptions const& opts, Diagnostics& diag
);

// Splits a multi-fuel report by fuel and averages each to hourly. All fuels
// must start at the same hour and cover the same number of hours.
FuelMap<HourlySeries> fuel_mix_to_hourly(
    std::span<FuelMixRecord const> records, IngestOptions const& opts, Diagnostics& diag
);

// Keeps projects with (screening AND study complete) OR
// (screening complete AND full survey in progress AND agreement complete).
std::vector<ProjectRecord> filter_gis_projects(std::span<ProjectRecord const> projects);

// Per fuel and hour: sum over projects of capacity_mw x capacity factor.
FuelMap<HourlySeries> build_future_renewables(
    std::span<ProjectRecord const> projects, ProfileMap const& profiles
);

// Wind/solar availability is baseline plus future additions; every other
// fuel keeps its baseline series.
Fleet build_fleet(
    FuelMap<HourlySeries> const& baseline_mix, FuelMap<HourlySeries> const& future_renewables
);

} // namespace gridmix
