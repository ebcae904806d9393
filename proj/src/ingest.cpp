#include "gridmix/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <optional>
#include <unordered_map>

namespace gridmix
{

void
Diagnostics::warn(std::string message)
{
    warnings.push_back(std::move(message));
}

ParseError::ParseError(std::string const& source, std::size_t line, std::string const& message) :
    DataError{fmt::format("{}:{}: {}", source, line, message)}
{
}

MissingProfile::MissingProfile(std::string const& project_id) :
    DataError{fmt::format("no hourly profile for project '{}'", project_id)}
{
}

namespace
{
    std::string_view
    trim(std::string_view s)
    {
        auto const first = s.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos)
            return {};
        auto const last = s.find_last_not_of(" \t\r\n");
        return s.substr(first, last - first + 1);
    }

    std::string
    lower(std::string_view s)
    {
        std::string out{s};
        for (auto& c : out)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    }

    // One CSV record; double-quoted fields may contain commas and "" escapes.
    std::vector<std::string>
    split_csv(std::string_view line)
    {
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i)
        {
            char c = line[i];
            if (quoted)
            {
                if (c == '"')
                {
                    if (i + 1 < line.size() && line[i + 1] == '"')
                    {
                        field.push_back('"');
                        ++i;
                    }
                    else
                    {
                        quoted = false;
                    }
                }
                else
                {
                    field.push_back(c);
                }
            }
            else if (c == '"')
            {
                quoted = true;
            }
            else if (c == ',')
            {
                fields.emplace_back(trim(field));
                field.clear();
            }
            else
            {
                field.push_back(c);
            }
        }
        fields.emplace_back(trim(field));
        return fields;
    }

    // Streams rows of a headed CSV file, resolving required columns by name.
    class CsvReader
    {
      public:
        CsvReader(std::istream& in, std::string source, std::vector<std::string> required) :
            in_{in}, source_{std::move(source)}
        {
            std::string header;
            if (!next_line(header))
                fail("empty file (expected header)");
            auto names = split_csv(header);
            for (auto const& name : required)
            {
                auto it = std::find_if(names.begin(), names.end(), [&](auto const& n) {
                    return lower(n) == name;
                });
                if (it == names.end())
                    fail(fmt::format("missing required column '{}'", name));
                columns_.push_back(static_cast<std::size_t>(it - names.begin()));
            }
            width_ = names.size();
        }

        // Fills `fields` with the required columns in declaration order.
        bool
        next(std::vector<std::string>& fields)
        {
            std::string line;
            while (next_line(line))
            {
                if (trim(line).empty())
                    continue;
                auto all = split_csv(line);
                if (all.size() != width_)
                {
                    fail(fmt::format("expected {} fields, found {}", width_, all.size()));
                }
                fields.clear();
                for (auto c : columns_)
                    fields.push_back(std::move(all[c]));
                return true;
            }
            return false;
        }

        [[noreturn]] void
        fail(std::string const& message) const
        {
            throw ParseError{source_, line_, message};
        }

        [[nodiscard]] std::string const& source() const { return source_; }
        [[nodiscard]] std::size_t line() const { return line_; }

        double
        number(std::string const& text, std::string_view what) const
        {
            double value = 0.0;
            auto const* begin = text.data();
            auto const* end = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (text.empty() || ec != std::errc{} || ptr != end)
                fail(fmt::format("{}: '{}' is not a number", what, text));
            return value;
        }

        // Non-negative finite value; lenient mode replaces bad values with 0.
        double
        energy(std::string const& text, std::string_view what, IngestOptions const& opts, Diagnostics& diag) const
        {
            double value = number(text, what);
            if (std::isfinite(value) && value >= 0.0)
                return value;
            if (opts.strict)
                fail(fmt::format("{}: value {} must be finite and >= 0", what, text));
            diag.warn(fmt::format("{}:{}: {} value {} replaced by 0", source_, line_, what, text));
            return 0.0;
        }

        std::size_t
        index(std::string const& text, std::string_view what) const
        {
            std::size_t value = 0;
            auto const* end = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(text.data(), end, value);
            if (text.empty() || ec != std::errc{} || ptr != end)
                fail(fmt::format("{}: '{}' is not a non-negative integer", what, text));
            return value;
        }

      private:
        bool
        next_line(std::string& line)
        {
            if (!std::getline(in_, line))
                return false;
            ++line_;
            if (line_ == 1 && line.starts_with("\xEF\xBB\xBF"))
                line.erase(0, 3);
            return true;
        }

        std::istream& in_;
        std::string source_;
        std::vector<std::size_t> columns_;
        std::size_t width_ = 0;
        std::size_t line_ = 0;
    };

    std::ifstream
    open_input(std::filesystem::path const& path)
    {
        std::ifstream in{path};
        if (!in)
            throw DataError{fmt::format("cannot open input file '{}'", path.string())};
        return in;
    }

    constexpr std::int64_t MinutesPerHour = 60;

    std::int64_t
    hour_of(Timestamp t)
    {
        // Floor division; timestamps before 1970 stay well-defined.
        auto q = t.minutes / MinutesPerHour;
        if (t.minutes % MinutesPerHour < 0)
            --q;
        return q;
    }
}

////////////////////////////////////////////////////////////
// Time

Timestamp
parse_timestamp(std::string_view text)
{
    auto const s = trim(text);
    int y = 0;
    unsigned mo = 0;
    unsigned d = 0;
    unsigned hh = 0;
    unsigned mm = 0;
    unsigned ss = 0;
    auto bad = [&]() {
        return InvalidValue{fmt::format("invalid timestamp '{}' (expected YYYY-MM-DD HH:MM)", s)};
    };
    // Fixed layout: YYYY-MM-DD?HH:MM[:SS]
    if (s.size() != 16 && s.size() != 19)
        throw bad();
    auto digits = [&](std::size_t pos, std::size_t n, auto& out) {
        auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + n, out);
        if (ec != std::errc{} || ptr != s.data() + pos + n)
            throw bad();
    };
    if (s[4] != '-' || s[7] != '-' || (s[10] != ' ' && s[10] != 'T') || s[13] != ':')
        throw bad();
    digits(0, 4, y);
    digits(5, 2, mo);
    digits(8, 2, d);
    digits(11, 2, hh);
    digits(14, 2, mm);
    if (s.size() == 19)
    {
        if (s[16] != ':')
            throw bad();
        digits(17, 2, ss);
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo}, std::chrono::day{d}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59)
        throw bad();
    if (ss != 0)
        throw InvalidValue{fmt::format("timestamp '{}' is not on a whole minute", s)};
    auto const days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return Timestamp{static_cast<std::int64_t>(days) * 24 * 60 + hh * 60 + mm};
}

std::string
format_timestamp(Timestamp t)
{
    auto const hour = hour_of(t);
    auto day = hour / 24;
    if (hour % 24 < 0)
        --day;
    auto const minute_of_day = t.minutes - day * 24 * 60;
    std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day}}};
    return fmt::format(
        "{:04d}-{:02d}-{:02d} {:02d}:{:02d}",
        static_cast<int>(ymd.year()),
        static_cast<unsigned>(ymd.month()),
        static_cast<unsigned>(ymd.day()),
        minute_of_day / 60,
        minute_of_day % 60
    );
}

////////////////////////////////////////////////////////////
// Project status tokens

std::string
to_string(ProjectStatus status)
{
    switch (status)
    {
        case ProjectStatus::SecurityScreeningComplete:
            return "SecurityScreeningComplete";
        case ProjectStatus::InterconnectStudyComplete:
            return "InterconnectStudyComplete";
        case ProjectStatus::FullInterconnectSurveyInProgress:
            return "FullInterconnectSurveyInProgress";
        case ProjectStatus::InterconnectionAgreementComplete:
            return "InterconnectionAgreementComplete";
    }
    return "Unknown";
}

ProjectStatus
parse_project_status(std::string_view token)
{
    auto const t = lower(trim(token));
    for (auto s :
         {ProjectStatus::SecurityScreeningComplete,
          ProjectStatus::InterconnectStudyComplete,
          ProjectStatus::FullInterconnectSurveyInProgress,
          ProjectStatus::InterconnectionAgreementComplete})
    {
        if (lower(to_string(s)) == t)
            return s;
    }
    throw InvalidValue{fmt::format("unknown project status flag '{}'", token)};
}

////////////////////////////////////////////////////////////
// Readers

std::vector<FuelMixRecord>
read_fuel_mix(std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag)
{
    CsvReader csv{in, source, {"timestamp", "fuel", "mwh"}};
    std::vector<FuelMixRecord> out;
    std::set<std::string> unknown;
    std::vector<std::string> f;
    while (csv.next(f))
    {
        Timestamp timestamp;
        std::optional<FuelType> fuel;
        try
        {
            timestamp = parse_timestamp(f[0]);
            bool recognized = true;
            fuel = FuelType::parse(f[1], &recognized);
            if (!recognized && unknown.insert(fuel->label()).second)
            {
                diag.warn(fmt::format(
                    "{}:{}: fuel '{}' is not in the carbon table; treated as {}",
                    source,
                    csv.line(),
                    f[1],
                    fuel->name()
                ));
            }
        }
        catch (InvalidValue const& e)
        {
            csv.fail(e.what());
        }
        if (*fuel == Storage)
            csv.fail("fuel 'Storage' cannot appear in a fuel mix report");
        if (timestamp.minutes % 15 != 0)
            csv.fail(fmt::format("timestamp '{}' is not on a 15-minute boundary", f[0]));
        auto const energy = csv.energy(f[2], "mwh", opts, diag);
        out.push_back(FuelMixRecord{timestamp, std::move(*fuel), energy});
    }
    return out;
}

HourlySeries
read_load(std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag)
{
    CsvReader csv{in, source, {"hour_index", "mwh"}};
    std::vector<Mwh> values;
    std::vector<std::string> f;
    while (csv.next(f))
    {
        auto const hour = csv.index(f[0], "hour_index");
        if (hour != values.size())
        {
            csv.fail(fmt::format("hour_index {} out of sequence (expected {})", hour, values.size()));
        }
        values.push_back(csv.energy(f[1], "mwh", opts, diag));
    }
    return HourlySeries{std::move(values), "load"};
}

std::vector<ProjectRecord>
read_projects(std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag)
{
    CsvReader csv{in, source, {"project_id", "fuel", "capacity_mw", "county", "flags"}};
    std::vector<ProjectRecord> out;
    std::set<std::string> seen;
    std::vector<std::string> f;
    while (csv.next(f))
    {
        ProjectRecord p;
        p.project_id = f[0];
        if (p.project_id.empty())
            csv.fail("empty project_id");
        if (!seen.insert(p.project_id).second)
            csv.fail(fmt::format("duplicate project_id '{}'", p.project_id));
        try
        {
            p.fuel = FuelType::parse(f[1]);
        }
        catch (InvalidValue const& e)
        {
            csv.fail(e.what());
        }
        if (p.fuel != Wind && p.fuel != Photovoltaic)
            csv.fail(fmt::format("project fuel must be Wind or Photovoltaic (got '{}')", f[1]));
        p.capacity_mw = csv.number(f[2], "capacity_mw");
        if (!std::isfinite(p.capacity_mw) || p.capacity_mw <= 0.0)
        {
            if (opts.strict)
                csv.fail(fmt::format("capacity_mw must be > 0 (got {})", f[2]));
            diag.warn(fmt::format(
                "{}:{}: project '{}' skipped: capacity_mw {} is not positive", source, csv.line(), p.project_id, f[2]
            ));
            continue;
        }
        p.county = f[3];
        std::string_view flags = f[4];
        while (!flags.empty())
        {
            auto const bar = flags.find('|');
            auto token = trim(flags.substr(0, bar));
            flags = bar == std::string_view::npos ? std::string_view{} : flags.substr(bar + 1);
            if (token.empty())
                continue;
            try
            {
                p.status_flags.insert(parse_project_status(token));
            }
            catch (InvalidValue const& e)
            {
                csv.fail(e.what());
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

ProfileMap
read_profiles(std::istream& in, std::string const& source, IngestOptions const& opts, Diagnostics& diag)
{
    CsvReader csv{in, source, {"project_id", "hour_index", "capacity_factor"}};
    std::map<std::string, std::vector<double>> rows;
    std::vector<std::string> f;
    while (csv.next(f))
    {
        if (f[0].empty())
            csv.fail("empty project_id");
        auto& values = rows[f[0]];
        auto const hour = csv.index(f[1], "hour_index");
        if (hour != values.size())
        {
            csv.fail(fmt::format(
                "project '{}': hour_index {} out of sequence (expected {})", f[0], hour, values.size()
            ));
        }
        double cf = csv.number(f[2], "capacity_factor");
        if (!std::isfinite(cf) || cf < 0.0 || cf > 1.0)
        {
            if (opts.strict)
                csv.fail(fmt::format("capacity_factor {} outside [0, 1]", f[2]));
            double const repaired = std::isfinite(cf) ? std::clamp(cf, 0.0, 1.0) : 0.0;
            diag.warn(fmt::format(
                "{}:{}: capacity_factor {} clamped to {}", source, csv.line(), f[2], repaired
            ));
            cf = repaired;
        }
        values.push_back(cf);
    }
    ProfileMap out;
    for (auto& [id, values] : rows)
    {
        out.emplace(id, ProjectProfile{id, HourlySeries{std::move(values), id}});
    }
    return out;
}

std::vector<FuelMixRecord>
read_fuel_mix_file(std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag)
{
    auto in = open_input(path);
    return read_fuel_mix(in, path.string(), opts, diag);
}

HourlySeries
read_load_file(std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag)
{
    auto in = open_input(path);
    return read_load(in, path.string(), opts, diag);
}

std::vector<ProjectRecord>
read_projects_file(std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag)
{
    auto in = open_input(path);
    return read_projects(in, path.string(), opts, diag);
}

ProfileMap
read_profiles_file(std::filesystem::path const& path, IngestOptions const& opts, Diagnostics& diag)
{
    auto in = open_input(path);
    return read_profiles(in, path.string(), opts, diag);
}

////////////////////////////////////////////////////////////
// Transformations

HourlySeries
average_to_hourly(std::span<FuelMixRecord const> records, IngestOptions const& opts, Diagnostics& diag)
{
    std::string const label = records.empty() ? std::string{} : records.front().fuel.name();
    std::vector<Mwh> hourly;
    std::size_t i = 0;
    while (i < records.size())
    {
        auto const hour = hour_of(records[i].timestamp);
        auto const expected_hour = hour_of(records.front().timestamp) + static_cast<std::int64_t>(hourly.size());
        Timestamp const hour_start{hour * MinutesPerHour};
        if (hour != expected_hour)
        {
            throw IncompleteHour{fmt::format(
                "fuel '{}': incomplete hour starting {}: no records",
                label,
                format_timestamp(Timestamp{expected_hour * MinutesPerHour})
            )};
        }
        Mwh sum = 0.0;
        std::size_t count = 0;
        for (; i < records.size() && hour_of(records[i].timestamp) == hour; ++i)
        {
            if (records[i].fuel != records.front().fuel)
                throw DataError{"average_to_hourly: records mix several fuels"};
            if (count > 0 && !(records[i - 1].timestamp < records[i].timestamp))
            {
                throw DataError{fmt::format(
                    "fuel '{}': timestamps not strictly increasing at {}",
                    label,
                    format_timestamp(records[i].timestamp)
                )};
            }
            sum += records[i].energy;
            ++count;
        }
        if (count != 4)
        {
            if (opts.strict)
            {
                throw IncompleteHour{fmt::format(
                    "fuel '{}': incomplete hour starting {}: {} 15-minute records, expected 4",
                    label,
                    format_timestamp(hour_start),
                    count
                )};
            }
            diag.warn(fmt::format(
                "fuel '{}': hour starting {} has {} 15-minute records; averaged what is present",
                label,
                format_timestamp(hour_start),
                count
            ));
        }
        hourly.push_back(sum / static_cast<double>(count));
    }
    return HourlySeries{std::move(hourly), label};
}

FuelMap<HourlySeries>
fuel_mix_to_hourly(std::span<FuelMixRecord const> records, IngestOptions const& opts, Diagnostics& diag)
{
    FuelMap<std::vector<FuelMixRecord>> by_fuel;
    for (auto const& r : records)
        by_fuel[r.fuel].push_back(r);

    FuelMap<HourlySeries> out;
    std::optional<std::int64_t> start;
    for (auto& [fuel, recs] : by_fuel)
    {
        auto const first_hour = hour_of(recs.front().timestamp);
        auto series = average_to_hourly(recs, opts, diag);
        if (!out.empty())
        {
            auto const& ref = out.begin()->second;
            if (first_hour != *start || series.size() != ref.size())
            {
                throw LengthMismatch{fmt::format(
                    "fuel '{}' covers {} hours from {}, but '{}' covers {} hours from {}",
                    fuel.name(),
                    series.size(),
                    format_timestamp(Timestamp{first_hour * MinutesPerHour}),
                    out.begin()->first.name(),
                    ref.size(),
                    format_timestamp(Timestamp{*start * MinutesPerHour})
                )};
            }
        }
        start = first_hour;
        out.emplace(fuel, std::move(series));
    }
    return out;
}

std::vector<ProjectRecord>
filter_gis_projects(std::span<ProjectRecord const> projects)
{
    std::vector<ProjectRecord> out;
    for (auto const& p : projects)
    {
        bool const screened = p.has(ProjectStatus::SecurityScreeningComplete);
        bool const studied = p.has(ProjectStatus::InterconnectStudyComplete);
        bool const agreed = p.has(ProjectStatus::FullInterconnectSurveyInProgress)
            && p.has(ProjectStatus::InterconnectionAgreementComplete);
        if (screened && (studied || agreed))
            out.push_back(p);
    }
    return out;
}

FuelMap<HourlySeries>
build_future_renewables(std::span<ProjectRecord const> projects, ProfileMap const& profiles)
{
    FuelMap<std::vector<Mwh>> sums;
    std::optional<std::size_t> hours;
    for (auto const& p : projects)
    {
        auto it = profiles.find(p.project_id);
        if (it == profiles.end())
            throw MissingProfile{p.project_id};
        auto const& cf = it->second.normalized_output;
        if (!hours)
            hours = cf.size();
        else if (cf.size() != *hours)
        {
            throw LengthMismatch{fmt::format(
                "profile for project '{}' has {} hours, expected {}", p.project_id, cf.size(), *hours
            )};
        }
        auto& acc = sums[p.fuel];
        acc.resize(*hours, 0.0);
        for (std::size_t h = 0; h < *hours; ++h)
            acc[h] += p.capacity_mw * cf[h];
    }
    FuelMap<HourlySeries> out;
    for (auto& [fuel, values] : sums)
        out.emplace(fuel, HourlySeries{std::move(values), fuel.name()});
    return out;
}

Fleet
build_fleet(FuelMap<HourlySeries> const& baseline_mix, FuelMap<HourlySeries> const& future_renewables)
{
    auto availability = baseline_mix;
    for (auto const& [fuel, added] : future_renewables)
    {
        if (fuel != Wind && fuel != Photovoltaic)
        {
            throw InvalidValue{fmt::format("future additions must be Wind or Photovoltaic (got '{}')", fuel.name())};
        }
        auto it = availability.find(fuel);
        if (it == availability.end())
        {
            availability.emplace(fuel, added);
            continue;
        }
        auto const& base = it->second;
        if (base.size() != added.size())
        {
            throw LengthMismatch{fmt::format(
                "future '{}' series has {} hours, baseline has {}", fuel.name(), added.size(), base.size()
            )};
        }
        std::vector<Mwh> total(base.size());
        for (std::size_t h = 0; h < base.size(); ++h)
            total[h] = base[h] + added[h];
        it->second = HourlySeries{std::move(total), fuel.name()};
    }
    // Fleet checks that every series shares one length.
    return Fleet::with_default_curtailment(std::move(availability));
}

} // namespace gridmix
