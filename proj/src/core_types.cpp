#include "gridmix/core_types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <unordered_map>

namespace gridmix
{

MissingIntensity::MissingIntensity(std::string const& fuel) :
    DataError{fmt::format("no carbon intensity for fuel '{}'", fuel)}
{
}

namespace
{
    std::string
    lower(std::string_view s)
    {
        std::string out;
        out.reserve(s.size());
        for (char c : s)
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        return out;
    }

    std::string_view
    trim(std::string_view s)
    {
        auto const first = s.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos)
            return {};
        auto const last = s.find_last_not_of(" \t\r\n");
        return s.substr(first, last - first + 1);
    }

    // Lower-case with separators removed: "Gas-CC" -> "gascc".
    std::string
    squash(std::string_view s)
    {
        std::string out;
        for (char c : s)
        {
            if (c == ' ' || c == '-' || c == '_' || c == '.')
                continue;
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        return out;
    }
}

FuelType::FuelType(FuelKind kind) : kind_{kind}
{
    if (kind == FuelKind::Other)
        throw InvalidValue{"fuel 'Other' requires a label"};
}

FuelType
FuelType::other(std::string_view label)
{
    auto trimmed = trim(label);
    if (trimmed.empty())
        throw InvalidValue{"fuel 'Other' requires a non-empty label"};
    FuelType f{FuelKind::Biomass};
    f.kind_ = FuelKind::Other;
    f.label_ = lower(trimmed);
    return f;
}

FuelType
FuelType::parse(std::string_view text, bool* recognized)
{
    static std::unordered_map<std::string, FuelKind> const aliases{
        {"biomass", FuelKind::Biomass},
        {"coal", FuelKind::Coal},
        {"naturalgasturbine", FuelKind::NaturalGasTurbine},
        {"gasturbine", FuelKind::NaturalGasTurbine},
        {"ngct", FuelKind::NaturalGasTurbine},
        {"ngt", FuelKind::NaturalGasTurbine},
        {"gas", FuelKind::NaturalGasTurbine},
        {"naturalgascombinedcycle", FuelKind::NaturalGasCombinedCycle},
        {"ngcc", FuelKind::NaturalGasCombinedCycle},
        {"gascc", FuelKind::NaturalGasCombinedCycle},
        {"hydroelectric", FuelKind::Hydroelectric},
        {"hydro", FuelKind::Hydroelectric},
        {"nuclear", FuelKind::Nuclear},
        {"photovoltaic", FuelKind::Photovoltaic},
        {"pv", FuelKind::Photovoltaic},
        {"solar", FuelKind::Photovoltaic},
        {"wind", FuelKind::Wind},
        {"storage", FuelKind::Storage},
    };
    auto const trimmed = trim(text);
    if (recognized)
        *recognized = true;
    if (auto it = aliases.find(squash(trimmed)); it != aliases.end())
        return FuelType{it->second};

    // Round-trip of name() for Other fuels.
    auto const lowered = lower(trimmed);
    if (lowered.starts_with("other(") && lowered.ends_with(')') && lowered.size() > 7)
        return other(trimmed.substr(6, trimmed.size() - 7));

    if (recognized)
        *recognized = false;
    if (trimmed.empty())
        throw InvalidValue{"empty fuel name"};
    return other(trimmed);
}

std::string
FuelType::name() const
{
    switch (kind_)
    {
        case FuelKind::Biomass:
            return "Biomass";
        case FuelKind::Coal:
            return "Coal";
        case FuelKind::NaturalGasTurbine:
            return "NaturalGasTurbine";
        case FuelKind::NaturalGasCombinedCycle:
            return "NaturalGasCombinedCycle";
        case FuelKind::Hydroelectric:
            return "Hydroelectric";
        case FuelKind::Nuclear:
            return "Nuclear";
        case FuelKind::Photovoltaic:
            return "Photovoltaic";
        case FuelKind::Wind:
            return "Wind";
        case FuelKind::Storage:
            return "Storage";
        case FuelKind::Other:
            return "Other(" + label_ + ")";
    }
    return "Unknown";
}

bool
FuelType::is_fossil() const noexcept
{
    return kind_ == FuelKind::Coal || kind_ == FuelKind::NaturalGasTurbine
        || kind_ == FuelKind::NaturalGasCombinedCycle;
}

////////////////////////////////////////////////////////////
// CarbonTable

CarbonTable
CarbonTable::defaults()
{
    CarbonTable t;
    t.set(Biomass, 0.28);
    t.set(Coal, 0.92);
    t.set(NaturalGasTurbine, 0.55);
    t.set(NaturalGasCombinedCycle, 0.44);
    t.set(Hydroelectric, 0.024);
    t.set(Nuclear, 0.012);
    t.set(Photovoltaic, 0.026);
    t.set(Wind, 0.011);
    return t;
}

void
CarbonTable::set(FuelType const& fuel, KgPerKwh intensity)
{
    if (!std::isfinite(intensity) || intensity < 0.0)
    {
        throw InvalidValue{fmt::format(
            "carbon intensity for '{}' must be finite and >= 0 (got {})", fuel.name(), intensity
        )};
    }
    entries_[fuel] = intensity;
}

KgPerKwh
CarbonTable::at(FuelType const& fuel) const
{
    auto it = entries_.find(fuel);
    if (it == entries_.end())
        throw MissingIntensity{fuel.name()};
    return it->second;
}

bool
CarbonTable::contains(FuelType const& fuel) const
{
    return entries_.contains(fuel);
}

CarbonTable
CarbonTable::scaled(double factor) const
{
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw InvalidValue{"carbon table scale factor must be positive"};
    CarbonTable out;
    for (auto const& [fuel, value] : entries_)
        out.set(fuel, value * factor);
    return out;
}

////////////////////////////////////////////////////////////
// HourlySeries

HourlySeries::HourlySeries(std::vector<Mwh> values, std::string label) :
    values_{std::move(values)}, label_{std::move(label)}
{
    for (std::size_t h = 0; h < values_.size(); ++h)
    {
        if (!std::isfinite(values_[h]) || values_[h] < 0.0)
        {
            throw InvalidValue{fmt::format(
                "series '{}' hour {}: value must be finite and >= 0 (got {})", label_, h, values_[h]
            )};
        }
    }
}

HourlySeries
HourlySeries::zeros(std::size_t hours, std::string label)
{
    return HourlySeries{std::vector<Mwh>(hours, 0.0), std::move(label)};
}

Mwh
HourlySeries::total() const noexcept
{
    Mwh sum = 0.0;
    for (auto v : values_)
        sum += v;
    return sum;
}

bool
HourlySeries::is_calendar_year() const noexcept
{
    return values_.size() == HoursPerYear || values_.size() == HoursPerLeapYear;
}

////////////////////////////////////////////////////////////
// Fleet

Fleet::Fleet(FuelMap<HourlySeries> availability, FuelSet curtailable) :
    availability_{std::move(availability)}, curtailable_{std::move(curtailable)}
{
    bool first = true;
    for (auto const& [fuel, series] : availability_)
    {
        if (first)
        {
            hours_ = series.size();
            first = false;
        }
        else if (series.size() != hours_)
        {
            throw LengthMismatch{fmt::format(
                "fleet availability for '{}' has {} hours, expected {}", fuel.name(), series.size(), hours_
            )};
        }
    }
    for (auto const& fuel : curtailable_)
    {
        if (!availability_.contains(fuel))
            throw InvalidValue{fmt::format("curtailable fuel '{}' has no availability", fuel.name())};
    }
}

Fleet
Fleet::with_default_curtailment(FuelMap<HourlySeries> availability)
{
    FuelSet curtailable;
    for (auto const& fuel : {Wind, Photovoltaic})
    {
        if (availability.contains(fuel))
            curtailable.insert(fuel);
    }
    return Fleet{std::move(availability), std::move(curtailable)};
}

FuelSet
Fleet::fuels() const
{
    FuelSet out;
    for (auto const& [fuel, _] : availability_)
        out.insert(fuel);
    return out;
}

FuelMap<Mwh>
Fleet::caps_at(std::size_t hour) const
{
    FuelMap<Mwh> caps;
    for (auto const& [fuel, series] : availability_)
        caps.emplace(fuel, series[hour]);
    return caps;
}

////////////////////////////////////////////////////////////
// Operations

std::vector<FuelType>
merit_order(CarbonTable const& table, FuelSet const& fuels)
{
    std::vector<std::pair<KgPerKwh, FuelType>> keyed;
    keyed.reserve(fuels.size());
    for (auto const& fuel : fuels)
        keyed.emplace_back(table.at(fuel), fuel);
    // FuelSet iterates in enumeration order, so a stable sort on intensity
    // alone leaves ties in that order.
    std::stable_sort(keyed.begin(), keyed.end(), [](auto const& a, auto const& b) {
        return a.first < b.first;
    });
    std::vector<FuelType> order;
    order.reserve(keyed.size());
    for (auto& [_, fuel] : keyed)
        order.push_back(std::move(fuel));
    return order;
}

KgCo2
emissions_of(FuelMap<Mwh> const& dispatch, CarbonTable const& table)
{
    KgCo2 total = 0.0;
    for (auto const& [fuel, mwh] : dispatch)
    {
        auto const intensity = table.at(fuel);
        total += mwh * 1000.0 * intensity;
    }
    return total;
}

} // namespace gridmix
