#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridmix
{

// Energy is carried in MWh (one hour at the average MW level), mass in kg CO2.
// Carbon intensities stay in kg CO2 per kWh as published.
using Mwh = double;
using KgCo2 = double;
using KgPerKwh = double;

////////////////////////////////////////////////////////////
// Errors

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Input problems discovered while reading or combining data files.
class DataError : public Error
{
  public:
    using Error::Error;
};

// Problems with the run configuration itself.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

class MissingIntensity : public DataError
{
  public:
    explicit MissingIntensity(std::string const& fuel);
};

class LengthMismatch : public DataError
{
  public:
    using DataError::DataError;
};

class InvalidValue : public DataError
{
  public:
    using DataError::DataError;
};

////////////////////////////////////////////////////////////
// FuelType

// Declaration order is the merit-order tie-break order.
enum class FuelKind
{
    Biomass,
    Coal,
    NaturalGasTurbine,
    NaturalGasCombinedCycle,
    Hydroelectric,
    Nuclear,
    Photovoltaic,
    Wind,
    Storage,
    Other,
};

class FuelType
{
  public:
    // Other requires a label; use FuelType::other.
    FuelType(FuelKind kind);

    // Labels are lower-cased; an empty label is rejected.
    static FuelType other(std::string_view label);

    // Accepts canonical names and the common fuel-mix spellings
    // (Solar, Gas, Gas-CC, Hydro, ...). Anything unrecognized becomes
    // Other(label) and `recognized` is set to false when provided.
    static FuelType parse(std::string_view text, bool* recognized = nullptr);

    [[nodiscard]] FuelKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::string const& label() const noexcept { return label_; }
    [[nodiscard]] std::string name() const;
    [[nodiscard]] bool is_fossil() const noexcept;

    friend bool operator==(FuelType const&, FuelType const&) = default;
    friend std::strong_ordering operator<=>(FuelType const& a, FuelType const& b)
    {
        if (auto c = a.kind_ <=> b.kind_; c != 0)
            return c;
        return a.label_.compare(b.label_) <=> 0;
    }

  private:
    FuelKind kind_;
    std::string label_;
};

inline const FuelType Biomass{FuelKind::Biomass};
inline const FuelType Coal{FuelKind::Coal};
inline const FuelType NaturalGasTurbine{FuelKind::NaturalGasTurbine};
inline const FuelType NaturalGasCombinedCycle{FuelKind::NaturalGasCombinedCycle};
inline const FuelType Hydroelectric{FuelKind::Hydroelectric};
inline const FuelType Nuclear{FuelKind::Nuclear};
inline const FuelType Photovoltaic{FuelKind::Photovoltaic};
inline const FuelType Wind{FuelKind::Wind};
inline const FuelType Storage{FuelKind::Storage};

using FuelSet = std::set<FuelType>;
template <typename T>
using FuelMap = std::map<FuelType, T>;

////////////////////////////////////////////////////////////
// CarbonTable

class CarbonTable
{
  public:
    CarbonTable() = default;

    // Life-cycle intensities of the reference fuel list.
    static CarbonTable defaults();

    // Throws InvalidValue on negative or non-finite input.
    void set(FuelType const& fuel, KgPerKwh intensity);
    [[nodiscard]] KgPerKwh at(FuelType const& fuel) const;
    [[nodiscard]] bool contains(FuelType const& fuel) const;
    [[nodiscard]] FuelMap<KgPerKwh> const& entries() const noexcept { return entries_; }

    // Copy with every intensity multiplied by `factor` (> 0).
    [[nodiscard]] CarbonTable scaled(double factor) const;

    friend bool operator==(CarbonTable const&, CarbonTable const&) = default;

  private:
    FuelMap<KgPerKwh> entries_;
};

////////////////////////////////////////////////////////////
// HourlySeries

inline constexpr std::size_t HoursPerYear = 8760;
inline constexpr std::size_t HoursPerLeapYear = 8784;

class HourlySeries
{
  public:
    HourlySeries() = default;
    // Values must be finite and non-negative.
    explicit HourlySeries(std::vector<Mwh> values, std::string label = {});

    static HourlySeries zeros(std::size_t hours, std::string label = {});

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] Mwh operator[](std::size_t hour) const { return values_[hour]; }
    [[nodiscard]] std::vector<Mwh> const& values() const noexcept { return values_; }
    [[nodiscard]] std::string const& label() const noexcept { return label_; }
    [[nodiscard]] Mwh total() const noexcept;
    // 8760 or 8784 hours.
    [[nodiscard]] bool is_calendar_year() const noexcept;

    friend bool operator==(HourlySeries const&, HourlySeries const&) = default;

  private:
    std::vector<Mwh> values_;
    std::string label_;
};

////////////////////////////////////////////////////////////
// Fleet

class Fleet
{
  public:
    Fleet() = default;
    // Throws LengthMismatch if series lengths differ and InvalidValue if a
    // curtailable fuel has no availability series.
    Fleet(FuelMap<HourlySeries> availability, FuelSet curtailable);

    // Curtailable set defaults to wind and solar (those present).
    static Fleet with_default_curtailment(FuelMap<HourlySeries> availability);

    [[nodiscard]] FuelMap<HourlySeries> const& availability() const noexcept { return availability_; }
    [[nodiscard]] FuelSet const& curtailable() const noexcept { return curtailable_; }
    [[nodiscard]] FuelSet fuels() const;
    [[nodiscard]] std::size_t hours() const noexcept { return hours_; }
    [[nodiscard]] FuelMap<Mwh> caps_at(std::size_t hour) const;

  private:
    FuelMap<HourlySeries> availability_;
    FuelSet curtailable_;
    std::size_t hours_ = 0;
};

////////////////////////////////////////////////////////////
// Operations

// Ascending by intensity, ties broken by FuelType ordering.
// Throws MissingIntensity.
std::vector<FuelType> merit_order(CarbonTable const& table, FuelSet const& fuels);

// Sum of dispatch (MWh) x 1000 x intensity (kg/kWh).
// Throws MissingIntensity.
KgCo2 emissions_of(FuelMap<Mwh> const& dispatch, CarbonTable const& table);

} // namespace gridmix
