#pragma once

// Independent reference computations. None of these call into the dispatch
// or storage code they are used to check.

#include "gridmix/core_types.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace gridmix::oracle
{

// Integer single-hour instance: intensities in kg CO2 per MWh so that every
// emission total is an exact integer.
struct IntInstance
{
    std::vector<std::int64_t> caps;
    std::vector<std::int64_t> kg_per_mwh;
    std::int64_t load = 0;
};

// Minimum emissions over every integer dispatch 0 <= d_i <= cap_i serving
// min(load, sum caps). Exhaustive: prod(cap_i + 1) candidates.
inline std::int64_t
min_emissions_brute_force(IntInstance const& inst)
{
    std::int64_t total_cap = 0;
    for (auto c : inst.caps)
        total_cap += c;
    auto const served = std::min(inst.load, total_cap);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> d(inst.caps.size(), 0);
    std::function<void(std::size_t, std::int64_t, std::int64_t)> walk =
        [&](std::size_t i, std::int64_t energy, std::int64_t kg) {
            if (i == inst.caps.size())
            {
                if (energy == served)
                    best = std::min(best, kg);
                return;
            }
            for (std::int64_t x = 0; x <= inst.caps[i] && energy + x <= served; ++x)
                walk(i + 1, energy + x, kg + x * inst.kg_per_mwh[i]);
        };
    walk(0, 0, 0);
    return best;
}

// Same search over a real-valued hour discretised in `step` MWh; used for
// small hand examples.
inline double
min_emissions_grid(
    std::vector<double> const& caps, std::vector<double> const& kg_per_mwh, double load, double step
)
{
    double total_cap = 0.0;
    for (auto c : caps)
        total_cap += c;
    double const served = std::min(load, total_cap);
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, double, double)> walk = [&](std::size_t i, double energy, double kg) {
        if (i == caps.size())
        {
            if (std::abs(energy - served) < 1e-9)
                best = std::min(best, kg);
            return;
        }
        for (double x = 0.0; x <= caps[i] + 1e-12 && energy + x <= served + 1e-12; x += step)
            walk(i + 1, energy + x, kg + x * kg_per_mwh[i]);
    };
    walk(0, 0.0, 0.0);
    return best;
}

// Among all permutations of `fuels` whose intensities are non-decreasing,
// the lexicographically first by fuel enumeration order.
inline std::vector<FuelType>
first_sorted_permutation(std::vector<FuelType> fuels, CarbonTable const& table)
{
    std::sort(fuels.begin(), fuels.end());
    std::optional<std::vector<FuelType>> chosen;
    do
    {
        bool sorted = true;
        for (std::size_t i = 1; i < fuels.size(); ++i)
            sorted = sorted && table.at(fuels[i - 1]) <= table.at(fuels[i]);
        if (sorted && (!chosen || fuels < *chosen))
            chosen = fuels;
    } while (std::next_permutation(fuels.begin(), fuels.end()));
    return chosen.value_or(std::vector<FuelType>{});
}

// Reshape a flat 15-minute sequence to (n, 4) and mean each row.
inline std::vector<double>
reshape_and_mean(std::vector<double> const& quarters)
{
    std::vector<double> out(quarters.size() / 4);
    for (std::size_t r = 0; r < out.size(); ++r)
    {
        double row = 0.0;
        for (std::size_t c = 0; c < 4; ++c)
            row += quarters[4 * r + c];
        out[r] = row / 4.0;
    }
    return out;
}

} // namespace gridmix::oracle
