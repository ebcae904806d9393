#include "gridmix/config.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace gridmix;

namespace
{

RunConfig
parse(std::string const& text)
{
    return parse_config(Json::parse(text), "/base");
}

} // namespace

TEST(Config, DeskConfigLoads)
{
    auto cfg = load_config(test::desk_dir() / "scenarios.json");
    ASSERT_EQ(cfg.scenarios.size(), 5u);
    EXPECT_EQ(cfg.reference, 0u);
    EXPECT_EQ(cfg.strict, std::optional<bool>{true});
    EXPECT_EQ(cfg.scenarios[0].mode, ScenarioMode::Accounting);
    EXPECT_EQ(cfg.scenarios[1].load_source, test::desk_dir() / "load.csv");
    EXPECT_TRUE(std::holds_alternative<SizedStorage>(cfg.scenarios[3].storage));
    auto const& spec = std::get<StorageSpec>(cfg.scenarios[4].storage);
    EXPECT_EQ(spec.energy_capacity, 300.0);
    EXPECT_EQ(spec.round_trip_efficiency, 0.81);
    EXPECT_EQ(spec.discharge_intensity, DischargeIntensity::ChargedAverage);
}

TEST(Config, ResolvesPathsAndOverrides)
{
    auto cfg = parse(R"({
        "carbon_intensity": {"Coal": 1.0},
        "other_intensity": 0.3,
        "reference": "b",
        "scenarios": [
          {"name": "a", "load": "l.csv", "fuel_mix": "/abs/m.csv",
           "carbon_intensity": {"Gas": 0.6},
           "storage": {"energy_capacity_mwh": "unbounded", "discharge_power_mw": 5}},
          {"name": "b", "load": "l.csv", "fuel_mix": "m.csv", "capacity_multiplier": 2}
        ]})");
    EXPECT_EQ(cfg.reference, 1u);
    auto const& a = cfg.scenarios[0];
    EXPECT_EQ(a.load_source, std::filesystem::path{"/base/l.csv"});
    EXPECT_EQ(a.baseline_mix_source, std::filesystem::path{"/abs/m.csv"});
    EXPECT_EQ(a.carbon_overrides.at(Coal), 1.0);
    EXPECT_EQ(a.carbon_overrides.at(NaturalGasTurbine), 0.6);
    EXPECT_EQ(a.other_intensity, std::optional<double>{0.3});
    auto const& spec = std::get<StorageSpec>(a.storage);
    EXPECT_TRUE(std::isinf(spec.energy_capacity));
    EXPECT_EQ(spec.discharge_power, 5.0);
    EXPECT_FALSE(cfg.scenarios[1].carbon_overrides.contains(NaturalGasTurbine));
    EXPECT_EQ(cfg.scenarios[1].capacity_multiplier, 2.0);
}

TEST(Config, Rejections)
{
    auto rejects = [](std::string const& text, std::string const& needle) {
        try
        {
            (void)parse(text);
            ADD_FAILURE() << "accepted: " << text;
        }
        catch (ConfigError const& e)
        {
            EXPECT_NE(std::string{e.what()}.find(needle), std::string::npos) << e.what();
        }
    };
    rejects(R"([])", "object");
    rejects(R"({"scenarios": []})", "scenarios");
    rejects(R"({"scenarios": [{"name": "a", "fuel_mix": "m", "load": "l"}], "colour": 1})", "colour");
    rejects(R"({"scenarios": [{"name": "a", "fuel_mix": "m", "lod": "l"}]})", "lod");
    rejects(R"({"scenarios": [{"name": "a/b", "fuel_mix": "m", "load": "l"}]})", "a/b");
    rejects(R"({"scenarios": [{"name": "a", "fuel_mix": "m", "load": "l"}, {"name": "a", "fuel_mix": "m", "load": "l"}]})", "duplicate");
    rejects(R"({"scenarios": [{"name": "a", "fuel_mix": "m", "load": "l", "projects": "p"}]})", "together");
    rejects(R"({"scenarios": [{"name": "a", "fuel_mix": "m", "load": "l", "storage": "big"}]})", "storage");
    rejects(R"({"scenarios": [{"name": "a", "fuel_mix": "m", "load": "l", "storage": {"round_trip_efficiency": 2}}]})", "efficiency");
    rejects(R"({"scenarios": [{"name": "a", "fuel_mix": "m", "load": "l", "storage": {"discharge_intensity": "avg"}}]})", "avg");
    rejects(R"({"scenarios": [{"name": "a", "mode": "accounting", "fuel_mix": "m", "load": "l"}]})", "load");
    rejects(R"({"scenarios": [{"name": "a", "mode": "accounting", "fuel_mix": "m", "storage": "sized"}]})", "accounting");
    rejects(R"({"scenarios": [{"name": "a", "mode": "replay", "fuel_mix": "m"}]})", "replay");
    rejects(R"({"reference": "zz", "scenarios": [{"name": "a", "fuel_mix": "m", "load": "l"}]})", "zz");
    rejects(R"({"carbon_intensity": {"Coal": -1}, "scenarios": [{"name": "a", "fuel_mix": "m", "load": "l"}]})", "Coal");
    rejects(R"({"scenarios": [{"name": 3, "fuel_mix": "m", "load": "l"}]})", "name");
}

TEST(Config, FileErrors)
{
    EXPECT_THROW((void)load_config("/no/such/config.json"), ConfigError);
    test::TempDir dir;
    test::write_file(dir / "c.json", "{ not json");
    EXPECT_THROW((void)load_config(dir / "c.json"), ConfigError);
}
