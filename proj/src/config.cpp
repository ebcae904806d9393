#include "gridmix/config.hpp"

#include <fmt/format.h>
#include <fstream>
#include <set>

namespace gridmix
{

namespace
{
    void
    reject_unknown_keys(Json const& j, std::set<std::string> const& allowed, std::string const& where)
    {
        for (auto const& [key, _] : j.items())
        {
            if (!allowed.contains(key))
                throw ConfigError{fmt::format("{}: unknown key '{}'", where, key)};
        }
    }

    template <typename T>
    T
    get_as(Json const& j, std::string const& key, std::string const& where)
    {
        try
        {
            return j.at(key).get<T>();
        }
        catch (Json::exception const&)
        {
            throw ConfigError{fmt::format("{}: '{}' is missing or has the wrong type", where, key)};
        }
    }

    double
    get_limit(Json const& j, std::string const& key, std::string const& where)
    {
        auto const& v = j.at(key);
        if (v.is_string() && v.get<std::string>() == "unbounded")
            return Unbounded;
        if (!v.is_number())
            throw ConfigError{fmt::format("{}: '{}' must be a number or \"unbounded\"", where, key)};
        return v.get<double>();
    }

    FuelMap<KgPerKwh>
    parse_intensities(Json const& j, std::string const& where)
    {
        if (!j.is_object())
            throw ConfigError{fmt::format("{}: 'carbon_intensity' must be an object", where)};
        FuelMap<KgPerKwh> out;
        for (auto const& [name, v] : j.items())
        {
            if (!v.is_number() || !(v.get<double>() >= 0.0))
                throw ConfigError{fmt::format("{}: intensity for '{}' must be a number >= 0", where, name)};
            try
            {
                auto const fuel = FuelType::parse(name);
                if (fuel == Storage)
                    throw ConfigError{fmt::format("{}: storage intensity is set by 'discharge_intensity'", where)};
                out[fuel] = v.get<double>();
            }
            catch (InvalidValue const& e)
            {
                throw ConfigError{fmt::format("{}: {}", where, e.what())};
            }
        }
        return out;
    }

    StorageSpec
    parse_storage(Json const& j, std::string const& where)
    {
        reject_unknown_keys(
            j,
            {"energy_capacity_mwh",
             "charge_power_mw",
             "discharge_power_mw",
             "round_trip_efficiency",
             "initial_soc_mwh",
             "discharge_intensity"},
            where
        );
        StorageSpec spec;
        if (j.contains("energy_capacity_mwh"))
            spec.energy_capacity = get_limit(j, "energy_capacity_mwh", where);
        if (j.contains("charge_power_mw"))
            spec.charge_power = get_limit(j, "charge_power_mw", where);
        if (j.contains("discharge_power_mw"))
            spec.discharge_power = get_limit(j, "discharge_power_mw", where);
        if (j.contains("round_trip_efficiency"))
            spec.round_trip_efficiency = get_as<double>(j, "round_trip_efficiency", where);
        if (j.contains("initial_soc_mwh"))
            spec.initial_soc = get_as<double>(j, "initial_soc_mwh", where);
        if (j.contains("discharge_intensity"))
        {
            auto const mode = get_as<std::string>(j, "discharge_intensity", where);
            if (mode == "zero")
                spec.discharge_intensity = DischargeIntensity::Zero;
            else if (mode == "charged_average")
                spec.discharge_intensity = DischargeIntensity::ChargedAverage;
            else
                throw ConfigError{fmt::format("{}: unknown discharge_intensity '{}'", where, mode)};
        }
        try
        {
            spec.validate();
        }
        catch (InvalidSpec const& e)
        {
            throw ConfigError{fmt::format("{}: {}", where, e.what())};
        }
        return spec;
    }

    bool
    safe_name(std::string const& name)
    {
        if (name.empty() || name == "." || name == "..")
            return false;
        for (char c : name)
        {
            bool const ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
            if (!ok)
                return false;
        }
        return true;
    }
}

RunConfig
parse_config(Json const& j, std::filesystem::path const& base_dir)
{
    if (!j.is_object())
        throw ConfigError{"config: top level must be an object"};
    reject_unknown_keys(j, {"reference", "strict", "carbon_intensity", "other_intensity", "scenarios"}, "config");

    RunConfig cfg;
    if (j.contains("strict"))
        cfg.strict = get_as<bool>(j, "strict", "config");
    FuelMap<KgPerKwh> global_intensities;
    if (j.contains("carbon_intensity"))
        global_intensities = parse_intensities(j.at("carbon_intensity"), "config");
    std::optional<KgPerKwh> global_other;
    if (j.contains("other_intensity"))
        global_other = get_as<double>(j, "other_intensity", "config");

    if (!j.contains("scenarios") || !j.at("scenarios").is_array() || j.at("scenarios").empty())
        throw ConfigError{"config: 'scenarios' must be a non-empty array"};

    auto resolve = [&](std::string const& p) {
        std::filesystem::path path{p};
        return path.is_absolute() ? path : base_dir / path;
    };

    std::set<std::string> names;
    std::size_t index = 0;
    for (auto const& s : j.at("scenarios"))
    {
        auto where = fmt::format("scenarios[{}]", index++);
        if (!s.is_object())
            throw ConfigError{fmt::format("{}: must be an object", where)};
        reject_unknown_keys(
            s,
            {"name",
             "mode",
             "load",
             "fuel_mix",
             "projects",
             "profiles",
             "filter_projects",
             "capacity_multiplier",
             "storage",
             "carbon_intensity",
             "other_intensity",
             "fold_storage"},
            where
        );
        ScenarioConfig sc;
        sc.name = get_as<std::string>(s, "name", where);
        if (!safe_name(sc.name))
            throw ConfigError{fmt::format("{}: name '{}' must use only letters, digits, '_', '-', '.'", where, sc.name)};
        if (!names.insert(sc.name).second)
            throw ConfigError{fmt::format("{}: duplicate scenario name '{}'", where, sc.name)};
        where = fmt::format("scenario '{}'", sc.name);

        if (s.contains("mode"))
        {
            auto const mode = get_as<std::string>(s, "mode", where);
            if (mode == "dispatch")
                sc.mode = ScenarioMode::Dispatch;
            else if (mode == "accounting")
                sc.mode = ScenarioMode::Accounting;
            else
                throw ConfigError{fmt::format("{}: unknown mode '{}'", where, mode)};
        }
        sc.baseline_mix_source = resolve(get_as<std::string>(s, "fuel_mix", where));
        if (sc.mode == ScenarioMode::Dispatch)
            sc.load_source = resolve(get_as<std::string>(s, "load", where));
        else if (s.contains("load"))
            throw ConfigError{fmt::format("{}: accounting mode does not take a load file", where)};
        if (s.contains("projects"))
            sc.projects_source = resolve(get_as<std::string>(s, "projects", where));
        if (s.contains("profiles"))
            sc.profiles_source = resolve(get_as<std::string>(s, "profiles", where));
        if (sc.projects_source.has_value() != sc.profiles_source.has_value())
            throw ConfigError{fmt::format("{}: 'projects' and 'profiles' must be given together", where)};
        if (s.contains("filter_projects"))
            sc.filter_projects = get_as<bool>(s, "filter_projects", where);
        if (s.contains("capacity_multiplier"))
            sc.capacity_multiplier = get_as<double>(s, "capacity_multiplier", where);
        if (s.contains("fold_storage"))
            sc.fold_storage = get_as<bool>(s, "fold_storage", where);

        if (s.contains("storage"))
        {
            auto const& st = s.at("storage");
            if (st.is_null())
                sc.storage = std::monostate{};
            else if (st.is_string() && st.get<std::string>() == "sized")
                sc.storage = SizedStorage{};
            else if (st.is_object())
                sc.storage = parse_storage(st, where + " storage");
            else
                throw ConfigError{fmt::format("{}: 'storage' must be null, \"sized\" or an object", where)};
        }

        sc.carbon_overrides = global_intensities;
        if (s.contains("carbon_intensity"))
        {
            for (auto const& [fuel, v] : parse_intensities(s.at("carbon_intensity"), where))
                sc.carbon_overrides[fuel] = v;
        }
        sc.other_intensity = global_other;
        if (s.contains("other_intensity"))
            sc.other_intensity = get_as<double>(s, "other_intensity", where);

        if (sc.mode == ScenarioMode::Accounting
            && (sc.projects_source || !std::holds_alternative<std::monostate>(sc.storage)))
        {
            throw ConfigError{fmt::format("{}: accounting mode takes neither projects nor storage", where)};
        }
        cfg.scenarios.push_back(std::move(sc));
    }

    if (j.contains("reference"))
    {
        auto const ref = get_as<std::string>(j, "reference", "config");
        auto it = std::find_if(cfg.scenarios.begin(), cfg.scenarios.end(), [&](auto const& sc) {
            return sc.name == ref;
        });
        if (it == cfg.scenarios.end())
            throw ConfigError{fmt::format("config: reference scenario '{}' is not defined", ref)};
        cfg.reference = static_cast<std::size_t>(it - cfg.scenarios.begin());
    }
    return cfg;
}

RunConfig
load_config(std::filesystem::path const& path)
{
    std::ifstream in{path};
    if (!in)
        throw ConfigError{fmt::format("cannot open config file '{}'", path.string())};
    Json j;
    try
    {
        j = Json::parse(in);
    }
    catch (Json::parse_error const& e)
    {
        throw ConfigError{fmt::format("{}: invalid JSON: {}", path.string(), e.what())};
    }
    auto cfg = parse_config(j, path.parent_path());
    cfg.path = path;
    return cfg;
}

} // namespace gridmix
