#include "gridmix/cli.hpp"

#include "gridmix/config.hpp"
#include "gridmix/report_io.hpp"
#include "gridmix/scenario.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <memory>
#include <openssl/evp.h>
#include <optional>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>
#include <sstream>
#include <thread>

#ifndef GRIDMIX_VERSION
#define GRIDMIX_VERSION "0.0.0"
#endif

namespace gridmix::cli
{

namespace fs = std::filesystem;

std::string
file_sha256(std::string const& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw DataError{fmt::format("cannot open input file '{}'", path)};
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw Error{"sha256: digest initialisation failed"};
    char buf[1 << 15];
    while (in)
    {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i)
        hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

namespace
{
    std::shared_ptr<spdlog::logger>
    make_logger(std::ostream& err)
    {
        auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
        auto log = std::make_shared<spdlog::logger>("gridmix", sink);
        log->set_pattern("gridmix: %l: %v");
        auto level = spdlog::level::warn;
        if (char const* env = std::getenv("GRIDMIX_LOG"))
            level = spdlog::level::from_str(env);
        log->set_level(level);
        return log;
    }

    // Write-then-rename so readers never see a partial file.
    void
    write_atomic(fs::path const& path, std::string const& content)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
            if (!out)
                throw DataError{fmt::format("cannot write '{}'", tmp.string())};
            out << content;
            if (!out.flush())
                throw DataError{fmt::format("cannot write '{}'", tmp.string())};
        }
        fs::rename(tmp, path);
    }

    IngestOptions
    ingest_options(RunConfig const& cfg, bool strict_flag, bool lenient_flag)
    {
        IngestOptions opts;
        opts.strict = cfg.strict.value_or(true);
        if (strict_flag)
            opts.strict = true;
        if (lenient_flag)
            opts.strict = false;
        return opts;
    }

    struct ScenarioOutcome
    {
        ScenarioResult result;
        Diagnostics diag;
        std::vector<fs::path> files_read;
    };

    // Runs every scenario on up to `jobs` threads; results keep config order
    // and the first failure (in config order) is rethrown.
    std::vector<ScenarioOutcome>
    run_all(RunConfig const& cfg, IngestOptions const& opts, unsigned jobs)
    {
        auto const n = cfg.scenarios.size();
        std::vector<ScenarioOutcome> outcomes(n);
        std::vector<std::exception_ptr> failures(n);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (auto i = next++; i < n; i = next++)
            {
                try
                {
                    auto& o = outcomes[i];
                    auto const& sc = cfg.scenarios[i];
                    try
                    {
                        auto const inputs = load_scenario_inputs(sc, opts, o.diag);
                        o.files_read = inputs.files_read;
                        o.result = run_scenario_on(sc, inputs);
                    }
                    catch (ConfigError const& e)
                    {
                        throw ScenarioConfigError{sc.name, e.what()};
                    }
                    catch (DataError const& e)
                    {
                        throw ScenarioDataError{sc.name, e.what()};
                    }
                }
                catch (...)
                {
                    failures[i] = std::current_exception();
                }
            }
        };
        auto const threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t)
            pool.emplace_back(worker);
        worker();
        pool.clear();
        for (auto const& f : failures)
        {
            if (f)
                std::rethrow_exception(f);
        }
        return outcomes;
    }

    std::string
    dump(Json const& j)
    {
        return j.dump(2) + "\n";
    }

    int
    cmd_run(
        std::string const& config_path,
        std::string const& out_dir,
        bool strict,
        bool lenient,
        unsigned jobs,
        std::ostream& out,
        spdlog::logger& log
    )
    {
        auto const started = std::chrono::steady_clock::now();
        auto const cfg = load_config(config_path);
        auto const opts = ingest_options(cfg, strict, lenient);
        log.debug("running {} scenario(s) from {}", cfg.scenarios.size(), config_path);

        auto outcomes = run_all(cfg, opts, jobs);

        fs::path const root{out_dir};
        fs::create_directories(root);
        std::vector<ScenarioReport> reports;
        std::vector<std::string> warnings;
        std::set<std::string> inputs{fs::path{config_path}.lexically_normal().string()};
        for (auto& o : outcomes)
        {
            auto const& r = o.result;
            auto const dir = root / r.report.name;
            fs::create_directories(dir);
            write_atomic(dir / "report.json", dump(report_to_json(r.report)));
            std::ostringstream hourly;
            write_hourly_csv(hourly, r);
            write_atomic(dir / "hourly.csv", hourly.str());
            reports.push_back(r.report);
            for (auto const& w : o.diag.warnings)
            {
                log.warn("{}: {}", r.report.name, w);
                warnings.push_back(fmt::format("{}: {}", r.report.name, w));
            }
            for (auto const& p : o.files_read)
                inputs.insert(p.lexically_normal().string());
        }

        auto const table = compare_scenarios(reports, cfg.reference);
        std::ostringstream comparison;
        write_comparison_csv(comparison, table);
        write_atomic(root / "comparison.csv", comparison.str());

        for (auto const& r : reports)
        {
            out << fmt::format(
                "{}: generation {} MWh, renewables {:.2f}%, intensity {:.6f} kgCO2/kWh, curtailment {} MWh",
                r.name,
                format_decimal(r.total_generation),
                r.renewables_share * 100.0,
                r.average_intensity,
                format_decimal(r.annual_curtailment)
            );
            if (r.unmet_energy > 0.0)
                out << fmt::format(", unmet {} MWh", format_decimal(r.unmet_energy));
            if (r.storage_capacity)
            {
                out << fmt::format(
                    ", storage {} MWh used {:.2f}% of hours",
                    format_decimal(*r.storage_capacity),
                    *r.storage_utilization * 100.0
                );
            }
            out << "\n";
        }

        Json manifest;
        manifest["tool"] = "gridmix";
        manifest["version"] = GRIDMIX_VERSION;
        manifest["config"] = config_path;
        manifest["reference"] = table.reference;
        manifest["strict"] = opts.strict;
        manifest["scenarios"] = Json::array();
        for (auto const& r : reports)
            manifest["scenarios"].push_back(r.name);
        manifest["inputs"] = Json::array();
        for (auto const& p : inputs)
            manifest["inputs"].push_back(Json{{"path", p}, {"sha256", file_sha256(p)}});
        manifest["warnings"] = warnings;
        std::chrono::duration<double> const elapsed = std::chrono::steady_clock::now() - started;
        manifest["duration_seconds"] = elapsed.count();
        write_atomic(root / "manifest.json", dump(manifest));
        return ExitOk;
    }

    int
    cmd_size_storage(
        std::string const& config_path,
        std::string const& only,
        bool strict,
        bool lenient,
        bool as_json,
        std::ostream& out,
        spdlog::logger& log
    )
    {
        auto const cfg = load_config(config_path);
        auto const opts = ingest_options(cfg, strict, lenient);
        if (!only.empty()
            && std::none_of(cfg.scenarios.begin(), cfg.scenarios.end(), [&](auto const& s) { return s.name == only; }))
        {
            throw ConfigError{fmt::format("no scenario named '{}'", only)};
        }

        Json records = Json::array();
        for (auto const& sc : cfg.scenarios)
        {
            if (!only.empty() && sc.name != only)
                continue;
            if (sc.mode != ScenarioMode::Dispatch)
            {
                if (!only.empty())
                    throw ConfigError{fmt::format("scenario '{}' is in accounting mode and cannot be sized", sc.name)};
                continue;
            }
            Diagnostics diag;
            StorageSizing sizing;
            try
            {
                auto const inputs = load_scenario_inputs(sc, opts, diag);
                sizing = size_storage(inputs.load, inputs.fleet, inputs.table);
            }
            catch (ConfigError const& e)
            {
                throw ScenarioConfigError{sc.name, e.what()};
            }
            catch (DataError const& e)
            {
                throw ScenarioDataError{sc.name, e.what()};
            }
            for (auto const& w : diag.warnings)
                log.warn("{}: {}", sc.name, w);

            if (as_json)
            {
                records.push_back(sizing_to_json(sc.name, sizing));
                continue;
            }
            out << fmt::format(
                "{}: storage capacity {} MWh ({} GWh), peak SOC hour {}, residual curtailment {} MWh\n",
                sc.name,
                format_decimal(sizing.capacity),
                format_decimal(sizing.capacity / 1000.0),
                sizing.peak_hour ? std::to_string(*sizing.peak_hour) : std::string{"none"},
                format_decimal(sizing.residual_curtailment)
            );
        }
        if (as_json)
            out << dump(records);
        return ExitOk;
    }

    int
    cmd_plotdata(std::string const& out_dir, std::ostream& out)
    {
        fs::path const root{out_dir};
        auto const manifest_path = root / "manifest.json";
        if (!fs::is_regular_file(manifest_path))
            throw MissingRunDir{fmt::format("'{}' is not a completed run directory (no manifest.json)", out_dir)};

        Json manifest;
        {
            std::ifstream in{manifest_path};
            try
            {
                manifest = Json::parse(in);
            }
            catch (Json::parse_error const& e)
            {
                throw MissingRunDir{fmt::format("{}: invalid JSON: {}", manifest_path.string(), e.what())};
            }
        }
        if (!manifest.contains("scenarios") || !manifest["scenarios"].is_array())
            throw MissingRunDir{fmt::format("{}: no scenario list", manifest_path.string())};

        std::vector<ScenarioReport> reports;
        for (auto const& name : manifest["scenarios"])
        {
            auto const path = root / name.get<std::string>() / "report.json";
            std::ifstream in{path};
            if (!in)
                throw MissingRunDir{fmt::format("missing scenario report '{}'", path.string())};
            try
            {
                reports.push_back(report_from_json(Json::parse(in)));
            }
            catch (Json::parse_error const& e)
            {
                throw DataError{fmt::format("{}: invalid JSON: {}", path.string(), e.what())};
            }
            catch (ConfigError const& e)
            {
                throw DataError{fmt::format("{}: {}", path.string(), e.what())};
            }
        }

        std::ostringstream mix;
        write_mix_csv(mix, reports);
        write_atomic(root / "mix.csv", mix.str());
        std::ostringstream intensity;
        write_intensity_csv(intensity, reports);
        write_atomic(root / "intensity.csv", intensity.str());
        out << fmt::format("wrote {} and {}\n", (root / "mix.csv").string(), (root / "intensity.csv").string());
        return ExitOk;
    }

    int
    cmd_validate(std::string const& config_path, bool strict, bool lenient, std::ostream& out, spdlog::logger& log)
    {
        auto const cfg = load_config(config_path);
        auto const opts = ingest_options(cfg, strict, lenient);
        for (auto const& sc : cfg.scenarios)
        {
            Diagnostics diag;
            ScenarioInputs inputs;
            try
            {
                inputs = load_scenario_inputs(sc, opts, diag);
            }
            catch (ConfigError const& e)
            {
                throw ScenarioConfigError{sc.name, e.what()};
            }
            catch (DataError const& e)
            {
                throw ScenarioDataError{sc.name, e.what()};
            }
            for (auto const& w : diag.warnings)
                log.warn("{}: {}", sc.name, w);
            auto const hours = sc.mode == ScenarioMode::Dispatch
                ? inputs.load.size()
                : (inputs.baseline_mix.empty() ? 0 : inputs.baseline_mix.begin()->second.size());
            out << fmt::format(
                "{}: ok ({} hours, {} fuels, {} warnings)\n", sc.name, hours, inputs.fleet.fuels().size(), diag.warnings.size()
            );
        }
        return ExitOk;
    }
}

int
run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    auto log = make_logger(err);

    CLI::App app{"Carbon-ranked hourly grid dispatch with curtailment-fed storage", "gridmix"};
    app.set_version_flag("--version", GRIDMIX_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string only;
    bool strict = false;
    bool lenient = false;
    bool as_json = false;
    unsigned jobs = 1;
    std::uint64_t seed = 0;

    auto add_mode_flags = [&](CLI::App* sub) {
        auto* s = sub->add_flag("--strict", strict, "Reject incomplete hours and negative or NaN values");
        auto* l = sub->add_flag("--lenient", lenient, "Repair incomplete hours and bad values with warnings");
        s->excludes(l);
    };

    auto* run_cmd = app.add_subcommand("run", "Run every scenario and write reports");
    run_cmd->add_option("--config", config_path, "Scenario config file (JSON)")->required();
    run_cmd->add_option("--out", out_dir, "Output directory")->required();
    run_cmd->add_option("--jobs", jobs, "Scenarios to run in parallel")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "Accepted for interface stability; the pipeline is deterministic");
    add_mode_flags(run_cmd);

    auto* size_cmd = app.add_subcommand("size-storage", "Size storage to absorb all curtailment");
    size_cmd->add_option("--config", config_path, "Scenario config file (JSON)")->required();
    size_cmd->add_option("--scenario", only, "Only size this scenario");
    size_cmd->add_flag("--json", as_json, "Machine-readable output");
    add_mode_flags(size_cmd);

    auto* plot_cmd = app.add_subcommand("plotdata", "Write mix.csv and intensity.csv for a completed run");
    plot_cmd->add_option("--out", out_dir, "Run output directory")->required();

    auto* validate_cmd = app.add_subcommand("validate", "Parse the config and every input file");
    validate_cmd->add_option("--config", config_path, "Scenario config file (JSON)")->required();
    add_mode_flags(validate_cmd);

    std::vector<char const*> argv{"gridmix"};
    for (auto const& a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (CLI::ParseError const& e)
    {
        auto const code = app.exit(e, out, err);
        return code == 0 ? ExitOk : ExitValidation;
    }

    try
    {
        if (run_cmd->parsed())
            return cmd_run(config_path, out_dir, strict, lenient, jobs, out, *log);
        if (size_cmd->parsed())
            return cmd_size_storage(config_path, only, strict, lenient, as_json, out, *log);
        if (plot_cmd->parsed())
            return cmd_plotdata(out_dir, out);
        if (validate_cmd->parsed())
            return cmd_validate(config_path, strict, lenient, out, *log);
    }
    catch (ConfigError const& e)
    {
        log->error("{}", e.what());
        return ExitValidation;
    }
    catch (DataError const& e)
    {
        log->error("{}", e.what());
        return ExitData;
    }
    catch (fs::filesystem_error const& e)
    {
        log->error("{}", e.what());
        return ExitData;
    }
    return ExitValidation;
}

} // namespace gridmix::cli
