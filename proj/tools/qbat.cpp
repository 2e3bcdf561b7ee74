// qbat.cpp - command-line front end: run, preset, sweep, verify, list-presets

#include "qbat/calibration.hpp"
#include "qbat/config.hpp"
#include "qbat/errors.hpp"
#include "qbat/scenario.hpp"
#include "qbat/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

void report_run(const qbat::ScenarioRun& run) {
    const auto& d = run.result.dissipative;
    std::cout << "wrote " << run.directory.string() << "\n";
    std::cout << "  terminal: t=" << d.times.back() << " energy=" << d.energy.back()
              << " coherence=" << d.coherence.back() << " ergotropy=" << d.ergotropy.back() << "\n";
    const std::size_t warnings = run.result.charging.positivity_warnings.size() + d.positivity_warnings.size();
    if (warnings > 0) {
        std::cerr << "warning: " << warnings << " sampled states with eigenvalues below -positivity_tol\n";
    }
}

std::vector<double> parse_values(const std::vector<std::string>& tokens) {
    std::vector<double> out;
    for (const auto& tok : tokens) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        double v = 0.0;
        if (!CLI::detail::lexical_cast(tok, v) || !std::isfinite(v)) {
            throw qbat::UsageError("--values: '" + tok + "' is not a number");
        }
        out.push_back(v);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graphene spin-valley quantum battery simulator"};
    app.require_subcommand(1);

    std::optional<std::string> output_dir;
    app.add_option("--output-dir", output_dir, "Override the output directory of the scenario(s)");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario from a JSON config");
    run_cmd->add_option("config", config_path, "Config file")->required();

    std::string preset_name;
    auto* preset_cmd = app.add_subcommand("preset", "Run a named preset");
    preset_cmd->add_option("name", preset_name, "Preset name (see list-presets)")->required();

    std::string axis;
    std::vector<std::string> value_tokens;
    unsigned workers = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one numeric config field");
    sweep_cmd->add_option("config", config_path, "Base config file")->required();
    sweep_cmd->add_option("--axis", axis, "Dotted field path, e.g. channel.rate.gamma")->required();
    sweep_cmd->add_option("--values", value_tokens, "Comma-separated values (may be empty)")
        ->required()
        ->expected(0, CLI::detail::expected_max_vector_size)
        ->delimiter(',');
    sweep_cmd->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

    bool skip_calibration = false;
    std::optional<std::string> report_path;
    auto* verify_cmd = app.add_subcommand("verify", "Compare presets with the reference tables");
    verify_cmd->add_flag("--skip-calibration", skip_calibration, "Use the frozen pulse amplitude");
    verify_cmd->add_option("--report", report_path, "Also write the report as JSON");

    auto* list_cmd = app.add_subcommand("list-presets", "List the available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto apply_output = [&](qbat::ScenarioConfig cfg) {
        if (output_dir) cfg.output_dir = *output_dir;
        return cfg;
    };

    try {
        if (*run_cmd) {
            report_run(qbat::run_scenario(apply_output(qbat::load_config_file(config_path))));
        } else if (*preset_cmd) {
            report_run(qbat::run_scenario(apply_output(qbat::preset(preset_name))));
        } else if (*sweep_cmd) {
            const auto summary = qbat::run_sweep(apply_output(qbat::load_config_file(config_path)), axis,
                                                 parse_values(value_tokens), workers);
            if (summary.summary_csv.empty()) {
                std::cout << "no values given; nothing to run\n";
            } else {
                std::cout << "wrote " << summary.summary_csv.string() << " (" << summary.rows.size() << " runs)\n";
            }
        } else if (*verify_cmd) {
            qbat::VerifyOptions options;
            options.skip_calibration = skip_calibration;
            const auto report = qbat::verify_tables(options);
            std::cout << report.to_text();
            if (report_path) {
                std::ofstream out(*report_path);
                if (!out) throw qbat::IoError("cannot write " + *report_path);
                out << report.to_json().dump(2) << "\n";
            }
            std::cout << (report.qualitative_pass() ? "all qualitative checks passed\n"
                                                    : "some qualitative checks failed\n");
        } else if (*list_cmd) {
            for (const auto& [name, cfg] : qbat::preset_catalog()) {
                std::cout << name << "\t" << qbat::to_string(cfg.channel.kind) << "\n";
            }
        }
    } catch (const qbat::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const qbat::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qbat::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
