// scenario.cpp

#include "qbat/scenario.hpp"

#include "qbat/calibration.hpp"
#include "qbat/errors.hpp"
#include "qbat/observables.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace qbat {

namespace fs = std::filesystem;
using nlohmann::json;

PresetCatalog make_preset_catalog(double b_s) {
    auto make = [b_s](const std::string& label, ChannelSpec channel) {
        ScenarioConfig cfg;
        cfg.label = label;
        cfg.model.b_s = b_s;
        cfg.channel = channel;
        cfg.integrator.snapshot_times = kTableTimes;
        return cfg;
    };
    auto memory = [](double beta) { return ExpCosineRate{0.5, beta, 1.0}; };

    PresetCatalog c;
    c.emplace("ad-weak", make("ad-weak", ChannelSpec::amplitude_damping(ConstantRate{0.1})));
    c.emplace("ad-mid", make("ad-mid", ChannelSpec::amplitude_damping(ConstantRate{0.5})));
    c.emplace("ad-strong", make("ad-strong", ChannelSpec::amplitude_damping(ConstantRate{1.0})));
    c.emplace("deph-weak", make("deph-weak", ChannelSpec::dephasing(ConstantRate{0.1})));
    c.emplace("deph-strong", make("deph-strong", ChannelSpec::dephasing(ConstantRate{1.0})));
    c.emplace("markov", make("markov", ChannelSpec::amplitude_damping(ConstantRate{0.5})));
    c.emplace("nonmarkov-b01", make("nonmarkov-b01", ChannelSpec::amplitude_damping(memory(0.1))));
    c.emplace("nonmarkov-b05", make("nonmarkov-b05", ChannelSpec::amplitude_damping(memory(0.5))));
    c.emplace("nonmarkov-b10", make("nonmarkov-b10", ChannelSpec::amplitude_damping(memory(1.0))));
    return c;
}

const PresetCatalog& preset_catalog() {
    static const PresetCatalog catalog = make_preset_catalog(kCalibratedPulseAmplitude);
    return catalog;
}

ScenarioConfig preset(const std::string& name) {
    const auto& c = preset_catalog();
    const auto it = c.find(name);
    if (it == c.end()) {
        throw UsageError("unknown preset '" + name + "' (see list-presets)");
    }
    return it->second;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timeseries_csv(const TrajectoryRecord& rec) {
    std::string out = kCsvHeader;
    out += '\n';
    for (std::size_t i = 0; i < rec.size(); ++i) {
        out += format_number(rec.times[i]);
        for (double v :
             {rec.energy[i], rec.purity[i], rec.coherence[i], rec.ergotropy[i], rec.min_eig[i], rec.rate[i]}) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

json snapshot_json(double t, const DensityMatrix& rho) {
    json entries = json::array();
    for (const auto& z : rho.matrix().entries()) {
        entries.push_back({z.real(), z.imag()});
    }
    auto eig = rho.eigenvalues();
    std::reverse(eig.begin(), eig.end());
    json populations = json::array();
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        populations.push_back(rho.matrix()(i, i).real());
    }
    return {{"t", t}, {"dim", rho.dim()}, {"entries", entries}, {"eigenvalues", eig}, {"populations", populations}};
}

std::string snapshot_filename(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_t%g.json", t);
    return buf;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

fs::path prepare_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
    }
    return dir;
}

json meta_json(const ScenarioConfig& cfg, const TwoPhaseResult& r) {
    const auto& d = r.dissipative;
    json warnings = json::array();
    for (const auto& w : d.positivity_warnings) {
        warnings.push_back({{"t", w.t}, {"min_eig", w.min_eig}});
    }
    const auto h0 = build_h0(cfg.model);
    const double c0 = l1_coherence(r.charged);
    const double e0 = ergotropy(r.charged, h0);
    return {
        {"config", config_to_json(cfg)},
        {"charged_state",
         {{"energy", energy(r.charged, h0)}, {"coherence", c0}, {"ergotropy", e0},
          {"purity", purity_fidelity(r.charged, r.charged.dim())}}},
        {"calibration",
         {{"target_coherence", kTableCoherenceAtZero},
          {"target_ergotropy", kTableErgotropyAtZero},
          {"coherence_residual", c0 - kTableCoherenceAtZero},
          {"ergotropy_residual", e0 - kTableErgotropyAtZero}}},
        {"positivity_warnings", warnings},
        {"positivity_warning_count", d.positivity_warnings.size()},
        {"trace",
         {{"max_step_drift", d.max_trace_drift},
          {"cumulative_correction", d.cumulative_trace_correction},
          {"renormalizations", d.renormalizations},
          {"charging_max_step_drift", r.charging.max_trace_drift}}},
        {"min_raw_ergotropy", d.min_raw_ergotropy},
    };
}

} // namespace

TwoPhaseResult simulate(const ScenarioConfig& cfg) {
    cfg.validate();
    try {
        return run_two_phase(cfg.model, cfg.channel, cfg.integrator);
    } catch (const NumericalError& e) {
        throw NumericalError("scenario '" + cfg.label + "': " + e.what());
    }
}

ScenarioRun run_scenario(const ScenarioConfig& cfg) {
    auto result = simulate(cfg);
    const fs::path dir = prepare_directory(fs::path(cfg.output_dir) / cfg.label);
    write_file(dir / "timeseries.csv", timeseries_csv(result.dissipative));
    for (const auto& [t, rho] : result.dissipative.snapshots) {
        write_file(dir / snapshot_filename(t), snapshot_json(t, rho).dump(2) + "\n");
    }
    write_file(dir / "meta.json", meta_json(cfg, result).dump(2) + "\n");
    return {std::move(result), dir};
}

SweepSummary run_sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                       unsigned workers) {
    base.validate();
    SweepSummary summary;
    summary.axis = axis;
    if (values.empty()) {
        return summary;
    }
    const std::string leaf = axis.substr(axis.rfind('.') == std::string::npos ? 0 : axis.rfind('.') + 1);

    // Resolve every config up front so a bad axis fails before any work.
    std::vector<ScenarioConfig> configs;
    for (double v : values) {
        auto cfg = with_field(base, axis, v);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s_%s_%g", base.label.c_str(), leaf.c_str(), v);
        cfg.label = buf;
        cfg.validate();
        configs.push_back(std::move(cfg));
    }

    summary.rows.resize(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                const auto run = run_scenario(configs[i]);
                const auto& d = run.result.dissipative;
                const std::size_t last = d.size() - 1;
                summary.rows[i] = {values[i],        configs[i].label,  d.times[last],   d.energy[last],
                                   d.purity[last],   d.coherence[last], d.ergotropy[last], d.min_eig[last],
                                   d.rate[last]};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(configs.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::string csv = "value,label,t,energy,purity,coherence,ergotropy,min_eig,rate\n";
    for (const auto& r : summary.rows) {
        csv += format_number(r.value) + "," + r.label;
        for (double v : {r.t, r.energy, r.purity, r.coherence, r.ergotropy, r.min_eig, r.rate}) {
            csv += "," + format_number(v);
        }
        csv += '\n';
    }
    const fs::path dir = prepare_directory(base.output_dir);
    summary.summary_csv = dir / (base.label + "_sweep_" + leaf + ".csv");
    write_file(summary.summary_csv, csv);
    return summary;
}

} // namespace qbat
