// scenario.hpp - presets, scenario execution, sweeps and on-disk output

#pragma once

#include "qbat/config.hpp"
#include "qbat/dynamics.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qbat {

using PresetCatalog = std::map<std::string, ScenarioConfig>;

// Dissipative-phase times at which the reference tables are sampled.
inline const std::vector<double> kTableTimes{0.0, 10.0, 40.0, 100.0};

// All presets share the model defaults with the given pulse amplitude, the
// default integrator, and snapshots at kTableTimes.
PresetCatalog make_preset_catalog(double b_s);
const PresetCatalog& preset_catalog();  // uses kCalibratedPulseAmplitude
ScenarioConfig preset(const std::string& name);  // throws UsageError

inline constexpr const char* kCsvHeader = "t,energy,purity,coherence,ergotropy,min_eig,rate";

std::string format_number(double v);  // 17 significant digits
std::string timeseries_csv(const TrajectoryRecord& rec);
nlohmann::json snapshot_json(double t, const DensityMatrix& rho);
std::string snapshot_filename(double t);

struct ScenarioRun {
    TwoPhaseResult result;
    std::filesystem::path directory;
};

// Runs both phases and writes <output_dir>/<label>/{timeseries.csv,
// snapshot_t<time>.json, meta.json}. Numerical errors are rethrown with the
// scenario label; I/O failures as IoError naming the path.
ScenarioRun run_scenario(const ScenarioConfig& cfg);

TwoPhaseResult simulate(const ScenarioConfig& cfg);

struct SweepRow {
    double value = 0.0;
    std::string label;
    double t = 0.0;
    double energy = 0.0;
    double purity = 0.0;
    double coherence = 0.0;
    double ergotropy = 0.0;
    double min_eig = 0.0;
    double rate = 0.0;
};

struct SweepSummary {
    std::string axis;
    std::vector<SweepRow> rows;
    std::filesystem::path summary_csv;  // empty when there were no values
};

// One independent scenario per value (labels <base>_<leaf>_<value>), run on a
// worker pool, then a summary CSV of terminal observables at
// <output_dir>/<base label>_sweep_<leaf>.csv.
SweepSummary run_sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                       unsigned workers = 0);

} // namespace qbat
