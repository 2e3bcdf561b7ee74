// verify.cpp

#include "qbat/verify.hpp"

#include "qbat/errors.hpp"
#include "qbat/observables.hpp"
#include "qbat/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace qbat {

const std::vector<ReferenceTable>& reference_tables() {
    static const std::vector<ReferenceTable> tables{
        {"amplitude damping gamma=0.1", "ad-weak",
         {{0, 2.1013, 1.8133, {0.353, 0.001, 0.355, 0.291}},
          {10, 1.3676, 0.9180, {0.33, 0.23, 0.182, 0.258}},
          {40, 0.5145, 0.1447, {0.265, 0.231, 0.282, 0.222}},
          {100, 0.4705, 0.1777, {0.270, 0.228, 0.271, 0.231}}}},
        {"amplitude damping gamma=0.5", "ad-mid",
         {{0, 2.1013, 1.8133, {0.353, 0.001, 0.355, 0.291}},
          {10, 1.0078, 0.9823, {0.407, 0.099, 0.384, 0.11}},
          {40, 0.9983, 1.0347, {0.401, 0.103, 0.393, 0.103}},
          {100, 0.9983, 1.0347, {0.401, 0.103, 0.393, 0.103}}}},
        {"amplitude damping gamma=1.0", "ad-strong",
         {{0, 2.1013, 1.8133, {0.353, 0.001, 0.355, 0.291}},
          {10, 0.8960, 1.7131, {0.453, 0.073, 0.416, 0.058}},
          {40, 0.8923, 1.7284, {0.453, 0.073, 0.416, 0.058}},
          {100, 0.8923, 1.7284, {0.453, 0.073, 0.416, 0.058}}}},
        {"dephasing gamma=0.1", "deph-weak",
         {{0, 2.1013, 1.8133, {0.353, 0.001, 0.355, 0.291}},
          {10, 0.3469, 0.5564, {0.283, 0.308, 0.186, 0.223}},
          {40, 0.0160, 0.0315, {0.252, 0.251, 0.249, 0.248}},
          {100, 0.0000, 0.0001, {0.250, 0.250, 0.250, 0.250}}}},
        {"dephasing gamma=1.0", "deph-strong",
         {{0, 2.1013, 1.8133, {0.353, 0.001, 0.355, 0.291}},
          {10, 0.0888, 0.4248, {0.288, 0.222, 0.278, 0.212}},
          {40, 0.0111, 0.0529, {0.255, 0.246, 0.254, 0.245}},
          {100, 0.0002, 0.0008, {0.25, 0.25, 0.25, 0.25}}}},
        {"markovian gamma=0.5", "markov",
         {{0, 2.1012, 1.8133, {0.353, 0.001, 0.355, 0.291}},
          {10, 1.0066, 0.9824, {0.407, 0.099, 0.384, 0.109}},
          {40, 0.9983, 1.0347, {0.401, 0.103, 0.393, 0.103}},
          {100, 0.9983, 1.0347, {0.401, 0.103, 0.393, 0.103}}}},
        {"non-markovian beta=0.1", "nonmarkov-b01",
         {{0, 2.5854, 1.7132, {0.226, 0.115, 0.376, 0.282}},
          {10, 1.3513, 0.7423, {0.242, 0.240, 0.232, 0.286}},
          {40, 0.6760, 0.4560, {0.211, 0.236, 0.324, 0.228}},
          {100, 0.8107, 0.4496, {0.245, 0.255, 0.239, 0.262}}}},
        {"non-markovian beta=0.5", "nonmarkov-b05",
         {{0, 2.5854, 1.7132, {0.226, 0.115, 0.376, 0.282}},
          {10, 2.1277, 1.1371, {0.213, 0.284, 0.186, 0.317}},
          {40, 1.7619, 1.1369, {0.075, 0.232, 0.429, 0.265}},
          {100, 2.1614, 1.1368, {0.264, 0.226, 0.266, 0.244}}}},
        {"non-markovian beta=1.0", "nonmarkov-b10",
         {{0, 2.5854, 1.7132, {0.226, 0.115, 0.376, 0.282}},
          {10, 2.3058, 1.2817, {0.219, 0.278, 0.191, 0.311}},
          {40, 1.8715, 1.2817, {0.050, 0.230, 0.447, 0.272}},
          {100, 2.3346, 1.2816, {0.264, 0.219, 0.276, 0.241}}}},
    };
    return tables;
}

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

std::size_t sample_index(const TrajectoryRecord& rec, double t) {
    const auto it = std::lower_bound(rec.times.begin(), rec.times.end(), t - 1e-9);
    if (it == rec.times.end() || std::abs(*it - t) > 1e-9) {
        throw UsageError("verify: time " + std::to_string(t) + " was not sampled");
    }
    return static_cast<std::size_t>(it - rec.times.begin());
}

} // namespace

bool VerifyReport::qualitative_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::size_t VerifyReport::cells_passed() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.pass; }));
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json out;
    out["b_s"] = b_s;
    if (calibration) {
        nlohmann::json cands = nlohmann::json::array();
        for (const auto& c : calibration->candidates) {
            cands.push_back({{"b_s", c.b_s}, {"ergotropy", c.ergotropy}});
        }
        out["calibration"] = {{"b_s", calibration->b_s},
                              {"coherence", calibration->coherence},
                              {"ergotropy", calibration->ergotropy},
                              {"coherence_residual", calibration->coherence_residual},
                              {"ergotropy_residual", calibration->ergotropy_residual},
                              {"bracketed", calibration->bracketed},
                              {"grid",
                               {{"lo", calibration->grid.lo},
                                {"hi", calibration->grid.hi},
                                {"step", calibration->grid.step},
                                {"scan_dt", calibration->grid.scan_dt}}},
                              {"candidates", cands}};
    } else {
        out["calibration"] = "skipped";
    }
    out["cells"] = nlohmann::json::array();
    for (const auto& c : cells) {
        out["cells"].push_back({{"table", c.table},
                                {"t", c.t},
                                {"quantity", c.quantity},
                                {"reference", c.reference},
                                {"simulated", c.simulated},
                                {"delta", c.delta},
                                {"pass", c.pass}});
    }
    out["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        out["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    out["cells_passed"] = cells_passed();
    out["cells_total"] = cells.size();
    out["qualitative_pass"] = qualitative_pass();
    return out;
}

std::string VerifyReport::to_text() const {
    std::string out;
    out += "pulse amplitude b_s = " + format_number(b_s) + "\n";
    if (calibration) {
        out += fmt("calibration: C_l1(0) residual %+.3e, ergotropy(0) residual %+.3e, %g candidate roots\n",
                   calibration->coherence_residual, calibration->ergotropy_residual,
                   static_cast<double>(calibration->candidates.size()));
    } else {
        out += "calibration: skipped\n";
    }
    out += "\nqualitative checks\n";
    for (const auto& c : checks) {
        out += std::string(c.pass ? "  PASS  " : "  FAIL  ") + c.name + "  (" + c.detail + ")\n";
    }
    out += "\ntable cells (reported, not gated)\n";
    for (const auto& c : cells) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "  %-4s %-32s t=%-5g %-12s ref=%-8.4f sim=%-8.4f delta=%+.4f\n",
                      c.pass ? "ok" : "off", c.table.c_str(), c.t, c.quantity.c_str(), c.reference, c.simulated,
                      c.delta);
        out += buf;
    }
    out += fmt("cells within tolerance: %g / %g\n", static_cast<double>(cells_passed()),
               static_cast<double>(cells.size()));
    return out;
}

VerifyReport verify_tables(const VerifyOptions& options) {
    const auto& tol = options.tol;
    VerifyReport report;
    report.b_s = kCalibratedPulseAmplitude;
    if (!options.skip_calibration) {
        report.calibration = calibrate_pulse_amplitude(ModelParams{}, options.grid);
        report.b_s = report.calibration->b_s;
    }
    const auto catalog = make_preset_catalog(report.b_s);

    std::map<std::string, TwoPhaseResult> runs;
    auto run = [&](const std::string& name) -> const TwoPhaseResult& {
        auto it = runs.find(name);
        if (it == runs.end()) {
            it = runs.emplace(name, simulate(catalog.at(name))).first;
        }
        return it->second;
    };

    for (const auto& table : reference_tables()) {
        const auto& rec = run(table.preset).dissipative;
        for (const auto& row : table.rows) {
            const std::size_t i = sample_index(rec, row.t);
            auto add = [&](const std::string& q, double ref, double sim, double allowed) {
                const double delta = sim - ref;
                report.cells.push_back({table.name, row.t, q, ref, sim, delta, std::abs(delta) <= allowed});
            };
            auto rel = [&](double ref) { return std::max(tol.relative * std::abs(ref), tol.absolute_floor); };
            add("coherence", row.coherence, rec.coherence[i], rel(row.coherence));
            add("ergotropy", row.ergotropy, rec.ergotropy[i], rel(row.ergotropy));
            const auto snap = rec.snapshots.find(row.t);
            if (snap != rec.snapshots.end()) {
                for (std::size_t k = 0; k < 4; ++k) {
                    add("population" + std::to_string(k), row.populations[k], snap->second.matrix()(k, k).real(),
                        tol.population);
                }
            }
        }
    }

    auto erg_at = [&](const std::string& name, double t) {
        const auto& rec = run(name).dissipative;
        return rec.ergotropy[sample_index(rec, t)];
    };
    auto coh_at = [&](const std::string& name, double t) {
        const auto& rec = run(name).dissipative;
        return rec.coherence[sample_index(rec, t)];
    };

    for (const char* name : {"ad-strong", "ad-mid"}) {
        const double gap = std::abs(erg_at(name, 40) - erg_at(name, 100));
        report.checks.push_back({std::string(name) + " ergotropy plateau |E(40)-E(100)|", gap < tol.plateau,
                                 fmt("%.3e < %.1e", gap, tol.plateau)});
    }
    {
        const double e0 = erg_at("ad-weak", 0);
        const double e100 = erg_at("ad-weak", 100);
        report.checks.push_back({"ad-weak ergotropy decay E(100) < 25% E(0)", e100 < tol.weak_decay_fraction * e0,
                                 fmt("E(0)=%.4f E(100)=%.4f", e0, e100)});
    }
    for (const char* name : {"deph-weak", "deph-strong"}) {
        const double c40 = coh_at(name, 40);
        const double e100 = erg_at(name, 100);
        report.checks.push_back({std::string(name) + " coherence C(40) < 0.02", c40 < tol.dephasing_coherence,
                                 fmt("C(40)=%.4f", c40)});
        report.checks.push_back({std::string(name) + " ergotropy E(100) < 0.01", e100 < tol.dephasing_ergotropy,
                                 fmt("E(100)=%.5f", e100)});
        const auto& snap = run(name).dissipative.snapshots.at(100.0);
        double worst = 0.0;
        for (double v : snap.eigenvalues()) {
            worst = std::max(worst, std::abs(v - 0.25));
        }
        report.checks.push_back({std::string(name) + " rho(100) eigenvalues within 0.01 of 1/4",
                                 worst < tol.dephasing_eigenvalue, fmt("max deviation %.2e", worst)});
    }
    {
        const auto& coh = run("nonmarkov-b05").dissipative.coherence;
        std::size_t rises = 0;
        for (std::size_t i = 1; i < coh.size(); ++i) {
            if (coh[i] > coh[i - 1]) ++rises;
        }
        report.checks.push_back({"nonmarkov-b05 coherence backflow (rising sampled interval)", rises > 0,
                                 fmt("%g rising intervals", static_cast<double>(rises))});
    }
    {
        const double markov = run("markov").dissipative.ergotropy.back();
        for (const char* name : {"nonmarkov-b05", "nonmarkov-b10"}) {
            const double e = run(name).dissipative.ergotropy.back();
            report.checks.push_back({std::string(name) + " terminal ergotropy exceeds markov by > 0.02",
                                     e - markov > tol.backflow_margin,
                                     fmt("%.4f vs markov %.4f", e, markov)});
        }
    }
    {
        const bool same = timeseries_csv(run("ad-mid").dissipative) == timeseries_csv(run("markov").dissipative);
        report.checks.push_back({"ad-mid and markov produce identical CSV", same, same ? "identical" : "differ"});
    }
    return report;
}

} // namespace qbat
