// calibration.cpp

#include "qbat/calibration.hpp"

#include "qbat/dynamics.hpp"
#include "qbat/errors.hpp"
#include "qbat/observables.hpp"

#include <cmath>
#include <limits>

namespace qbat {

namespace {

struct ChargedPoint {
    double coherence;
    double ergotropy;
};

ChargedPoint charged_point(ModelParams p, double b_s, double dt) {
    p.b_s = b_s;
    const auto rho = charge_battery(p, dt);
    return {l1_coherence(rho), ergotropy(rho, build_h0(p))};
}

} // namespace

CalibrationResult calibrate_pulse_amplitude(const ModelParams& base, const CalibrationGrid& grid,
                                            double production_dt) {
    base.validate();
    if (!(grid.step > 0.0) || !(grid.hi > grid.lo) || grid.lo < 0.0 || !(grid.scan_dt > 0.0)) {
        throw ValidationError("calibration.grid", "need 0 <= lo < hi, step > 0, scan_dt > 0");
    }
    const auto n = static_cast<std::size_t>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9)) + 1;
    std::vector<double> b(n);
    std::vector<double> miss(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = grid.lo + static_cast<double>(i) * grid.step;
        miss[i] = charged_point(base, b[i], grid.scan_dt).coherence - kTableCoherenceAtZero;
    }

    CalibrationResult out;
    out.grid = grid;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if ((miss[i] < 0.0) == (miss[i + 1] < 0.0)) {
            continue;
        }
        double lo = b[i];
        double hi = b[i + 1];
        const bool rising = miss[i] < 0.0;
        while (hi - lo > grid.bisect_tol) {
            const double mid = 0.5 * (lo + hi);
            const double m = charged_point(base, mid, grid.scan_dt).coherence - kTableCoherenceAtZero;
            ((m < 0.0) == rising ? lo : hi) = mid;
        }
        const double root = 0.5 * (lo + hi);
        out.candidates.push_back({root, charged_point(base, root, grid.scan_dt).ergotropy});
    }

    double chosen = b[0];
    if (out.candidates.empty()) {
        out.bracketed = false;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(miss[i]) < best) {
                best = std::abs(miss[i]);
                chosen = b[i];
            }
        }
    } else {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : out.candidates) {
            const double d = std::abs(c.ergotropy - kTableErgotropyAtZero);
            if (d < best) {
                best = d;
                chosen = c.b_s;
            }
        }
    }

    const auto final_point = charged_point(base, chosen, production_dt);
    out.b_s = chosen;
    out.coherence = final_point.coherence;
    out.ergotropy = final_point.ergotropy;
    out.coherence_residual = final_point.coherence - kTableCoherenceAtZero;
    out.ergotropy_residual = final_point.ergotropy - kTableErgotropyAtZero;
    return out;
}

} // namespace qbat
