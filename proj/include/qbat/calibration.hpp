// calibration.hpp - fitting the pulse amplitude to the tabulated charged state

#pragma once

#include "qbat/model.hpp"

#include <vector>

namespace qbat {

// t = 0 row of the amplitude-damping reference tables.
inline constexpr double kTableCoherenceAtZero = 2.1013;
inline constexpr double kTableErgotropyAtZero = 1.8133;

// Output of calibrate_pulse_amplitude() with the default grid; presets use it
// directly. A unit test re-derives it.
inline constexpr double kCalibratedPulseAmplitude = 7.8662106451392173;

struct CalibrationGrid {
    double lo = 0.0;
    double hi = 10.0;
    double step = 0.01;
    double scan_dt = 1e-3;      // charging step used while scanning and bisecting
    double bisect_tol = 1e-9;   // bracket width at which a root is accepted
};

struct CalibrationCandidate {
    double b_s = 0.0;
    double ergotropy = 0.0;     // at the root, scan_dt accuracy
};

struct CalibrationResult {
    double b_s = 0.0;
    double coherence = 0.0;     // charged state at the production charging step
    double ergotropy = 0.0;
    double coherence_residual = 0.0;
    double ergotropy_residual = 0.0;
    std::vector<CalibrationCandidate> candidates;
    CalibrationGrid grid;
    bool bracketed = true;      // false: no crossing found, best grid point returned
};

// Scans b_s over the grid, bisects every crossing of C_l1(charged) with
// kTableCoherenceAtZero, and keeps the root whose charged-state ergotropy is
// closest to kTableErgotropyAtZero. The coherence alone has many roots on the
// grid; the ergotropy picks among them.
CalibrationResult calibrate_pulse_amplitude(const ModelParams& base, const CalibrationGrid& grid = {},
                                            double production_dt = 1e-4);

} // namespace qbat
