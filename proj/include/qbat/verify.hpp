// verify.hpp - comparison of simulated trajectories against the reference tables

#pragma once

#include "qbat/calibration.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qbat {

struct TableRow {
    double t;
    double coherence;
    double ergotropy;
    std::array<double, 4> populations;  // diagonal of rho in the computational basis
};

struct ReferenceTable {
    std::string name;
    std::string preset;
    std::vector<TableRow> rows;
};

const std::vector<ReferenceTable>& reference_tables();

struct VerifyTolerances {
    double relative = 0.10;          // C_l1 and ergotropy cells
    double absolute_floor = 5e-4;    // cells whose tabulated value rounds to ~0
    double population = 0.01;
    double plateau = 1e-3;
    double weak_decay_fraction = 0.25;
    double dephasing_coherence = 0.02;
    double dephasing_ergotropy = 0.01;
    double dephasing_eigenvalue = 0.01;
    double backflow_margin = 0.02;
};

struct VerifyOptions {
    bool skip_calibration = false;
    VerifyTolerances tol;
    CalibrationGrid grid;
};

struct TableCell {
    std::string table;
    double t = 0.0;
    std::string quantity;
    double reference = 0.0;
    double simulated = 0.0;
    double delta = 0.0;
    bool pass = false;
};

struct QualitativeCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    double b_s = 0.0;
    std::optional<CalibrationResult> calibration;  // empty when skipped
    std::vector<TableCell> cells;
    std::vector<QualitativeCheck> checks;

    bool qualitative_pass() const;
    std::size_t cells_passed() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

// Runs every preset referenced by the tables, compares cells at the tabulated
// times and evaluates the calibration-independent checks. Always returns a
// report; numerical failures propagate.
VerifyReport verify_tables(const VerifyOptions& options = {});

} // namespace qbat
