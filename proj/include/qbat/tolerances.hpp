// tolerances.hpp - numerical thresholds used across the library, tests and CLI

#pragma once

namespace qbat {

struct Tolerances {
    double hermitian_input = 1e-9;   // max |a - a^dagger| accepted as Hermitian
    double eigen_offdiag = 1e-12;    // Jacobi convergence threshold
    int eigen_max_sweeps = 100;
    double trace = 1e-9;             // |Tr rho - 1| accepted for a density matrix
    double positivity = 1e-6;        // most negative eigenvalue accepted
    double energy_imag = 1e-10;      // admissible imaginary residue of Tr[H rho]
    double ergotropy_floor = 1e-10;  // raw ergotropy in [-floor, 0) is clamped to 0
    double renormalize = 1e-12;      // per-step trace drift that triggers renormalization
    double degeneracy = 1e-9;        // ground-level gap below which the ground state is ambiguous
};

inline constexpr Tolerances kTolerances{};

} // namespace qbat
