// model.cpp

#include "qbat/model.hpp"

#include "qbat/eigen.hpp"
#include "qbat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbat {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw ValidationError(field, "must be finite");
    }
}

} // namespace

void ModelParams::validate() const {
    require_finite(lambda, "lambda");
    require_finite(alpha, "alpha");
    require_finite(eta, "eta");
    require_finite(n_x, "n_x");
    require_finite(n_y, "n_y");
    require_finite(b_s, "b_s");
    require_finite(tau, "tau");
    if (!(lambda > 0.0)) {
        throw ValidationError("lambda", "must be > 0");
    }
    if (!(tau > 0.0)) {
        throw ValidationError("tau", "must be > 0");
    }
    if (b_s < 0.0) {
        throw ValidationError("b_s", "must be >= 0");
    }
    if (!std::isfinite(k1()) || !std::isfinite(k2())) {
        throw ValidationError("eta", "eta * n / lambda overflows");
    }
}

std::array<double, 4> SpectrumClosedForm::ascending() const {
    std::array<double, 4> e{e1, e2, e3, e4};
    std::sort(e.begin(), e.end());
    return e;
}

ComplexMatrix build_h0(const ModelParams& p) {
    p.validate();
    const double eta_r = p.eta / p.lambda;
    const Complex hop = std::polar(1.0, -p.alpha);            // e^{-i alpha}
    const Complex kin_minus = eta_r * Complex{p.n_x, -p.n_y}; // eta~ (n_x - i n_y)
    const Complex kin_plus = eta_r * Complex{p.n_x, p.n_y};

    ComplexMatrix h{
        {1.0, hop, kin_minus, 0.0},
        {std::conj(hop), 1.0, 0.0, kin_plus},
        {kin_plus, 0.0, 1.0, hop},
        {0.0, kin_minus, std::conj(hop), 1.0},
    };
    h *= p.lambda;
    return h;
}

SpectrumClosedForm closed_form_spectrum(const ModelParams& p) {
    p.validate();
    const double k1 = p.k1();
    const double k2 = p.k2();
    const double r_plus = std::sqrt(1.0 + k1 * k1 + 2.0 * k1 + k2 * k2);
    const double r_minus = std::sqrt(1.0 + k1 * k1 - 2.0 * k1 + k2 * k2);
    return {p.lambda * (1.0 - r_plus), p.lambda * (1.0 + r_plus), p.lambda * (1.0 - r_minus),
            p.lambda * (1.0 + r_minus)};
}

DensityMatrix ground_state(const ModelParams& p) {
    const auto eig = hermitian_eigen(build_h0(p));
    if (eig.values[1] - eig.values[0] < kTolerances.degeneracy) {
        throw DegeneracyError("ground_state: lowest level of H0 is degenerate (gap " +
                              std::to_string(eig.values[1] - eig.values[0]) + ")");
    }
    std::array<Complex, kBatteryDim> psi{};
    for (std::size_t r = 0; r < kBatteryDim; ++r) {
        psi[r] = eig.vectors(r, 0);
    }
    return DensityMatrix::pure(psi);
}

ComplexMatrix pulse_hamiltonian(const ModelParams& p, double t) {
    const double envelope = p.b_s * std::exp(-t * t / (2.0 * p.tau * p.tau));
    return ComplexMatrix::diagonal({envelope, -envelope, envelope, -envelope});
}

ChargingWindow charging_window(const ModelParams& p) noexcept {
    return {kPulseCenterInWidths * p.tau, 2.0 * kPulseCenterInWidths * p.tau};
}

} // namespace qbat
