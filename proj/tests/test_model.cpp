#include "qbat/eigen.hpp"
#include "qbat/errors.hpp"
#include "qbat/model.hpp"
#include "qbat/observables.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace qbat;

namespace {

// Literal matrix written out entry by entry, Hermitian completion by hand.
ComplexMatrix h0_oracle(const ModelParams& p) {
    const Complex i(0.0, 1.0);
    const double et = p.eta / p.lambda;
    const Complex a = std::exp(-i * p.alpha);
    const Complex m = et * Complex(p.n_x, -p.n_y);
    const Complex pl = et * Complex(p.n_x, p.n_y);
    ComplexMatrix h{{1.0, a, m, 0.0},
                    {std::conj(a), 1.0, 0.0, pl},
                    {std::conj(m), 0.0, 1.0, a},
                    {0.0, std::conj(pl), std::conj(a), 1.0}};
    h *= Complex(p.lambda);
    return h;
}

} // namespace

TEST_CASE("H0 at the default parameters") {
    const ModelParams p;
    const auto h = build_h0(p);
    CHECK(max_abs_diff(h, h0_oracle(p)) < 1e-15);
    CHECK(hermiticity_error(h) == 0.0);
    CHECK(h(0, 1).real() == doctest::Approx(0.70710678118654752));
    CHECK(h(0, 1).imag() == doctest::Approx(-0.70710678118654752));
    CHECK(h(0, 2) == Complex(0.5, -2.5));
}

TEST_CASE("H0 without kinetic coupling") {
    ModelParams p;
    p.eta = 0.0;
    p.lambda = 1.7;
    const auto h = build_h0(p);
    CHECK(max_abs_diff(h, h0_oracle(p)) < 1e-15);
    CHECK(h(0, 2) == Complex(0.0));
    CHECK(h(1, 3) == Complex(0.0));
    const auto s = closed_form_spectrum(p).ascending();
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s[3] == doctest::Approx(2.0 * 1.7));
}

TEST_CASE("closed-form spectrum at the defaults") {
    const auto s = closed_form_spectrum(ModelParams{});
    CHECK(s.e1 == doctest::Approx(1.0 - std::sqrt(8.5)).epsilon(1e-14));
    CHECK(s.e2 == doctest::Approx(1.0 + std::sqrt(8.5)).epsilon(1e-14));
    CHECK(s.e3 == doctest::Approx(1.0 - std::sqrt(6.5)).epsilon(1e-14));
    CHECK(s.e4 == doctest::Approx(1.0 + std::sqrt(6.5)).epsilon(1e-14));
    CHECK(s.e1 == doctest::Approx(-1.91548).epsilon(1e-5));
    CHECK(s.e3 == doctest::Approx(-1.54951).epsilon(1e-5));
}

TEST_CASE("closed-form spectrum equals the numerical spectrum for random parameters") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> lam(0.1, 3.0), ang(-4.0, 4.0), eta(-1.0, 1.0), n(-6.0, 6.0);
    for (int k = 0; k < 100; ++k) {
        ModelParams p;
        p.lambda = lam(rng);
        p.alpha = ang(rng);
        p.eta = eta(rng);
        p.n_x = n(rng);
        p.n_y = n(rng);
        const auto numeric = hermitian_eigen(build_h0(p)).values;
        const auto closed = closed_form_spectrum(p).ascending();
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(numeric[i] - closed[i]) < 1e-10);
        }
    }
}

TEST_CASE("ground state") {
    const ModelParams p;
    const auto rho = ground_state(p);
    const auto& m = rho.matrix();
    CHECK(std::abs(trace(m) - 1.0) < 1e-12);
    CHECK(std::abs(trace(m * m) - 1.0) < 1e-10);
    CHECK(energy(rho, build_h0(p)) == doctest::Approx(1.0 - std::sqrt(8.5)).epsilon(1e-10));
    CHECK(ergotropy(rho, build_h0(p)) < 1e-10);

    ModelParams degenerate;
    degenerate.eta = 0.0;
    CHECK_THROWS_AS(ground_state(degenerate), DegeneracyError);
}

TEST_CASE("pulse Hamiltonian") {
    ModelParams p;
    p.b_s = 2.5;
    p.tau = 0.8;
    const auto peak = pulse_hamiltonian(p, 0.0);
    CHECK(max_abs_diff(peak, ComplexMatrix::diagonal({2.5, -2.5, 2.5, -2.5})) == 0.0);
    CHECK(pulse_hamiltonian(p, p.tau)(0, 0).real() == doctest::Approx(2.5 * std::exp(-0.5)));
    CHECK(max_abs(pulse_hamiltonian(p, 10.0 * p.tau)) < 2.5 * 2e-22);
    for (double t : {-3.0, -0.2, 0.0, 0.7, 4.0}) {
        CHECK(std::abs(trace(pulse_hamiltonian(p, t))) < 1e-15);
        CHECK(max_abs(commutator(pulse_hamiltonian(p, t), peak)) == 0.0);
    }
    CHECK(max_abs(commutator(build_h0(p), peak)) > 0.1);

    const auto w = charging_window(p);
    CHECK(w.center == doctest::Approx(4.0));
    CHECK(w.duration == doctest::Approx(8.0));
}

TEST_CASE("parameter validation names the field") {
    ModelParams p;
    p.tau = -1.0;
    try {
        p.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "tau");
    }
    p = ModelParams{};
    p.lambda = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = ModelParams{};
    p.b_s = -0.1;
    CHECK_THROWS_AS(build_h0(p), ValidationError);
}
