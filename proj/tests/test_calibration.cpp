#include "qbat/calibration.hpp"
#include "qbat/dynamics.hpp"
#include "qbat/observables.hpp"

#include <doctest.h>

#include <cmath>

using namespace qbat;

TEST_CASE("calibration re-derives the frozen pulse amplitude") {
    const auto r = calibrate_pulse_amplitude(ModelParams{});
    CHECK(r.bracketed);
    CHECK(r.candidates.size() > 1);
    CHECK(r.b_s == doctest::Approx(kCalibratedPulseAmplitude).epsilon(1e-8));
    CHECK(std::abs(r.coherence_residual) < 1e-6);

    // independent check of the charged state at the frozen amplitude
    ModelParams p;
    p.b_s = kCalibratedPulseAmplitude;
    const auto rho = charge_battery(p, 1e-4);
    CHECK(l1_coherence(rho) == doctest::Approx(kTableCoherenceAtZero).epsilon(1e-6));
    CHECK(std::abs(ergotropy(rho, build_h0(p)) - kTableErgotropyAtZero) < 0.02);
}
