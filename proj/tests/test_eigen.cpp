#include "qbat/eigen.hpp"
#include "qbat/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace qbat;

TEST_CASE("random Hermitian matrices reconstruct with orthonormal vectors") {
    std::mt19937_64 rng(11);
    for (std::size_t d : {1u, 2u, 3u, 4u, 6u, 8u}) {
        for (int k = 0; k < 40; ++k) {
            const auto a = testing::random_hermitian(rng, d);
            const auto eig = hermitian_eigen(a);
            CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
            CHECK(max_abs_diff(reconstruct(eig), a) < 1e-10);
            CHECK(max_abs_diff(adjoint(eig.vectors) * eig.vectors, ComplexMatrix::identity(d)) < 1e-10);
        }
    }
}

TEST_CASE("diagonal input and degeneracies") {
    const auto eig = hermitian_eigen(ComplexMatrix::diagonal({3.0, -1.0, 3.0, 0.5}));
    CHECK(eig.values == std::vector<double>{-1.0, 0.5, 3.0, 3.0});
    CHECK(eig.sweeps <= 1);

    const auto x = hermitian_eigen(ops::sigma_x());
    CHECK(x.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(x.values[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto y = hermitian_eigen(ops::sigma_y());
    CHECK(max_abs_diff(reconstruct(y), ops::sigma_y()) < 1e-14);
}

TEST_CASE("invalid input") {
    ComplexMatrix a{{1.0, 2.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(hermitian_eigen(a), ValidationError);
    CHECK_THROWS_AS(hermitian_eigen(ops::sigma_x(), 0.0), ValidationError);
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(hermitian_eigen(testing::random_hermitian(rng, 6), 1e-14, 0), NumericalError);
}
