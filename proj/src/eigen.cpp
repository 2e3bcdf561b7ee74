// eigen.cpp - cyclic Jacobi for complex Hermitian matrices

#include "qbat/eigen.hpp"

#include "qbat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbat {

namespace {

double max_offdiag(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            m = std::max(m, std::abs(a(i, j)));
        }
    }
    return m;
}

// Applies the unitary J acting on the (p, q) plane:
//   J_pp = c, J_pq = s, J_qp = -s e^{-i phi}, J_qq = c e^{-i phi}
// which is diag(1, e^{-i phi}) times a real Givens rotation. A <- J^dagger A J
// annihilates a_pq; V <- V J accumulates the eigenvectors.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    const Complex phase = apq / mag;  // e^{i phi}
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex jpp = c;
    const Complex jpq = s;
    const Complex jqp = -s * std::conj(phase);
    const Complex jqq = c * std::conj(phase);

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

} // namespace

EigenDecomposition hermitian_eigen(const ComplexMatrix& input, double tol, int max_sweeps) {
    if (!(tol > 0.0)) {
        throw ValidationError("tol", "eigensolver tolerance must be positive");
    }
    if (hermiticity_error(input) > kTolerances.hermitian_input) {
        throw ValidationError("matrix", "hermitian_eigen requires a Hermitian matrix");
    }

    const std::size_t n = input.dim();
    ComplexMatrix a = hermitian_part(input);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = tol * std::max(1.0, max_abs(a));

    int sweeps = 0;
    while (max_offdiag(a) >= threshold) {
        if (sweeps == max_sweeps) {
            throw NumericalError("hermitian_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > 0.0) {
                    rotate(a, v, p, q);
                }
            }
        }
        ++sweeps;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n), sweeps};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

ComplexMatrix reconstruct(const EigenDecomposition& eig) {
    const std::size_t n = eig.vectors.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum{};
            for (std::size_t k = 0; k < n; ++k) {
                sum += eig.vectors(i, k) * eig.values[k] * std::conj(eig.vectors(j, k));
            }
            out(i, j) = sum;
        }
    }
    return out;
}

} // namespace qbat
