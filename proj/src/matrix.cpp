// matrix.cpp - dense complex matrix arithmetic

#include "qbat/matrix.hpp"

#include "qbat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbat {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw UsageError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
    }
}

bool finite(const Complex& z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {
    if (dim == 0) {
        throw ValidationError("dim", "matrix dimension must be >= 1");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) {
        throw ValidationError("dim", "matrix dimension must be >= 1");
    }
    if (data_.size() != dim * dim) {
        throw ValidationError("entries", "expected " + std::to_string(dim * dim) + " entries, got " +
                                             std::to_string(data_.size()));
    }
    if (!all_finite()) {
        throw ValidationError("entries", "non-finite matrix entry");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    if (dim_ == 0) {
        throw ValidationError("dim", "matrix dimension must be >= 1");
    }
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) {
            throw ValidationError("entries", "matrix literal is not square");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!all_finite()) {
        throw ValidationError("entries", "non-finite matrix entry");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError("entries", "non-finite matrix entry");
        }
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "mat_add");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "mat_sub");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) noexcept {
    for (auto& z : data_) {
        z *= s;
    }
    return *this;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), finite);
}

ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = a;
    out += b;
    return out;
}

ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = a;
    out -= b;
    return out;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "mat_mul");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

Complex trace(const ComplexMatrix& a) noexcept {
    Complex sum{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        sum += a(i, i);
    }
    return sum;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return mat_mul(a, b) - mat_mul(b, a);
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return mat_mul(a, b) + mat_mul(b, a);
}

double max_abs(const ComplexMatrix& a) noexcept {
    double m = 0.0;
    for (const auto& z : a.entries()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

double hermiticity_error(const ComplexMatrix& a) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i; j < a.dim(); ++j) {
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return m;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
            out(i, j) = z;
            out(j, i) = std::conj(z);
        }
    }
    return out;
}

namespace ops {

ComplexMatrix sigma_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return ComplexMatrix{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}; }
ComplexMatrix sigma_z() { return ComplexMatrix::diagonal({1.0, -1.0}); }
ComplexMatrix lowering() { return ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix raising() { return ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}; }

} // namespace ops

} // namespace qbat
