// matrix.hpp - dense square complex matrices for small open-system models

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qbat {

using Complex = std::complex<double>;

// Square matrix with row-major storage. Constructors reject non-finite
// entries; arithmetic does not re-check (the integrator guards each step).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s) noexcept;

    bool all_finite() const noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a) noexcept;

// [a, b] and {a, b}
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& a) noexcept;
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_error(const ComplexMatrix& a) noexcept;  // max |a - a^dagger|

// (a + a^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_sub(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

namespace ops {

// Single pseudospin operators in the basis {|0>, |1>}.
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
// |0><1|: removes the excitation carried by |1>, so |0> is the empty level.
ComplexMatrix lowering();
// |1><0|
ComplexMatrix raising();

} // namespace ops

} // namespace qbat
