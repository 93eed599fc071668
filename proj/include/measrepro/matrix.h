// Copyright 2026 The measrepro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEASREPRO_MATRIX_H_
#define MEASREPRO_MATRIX_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace measrepro {

using cplx = std::complex<double>;

/// Dense complex matrix stored row-major. This is the substrate for every
/// operator in the library: POVM elements, Kraus operators, density matrices,
/// unitaries and isometries.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |u><v|
    static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);
    /// |u><u|
    static ComplexMatrix projector(std::span<const cplx> u);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }

    cplx &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<const cplx> entries() const noexcept {
        return entries_;
    }
    std::span<cplx> entries() noexcept {
        return entries_;
    }
    std::span<const cplx> row(std::size_t r) const {
        return std::span<const cplx>(entries_).subspan(r * cols_, cols_);
    }
    std::vector<cplx> column(std::size_t c) const;

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    /// ||M - M^dagger||_F <= tol * max(1, ||M||_F)
    bool is_hermitian(double tol = 1e-12) const;
    /// (M + M^dagger) / 2
    ComplexMatrix hermitian_part() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cplx scalar);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, cplx scalar);
ComplexMatrix operator*(cplx scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

std::vector<cplx> apply(const ComplexMatrix &m, std::span<const cplx> v);
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
/// <u|M|v>
cplx sandwich(std::span<const cplx> u, const ComplexMatrix &m, std::span<const cplx> v);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// Largest |a_ij - b_ij|.
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b);

/// Unit-norm pure state. Construction normalizes nothing: amplitudes must
/// already satisfy sum |a|^2 = 1 within 1e-12.
class StateVector {
   public:
    StateVector() = default;
    explicit StateVector(std::vector<cplx> amplitudes);

    /// Scales arbitrary nonzero amplitudes to unit norm.
    static StateVector normalized(std::vector<cplx> amplitudes);
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept {
        return amplitudes_.size();
    }
    std::span<const cplx> amplitudes() const noexcept {
        return amplitudes_;
    }
    const cplx &operator[](std::size_t i) const {
        return amplitudes_[i];
    }
    ComplexMatrix density() const {
        return ComplexMatrix::projector(amplitudes_);
    }

   private:
    std::vector<cplx> amplitudes_;
};

StateVector tensor(const StateVector &a, const StateVector &b);

}  // namespace measrepro

#endif  // MEASREPRO_MATRIX_H_
