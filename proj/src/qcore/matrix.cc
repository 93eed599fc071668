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

#include "measrepro/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "measrepro/errors.h"

namespace measrepro {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::kShapeMismatch,
                    std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw Error(ErrorCode::kShapeMismatch, "entry count " + std::to_string(entries_.size()) +
                                                   " does not match " + std::to_string(rows_) + "x" +
                                                   std::to_string(cols_));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const cplx> u) {
    ComplexMatrix m(u.size(), u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        m(i, i) = std::norm(u[i]);
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            m(i, j) = u[i] * std::conj(u[j]);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

std::vector<cplx> ComplexMatrix::column(std::size_t c) const {
    std::vector<cplx> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &e : entries_) {
        s += std::norm(e);
    }
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) {
        return false;
    }
    double defect = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            defect += std::norm((*this)(r, c) - std::conj((*this)(c, r)));
        }
    }
    return std::sqrt(defect) <= tol * std::max(1.0, frobenius_norm());
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
        }
    }
    return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx scalar) {
    for (auto &e : entries_) {
        e *= scalar;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(ComplexMatrix a, cplx scalar) {
    a *= scalar;
    return a;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix a) {
    a *= scalar;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::kShapeMismatch, "matrix product: inner dimensions " + std::to_string(a.cols()) +
                                                   " and " + std::to_string(b.rows()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

std::vector<cplx> apply(const ComplexMatrix &m, std::span<const cplx> v) {
    if (m.cols() != v.size()) {
        throw Error(ErrorCode::kShapeMismatch, "matrix-vector product: " + std::to_string(m.cols()) + " vs " +
                                                   std::to_string(v.size()));
    }
    std::vector<cplx> out(m.rows(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc = 0.0;
        auto row = m.row(i);
        for (std::size_t j = 0; j < v.size(); ++j) {
            acc += row[j] * v[j];
        }
        out[i] = acc;
    }
    return out;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) {
        throw Error(ErrorCode::kShapeMismatch, "inner product of vectors with different lengths");
    }
    cplx acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

cplx sandwich(std::span<const cplx> u, const ComplexMatrix &m, std::span<const cplx> v) {
    return inner(u, apply(m, v));
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "frobenius distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        s += std::norm(a.entries()[i] - b.entries()[i]);
    }
    return std::sqrt(s);
}

double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "entrywise difference");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

StateVector::StateVector(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {
    double n = 0.0;
    for (const auto &a : amplitudes_) {
        n += std::norm(a);
    }
    if (amplitudes_.empty() || std::abs(n - 1.0) > 1e-12) {
        throw Error(ErrorCode::kInvalidArgument, "state vector is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
}

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
    double n = 0.0;
    for (const auto &a : amplitudes) {
        n += std::norm(a);
    }
    if (!(n > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero vector");
    }
    const double scale = 1.0 / std::sqrt(n);
    for (auto &a : amplitudes) {
        a *= scale;
    }
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    std::vector<cplx> a(dim, cplx{0.0, 0.0});
    a[index] = 1.0;
    return StateVector(std::move(a));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<cplx> out;
    out.reserve(a.dim() * b.dim());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            out.push_back(x * y);
        }
    }
    return StateVector::normalized(std::move(out));
}

}  // namespace measrepro
