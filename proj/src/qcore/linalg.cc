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

#include "measrepro/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "measrepro/errors.h"

namespace measrepro {

namespace {

constexpr double kJacobiThreshold = 1e-13;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kTieTolerance = 1e-12;
constexpr double kNegligible = 1e-12;

std::size_t checked_product(std::size_t a, std::size_t b, std::size_t cap) {
    if (a != 0 && b > cap / a) {
        throw Error(ErrorCode::kDimensionTooLarge, "dimension " + std::to_string(a) + " x " + std::to_string(b) +
                                                       " exceeds cap " + std::to_string(cap));
    }
    const std::size_t p = a * b;
    if (p > cap) {
        throw Error(ErrorCode::kDimensionTooLarge,
                    "dimension " + std::to_string(p) + " exceeds cap " + std::to_string(cap));
    }
    return p;
}

// Strict "a comes before b" for two eigenvectors sharing an eigenvalue.
bool lexicographically_greater(std::span<const cplx> a, std::span<const cplx> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].real() - b[i].real()) > kNegligible) {
            return a[i].real() > b[i].real();
        }
        if (std::abs(a[i].imag() - b[i].imag()) > kNegligible) {
            return a[i].imag() > b[i].imag();
        }
    }
    return false;
}

}  // namespace

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t cap) {
    const std::size_t rows = checked_product(a.rows(), b.rows(), cap);
    const std::size_t cols = checked_product(a.cols(), b.cols(), cap);
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors, std::size_t cap) {
    if (factors.empty()) {
        return ComplexMatrix::identity(1);
    }
    std::size_t rows = 1;
    std::size_t cols = 1;
    for (const auto &f : factors) {
        if (f.rows() != 0 && rows > cap / f.rows()) {
            throw Error(ErrorCode::kDimensionTooLarge, "tensor product dimension exceeds cap " + std::to_string(cap));
        }
        if (f.cols() != 0 && cols > cap / f.cols()) {
            throw Error(ErrorCode::kDimensionTooLarge, "tensor product dimension exceeds cap " + std::to_string(cap));
        }
        rows *= f.rows();
        cols *= f.cols();
    }
    ComplexMatrix acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) {
        acc = tensor(acc, factors[i], cap);
    }
    return acc;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    std::size_t total = 1;
    for (auto d : dims) {
        total *= d;
    }
    if (!m.is_square() || total != m.rows()) {
        throw Error(ErrorCode::kShapeMismatch, "partial trace: subsystem dimensions multiply to " +
                                                   std::to_string(total) + " but matrix is " +
                                                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw Error(ErrorCode::kShapeMismatch, "partial trace: invalid keep index " + std::to_string(k));
        }
        kept[k] = true;
    }

    // Split every full index into (kept part, traced part).
    std::vector<std::size_t> kept_index(total), traced_index(total);
    std::size_t kept_dim = 1;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        if (kept[s]) {
            kept_dim *= dims[s];
        }
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::size_t k_idx = 0, t_idx = 0, k_stride = 1, t_stride = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            const std::size_t digit = rem % dims[s];
            rem /= dims[s];
            if (kept[s]) {
                k_idx += digit * k_stride;
                k_stride *= dims[s];
            } else {
                t_idx += digit * t_stride;
                t_stride *= dims[s];
            }
        }
        kept_index[idx] = k_idx;
        traced_index[idx] = t_idx;
    }

    ComplexMatrix out(kept_dim, kept_dim);
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            if (traced_index[r] == traced_index[c]) {
                out(kept_index[r], kept_index[c]) += m(r, c);
            }
        }
    }
    return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorCode::kShapeMismatch, "eigendecomposition of a non-square matrix");
    }
    if (!m.is_hermitian(1e-12)) {
        throw Error(ErrorCode::kNotHermitian, "matrix fails the Hermitian tolerance");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = m.hermitian_part();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = kJacobiThreshold * std::max(1.0, m.frobenius_norm());

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= threshold) {
                    continue;
                }
                rotated = true;
                // Phase e^{-i phi} on column q makes the (p,q) entry real, then a
                // real Jacobi rotation [[c, s], [-s, c]] annihilates it.
                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx jpp = c;
                const cplx jpq = s;
                const cplx jqp = -s * std::conj(phase);
                const cplx jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<std::vector<cplx>> columns(n);
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = a(j, j).real();
        columns[j] = v.column(j);
        for (const auto &e : columns[j]) {
            if (std::abs(e) > kNegligible) {
                const cplx fix = std::conj(e) / std::abs(e);
                for (auto &x : columns[j]) {
                    x *= fix;
                }
                break;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
    // Reorder runs of near-equal eigenvalues by eigenvector entries.
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && values[order[end - 1]] - values[order[end]] <= kTieTolerance) {
            ++end;
        }
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t i, std::size_t j) { return lexicographically_greater(columns[i], columns[j]); });
        start = end;
    }

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = values[order[j]];
        for (std::size_t k = 0; k < n; ++k) {
            out.vectors(k, j) = columns[order[j]][k];
        }
    }
    return out;
}

ComplexMatrix hermitian_function(const ComplexMatrix &m, const std::function<double(double)> &f) {
    const auto eig = hermitian_eig(m);
    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double fj = f(eig.values[j]);
        if (fj == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
            const cplx vr = eig.vectors(r, j) * fj;
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(eig.vectors(c, j));
            }
        }
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix swap_operator(std::size_t d) {
    ComplexMatrix s(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            s(i * d + j, j * d + i) = 1.0;
        }
    }
    return s;
}

}  // namespace measrepro
