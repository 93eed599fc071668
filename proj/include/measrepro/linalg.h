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

#ifndef MEASREPRO_LINALG_H_
#define MEASREPRO_LINALG_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "measrepro/matrix.h"

namespace measrepro {

inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 16;

/// Kronecker product A (x) B. Throws DimensionTooLarge when either output
/// dimension exceeds `cap`.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t cap = kDefaultDimensionCap);

/// Kronecker product of a list of factors, left to right.
ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors, std::size_t cap = kDefaultDimensionCap);

/// Traces out every subsystem not listed in `keep`. Subsystem k has dimension
/// dims[k]; subsystem 0 is the most significant in the row-major index.
ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

struct EigenDecomposition {
    /// Sorted descending.
    std::vector<double> values;
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    ComplexMatrix vectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Rotations are skipped once an off-diagonal entry falls below
/// 1e-13 * max(1, ||M||_F); at most 100 sweeps are made. Each eigenvector is
/// phase-fixed so its first non-negligible entry is real and positive. Within a
/// group of eigenvalues closer than 1e-12 the eigenvectors are ordered by
/// descending lexicographic comparison of their (re, im) entries, so the
/// output is a deterministic function of the input.
EigenDecomposition hermitian_eig(const ComplexMatrix &m);

/// Applies a real function to the spectrum of a Hermitian matrix.
ComplexMatrix hermitian_function(const ComplexMatrix &m, const std::function<double(double)> &f);

/// Square root of a positive semidefinite matrix; tiny negative eigenvalues
/// from rounding are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

/// Swap operator on C^d (x) C^d.
ComplexMatrix swap_operator(std::size_t d);

}  // namespace measrepro

#endif  // MEASREPRO_LINALG_H_
