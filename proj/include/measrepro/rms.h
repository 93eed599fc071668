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

#ifndef MEASREPRO_RMS_H_
#define MEASREPRO_RMS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "measrepro/matrix.h"
#include "measrepro/quantum.h"

namespace measrepro::rms {

/// Haar-averaged reproduction error. The estimated quantity is eps^2; `value`
/// is its square root and `standard_error` is mapped through the root by the
/// delta method. Closed-form results carry standard_error = 0.
struct RmsEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Rows indexed by outcome a, columns by basis state i: x[a][i] = <i|M_a|i>.
using OutcomeTable = std::vector<std::vector<double>>;

/// eps for a two-outcome qubit implementation with M_0 = [[x, z], [z*, y]]:
/// eps^2 = ((1 - x - y)^2 + (1 - x) y + |z|^2) / 3.
double rms_closed_form_qubit(double x, double y, cplx z = 0.0);

enum class QuditNormalization {
    /// 1 / (m d (d + 1)): averages over outcomes, matches the qubit form at d = m = 2.
    kOutcomeAverage,
    /// 1 / (d (d + 1)): sum over outcomes, no 1/m.
    kOutcomeSum,
};

/// eps for an implemented measurement diagonal in the target basis, from the
/// table x[a][i] (m rows, d columns, m = d):
/// eps^2 = c * sum_a [(sum_i x_ai - 1)^2 + sum_i x_ai^2 - 2 x_aa + 1].
double rms_closed_form_qudit(const OutcomeTable &x, std::size_t d, std::size_t m,
                             QuditNormalization norm = QuditNormalization::kOutcomeAverage);

/// Exact Haar average of (1/m) sum_i <psi|M_i - T_i|psi>^2, evaluated through
/// the second-moment identity int (psi psi)^{(x)2} = 2 Pi_sym / (d (d + 1)).
/// Holds for any pair of POVMs, diagonal or not.
double rms_exact_povm(const Povm &impl, const Povm &target);

/// Monte Carlo estimate of the same quantity. Throws TooFewSamples below 100.
RmsEstimate rms_monte_carlo_povm(const Povm &impl, const Povm &target, std::size_t samples, std::uint64_t seed);

/// Monte Carlo estimate of
/// eps^2 = int dpsi (1/m) sum_i ||Lambda_i(psi psi) - Gamma_i(psi psi)||_F^2
/// with outcome labels aligned between the two instruments.
RmsEstimate rms_monte_carlo_instrument(const Instrument &impl, const Instrument &target, std::size_t samples,
                                       std::uint64_t seed);

/// (I + SWAP) / 2 on C^d (x) C^d.
ComplexMatrix symmetric_subspace_projector(std::size_t d);

}  // namespace measrepro::rms

#endif  // MEASREPRO_RMS_H_
