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

// The two universal sub-routines: realizing any instrument from a von Neumann
// measurement on a larger space, and realizing a von Neumann measurement from
// many uses of any non-trivial POVM by cloning into a distinguishable basis.

#ifndef MEASREPRO_SUBROUTINES_H_
#define MEASREPRO_SUBROUTINES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "measrepro/matrix.h"
#include "measrepro/quantum.h"
#include "measrepro/rng.h"

namespace measrepro::subroutines {

/// W : C^d -> C^d (x) C^m (x) C^r with W|psi> = sum_{a,j} K_j^a|psi> |a> |j>.
/// Registers are ordered (system, outcome, Kraus index); Kraus slots beyond an
/// outcome's rank are zero.
struct MeasurementIsometry {
    std::size_t input_dim = 0;
    std::size_t outcome_dim = 0;
    std::size_t kraus_dim = 0;
    ComplexMatrix w;
};

/// Throws NotNormalized if W^dagger W deviates from I by more than 1e-10.
MeasurementIsometry build_measurement_isometry(const Instrument &target);

struct PostMeasurementBranch {
    std::size_t outcome = 0;
    double probability = 0.0;
    /// Absent when the outcome has probability below 1e-14.
    std::optional<ComplexMatrix> post_state;
};

/// Applies W, measures the outcome register in the computational basis and
/// traces out the Kraus register. One branch per outcome, in outcome order.
std::vector<PostMeasurementBranch> run_post_measurement(const Instrument &target, const StateVector &psi);

/// Packing of m outcome labels into k registers of dimension d.
struct OutcomeEmbedding {
    std::size_t registers = 0;
    std::size_t register_dim = 0;
    /// labels[a] holds the k digits of outcome a, most significant first.
    std::vector<std::vector<std::size_t>> labels;
};

/// k = ceil(log_d m), outcome a mapped to its base-d digits.
OutcomeEmbedding embed_outcomes(std::size_t outcomes, std::size_t register_dim);

// ---------------------------------------------------------------------------
// Generalized classical cloning.

/// Rows of the table are P(.|i) = <e_i|M_a|e_i>.
using DistributionTable = std::vector<std::vector<double>>;

inline constexpr double kDistinctRows = 1e-6;

struct CloningBasis {
    std::vector<StateVector> states;
    DistributionTable table;
    /// Angle of the last rotation applied, 0 when none was needed.
    double theta = 0.0;
    std::size_t rotations = 0;
};

/// P(a|i) for the given basis states.
DistributionTable cloning_distributions(const Povm &available, std::span<const StateVector> basis);

/// Total-variation distance (1/2) sum_a |p_a - q_a|.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Starts from the computational basis and separates rows that coincide:
/// first by diagonalizing a POVM element inside the colliding pair's span,
/// otherwise by rotating one of the pair against a basis state with a
/// distinct row, cos(theta)|low> + sin(theta)|high>, with theta scanned over
/// pi/8, pi/16, ... until the number of colliding pairs drops.
/// Throws TrivialMeasurement when every element is proportional to I.
CloningBasis select_cloning_basis(const Povm &available);

/// argmax_i prod_k P(a_k|i) through log-likelihoods, ties to the smallest
/// index. A hypothesis with P(a_k|i) = 0 for some k is eliminated; nullopt
/// when all are.
std::optional<std::size_t> ml_decode(std::span<const std::size_t> outcomes, const DistributionTable &table);
/// Same rule from outcome counts n_a.
std::optional<std::size_t> ml_decode_counts(std::span<const std::size_t> counts, const DistributionTable &table);

enum class ErrorMode { kExact, kSampled };

struct CloningErrorRate {
    ErrorMode mode = ErrorMode::kExact;
    std::size_t uses = 0;
    /// Trials per basis state (sampled mode only).
    std::size_t trials = 0;
    std::vector<double> per_state;
    std::vector<double> per_state_se;
    double average = 0.0;
    double average_se = 0.0;
};

inline constexpr std::size_t kMaxExactTypes = 10000000;

/// Probability that ML decoding of N i.i.d. outcomes drawn from P(.|i)
/// returns something other than i. Undecodable strings count as errors.
///
/// Exact mode sums over outcome-count types (the decision depends on the
/// counts alone) weighted by multinomial probabilities; it throws TooLarge
/// above kMaxExactTypes types. Sampled mode draws `trials` strings per state.
CloningErrorRate cloning_error_rate(const CloningBasis &basis, std::size_t uses, ErrorMode mode,
                                    std::size_t trials, Rng &rng);

struct ChernoffResult {
    double value = 0.0;
    bool infinite = false;
    /// Minimizing exponent s.
    double s_star = 0.0;
};

/// -min_{s in [0,1]} log sum_a P(a)^s Q(a)^{1-s} by golden-section search.
/// Letters where either distribution vanishes contribute nothing, so the
/// objective is continuous on [0, 1]; disjoint supports give `infinite`.
ChernoffResult chernoff_information(std::span<const double> p, std::span<const double> q);

}  // namespace measrepro::subroutines

#endif  // MEASREPRO_SUBROUTINES_H_
