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

// Synthesis of protocols that reproduce a von Neumann measurement from N uses
// of an available POVM.
//
// A protocol prepares orthonormal states |Psi_i> from the target basis states
// (possibly with one extra unmeasured ancilla qubit), measures the N systems
// with the available POVM, and maps the outcome string a = (a_1..a_N) to a
// target outcome f(a). The string map induces a coarse-grained POVM
// Q_i = sum_{a: f(a) = i} M_{a_1} (x) ... (x) M_{a_N} on the N systems, and
// the implemented measurement has elements <Psi_j|Q_i|Psi_k>.
//
// For a two-outcome target the Haar-averaged error depends only on
// x = <Psi_0|Q_0|Psi_0> and y = <Psi_1|Q_0|Psi_1>, both confined to
// [lambda_min(Q_0), lambda_max(Q_0)], which turns the design problem into a
// small box-constrained quadratic program.

#ifndef MEASREPRO_VNSYNTH_H_
#define MEASREPRO_VNSYNTH_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "measrepro/linalg.h"
#include "measrepro/quantum.h"
#include "measrepro/rms.h"

namespace measrepro::vnsynth {

/// Number of outcome strings m^N; throws SearchSpaceTooLarge on overflow.
std::size_t string_count(std::size_t outcomes, std::size_t uses);
/// Digits of a string index, a_1 first (a_1 is the most significant digit).
std::vector<std::size_t> decode_string(std::size_t index, std::size_t outcomes, std::size_t uses);

class PartitionProtocol {
   public:
    const Povm &available() const noexcept {
        return available_;
    }
    std::size_t uses() const noexcept {
        return uses_;
    }
    std::size_t target_outcomes() const noexcept {
        return coarse_.size();
    }
    /// f(a) for every string index.
    std::span<const std::size_t> assignment() const noexcept {
        return assignment_;
    }
    const ComplexMatrix &coarse(std::size_t i) const {
        return coarse_.at(i);
    }
    std::span<const ComplexMatrix> coarse() const noexcept {
        return coarse_;
    }
    /// Dimension of the N measured systems, d^N.
    std::size_t system_dim() const noexcept {
        return coarse_.front().rows();
    }

   private:
    friend PartitionProtocol build_partition_povm(const Povm &, std::size_t, std::vector<std::size_t>, std::size_t,
                                                  std::size_t);
    PartitionProtocol(Povm available, std::size_t uses, std::vector<std::size_t> assignment,
                      std::vector<ComplexMatrix> coarse)
        : available_(std::move(available)),
          uses_(uses),
          assignment_(std::move(assignment)),
          coarse_(std::move(coarse)) {
    }

    Povm available_;
    std::size_t uses_;
    std::vector<std::size_t> assignment_;
    std::vector<ComplexMatrix> coarse_;
};

/// Builds Q_i = sum_a delta_{i, f(a)} M_{a_1} (x) ... (x) M_{a_N}.
PartitionProtocol build_partition_povm(const Povm &available, std::size_t uses, std::vector<std::size_t> assignment,
                                       std::size_t target_outcomes, std::size_t cap = kDefaultDimensionCap);

/// f(a) = 0 iff some a_k equals `outcome`, else 1. For the trine with
/// outcome 0 this is the optimal N-use partition, Q_1 = (I - M_0)^{(x)N}.
std::vector<std::size_t> any_outcome_assignment(std::size_t outcomes, std::size_t uses, std::size_t outcome = 0);
/// f(a) = a_1 when a_1 < target_outcomes, else target_outcomes - 1.
std::vector<std::size_t> first_outcome_assignment(std::size_t outcomes, std::size_t uses,
                                                  std::size_t target_outcomes = 2);

// ---------------------------------------------------------------------------
// Quadratic programs.

/// Which case of the closed-form solution applies, ordered by lambda_max:
///   kLeft:   lambda_max <= 1 - 2 lambda_min, optimum (lambda_max, (1 - lambda_max)/2)
///   kCorner: optimum at the corner (lambda_max, lambda_min)
///   kRight:  lambda_max >= 1 - lambda_min/2, optimum (1 - lambda_min/2, lambda_min)
enum class BoxRegion { kLeft, kCorner, kRight };
std::string_view region_name(BoxRegion region);

struct BoxQuadSolution {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double x = 0.0;
    double y = 0.0;
    double epsilon = 0.0;
    BoxRegion region = BoxRegion::kCorner;
};

/// Minimizes ((1 - x - y)^2 + (1 - x) y) / 3 over lambda_min <= x, y <= lambda_max.
/// Throws InvalidBounds unless 0 <= lambda_min <= lambda_max <= 1.
///
/// The edge optima are clamped into the box, which only matters when the box
/// is so narrow that the tangent point leaves it (lambda_max < 1/3 in the
/// left case, lambda_min > 2/3 in the right case).
BoxQuadSolution solve_box_quadratic_qubit(double lambda_min, double lambda_max);

struct QuditQpProblem {
    std::size_t d = 0;
    /// Per-outcome bounds on x[a][i], from the spectrum of Q_a.
    std::vector<double> lower;
    std::vector<double> upper;
    /// Filled by the solver.
    rms::OutcomeTable x;
};

struct QuditQpSolution {
    QuditQpProblem problem;
    /// With the 1/(m d (d+1)) normalization.
    double epsilon = 0.0;
    /// With the 1/(d (d+1)) normalization (no outcome average).
    double epsilon_outcome_sum = 0.0;
    std::size_t iterations = 0;
    double kkt_residual = 0.0;
};

/// Projected gradient with step 1/L on
/// eps^2 = sum_a [(sum_i x_ai - 1)^2 + sum_i x_ai^2 - 2 x_aa + 1] / (m d (d+1))
/// subject to lower[a] <= x_ai <= upper[a] and sum_a x_ai = 1. The projection
/// onto each column's box-and-simplex set is exact (bisection on the shift).
/// Throws Infeasible when a column cannot sum to one within the boxes.
QuditQpSolution solve_box_quadratic_qudit(QuditQpProblem problem);

/// Bounds from the extreme eigenvalues of each coarse element.
QuditQpProblem qudit_problem_from_protocol(const PartitionProtocol &protocol);

// ---------------------------------------------------------------------------
// State preparation and the implemented measurement.

struct StatePrep {
    std::size_t measured_systems = 0;
    /// Dimension of the measured systems (d^N).
    std::size_t measured_dim = 0;
    /// 0 or 1 unmeasured ancilla qubits, appended after the measured systems.
    std::size_t ancilla_qubits = 0;
    /// |Psi_i> on measured (x) ancilla space, one per target outcome.
    std::vector<StateVector> states;

    std::size_t total_dim() const noexcept {
        return measured_dim << ancilla_qubits;
    }
    /// Columns are the |Psi_i>: the restriction of U to inputs |i>|Omega>.
    ComplexMatrix isometry() const;
};

/// Finds orthonormal |Psi_0>, |Psi_1> with <Psi_0|Q_0|Psi_0> = x,
/// <Psi_1|Q_0|Psi_1> = y and <Psi_0|Q_0|Psi_1> = 0 for a two-outcome
/// protocol.
///
/// Each state is taken in the span of one eigenvector of Q_0 (when x or y is
/// an eigenvalue) or of two eigenvectors whose eigenvalues bracket it, the
/// tightest bracket first. Disjoint eigenvector supports give orthogonality
/// and z = 0 inside the measured space. When no disjoint choice exists one
/// unmeasured ancilla qubit is appended and used as a tag:
/// |Psi_i> = |u_i>|i>.
///
/// Throws Unachievable when x or y lies outside [lambda_min, lambda_max].
StatePrep construct_states(const PartitionProtocol &protocol, double x, double y);

/// M_i = (I (x) <Omega|) U^dagger (Q_i (x) I_anc) U (I (x) |Omega>), i.e. the
/// partial trace over everything but the input system after conjugating with
/// the preparation isometry.
Povm implemented_povm(const StatePrep &prep, const PartitionProtocol &protocol);

/// Extends the preparation isometry to a unitary U on (target (x) Omega-space)
/// with U|i>|0...0> = |Psi_i>. Requires total_dim divisible by the number of
/// target outcomes. Remaining columns come from Gram-Schmidt on the standard
/// basis.
ComplexMatrix complete_unitary(const StatePrep &prep);

// ---------------------------------------------------------------------------
// Partition search (two-outcome targets).

struct SearchResult {
    PartitionProtocol protocol;
    BoxQuadSolution solution;
    /// Every canonical partition (f(first string) = 0) attaining the optimum
    /// within 1e-12, lowest index first.
    std::vector<std::vector<std::size_t>> co_optimal;
    std::size_t evaluated = 0;
};

/// Optimal error for a fixed partition.
BoxQuadSolution evaluate_partition(const Povm &available, std::size_t uses, std::span<const std::size_t> assignment);

inline constexpr std::size_t kMaxExhaustiveStrings = 12;

/// Enumerates all 2^(m^N - 1) canonical partitions. Throws
/// SearchSpaceTooLarge above kMaxExhaustiveStrings strings.
SearchResult exhaustive_search(const Povm &available, std::size_t uses);

/// Local search under single-string reassignment, from each seed assignment
/// followed by `restarts` random starts. The result is canonicalized to
/// f(first string) = 0; relabeling leaves the error unchanged.
SearchResult hill_climb_search(const Povm &available, std::size_t uses, std::size_t restarts, Rng &rng,
                               std::span<const std::vector<std::size_t>> seeds = {});

// ---------------------------------------------------------------------------
// Closed-form families.

struct SynthesizedProtocol {
    PartitionProtocol protocol;
    BoxQuadSolution solution;
    StatePrep prep;
};

/// Trine to von Neumann with Q_1 = (I - M_0)^{(x)N}: |Psi_0> = |0>^N,
/// |Psi_1> = |1>^{N-1}|phi_N>, phi_N = a|0> + sqrt(1 - a^2)|1> with
/// a = 3^{-(N-1)/2} / 2. For N = 1 the two states overlap, so an ancilla tag
/// is appended.
SynthesizedProtocol trine_optimal_protocol(std::size_t uses);

enum class NoisyZRegion {
    /// p > (1 + q)/2: rotate the |0> branch.
    kRotateZero,
    /// 2q - 1 <= p <= (1 + q)/2: measuring directly is optimal.
    kTrivial,
    /// q > (1 + p)/2: rotate the |1> branch (mirror of kRotateZero).
    kRotateOne,
};
std::string_view noisy_z_region_name(NoisyZRegion region);

struct NoisyZParams {
    double p = 1.0;
    double q = 1.0;
    NoisyZRegion region = NoisyZRegion::kTrivial;
    /// Amplitude kept on the measured basis state of the rotated branch:
    /// sqrt((3q - 1) / (2(p + q - 1))) in kRotateZero, the mirrored
    /// expression in kRotateOne, 1 when no rotation is needed.
    double gamma = 1.0;
};

struct NoisyZProtocol {
    NoisyZParams params;
    PartitionProtocol protocol;
    BoxQuadSolution solution;
    StatePrep prep;
};

NoisyZRegion classify_noisy_z(double p, double q);

/// Single-use optimum for the asymmetric noisy Z measurement. Throws
/// InvalidBounds unless 1/2 < p, q <= 1.
NoisyZProtocol noisy_z_optimal(double p, double q);

}  // namespace measrepro::vnsynth

#endif  // MEASREPRO_VNSYNTH_H_
