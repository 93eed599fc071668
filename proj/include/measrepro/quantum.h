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

#ifndef MEASREPRO_QUANTUM_H_
#define MEASREPRO_QUANTUM_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "measrepro/matrix.h"
#include "measrepro/rng.h"

namespace measrepro {

inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kCompletenessTolerance = 1e-10;

struct PovmReport {
    /// max(0, -smallest eigenvalue) over all elements.
    double positivity_defect = 0.0;
    /// Index of the element attaining positivity_defect.
    std::size_t worst_element = 0;
    /// ||sum_a M_a - I||_F
    double completeness_defect = 0.0;
    std::vector<std::string> violations;

    bool ok() const {
        return violations.empty();
    }
    std::string describe() const;
};

/// Checks positivity and completeness of candidate POVM elements. Never
/// throws for numerical defects; everything is reported.
PovmReport validate_povm(std::span<const ComplexMatrix> elements);

class Povm {
   public:
    /// Validates and throws InvalidMeasurement with the report on failure.
    static Povm create(std::vector<ComplexMatrix> elements);
    /// Skips validation. Used where an invalid object is wanted on purpose.
    static Povm unchecked(std::vector<ComplexMatrix> elements);

    std::size_t dim() const noexcept {
        return elements_.empty() ? 0 : elements_.front().rows();
    }
    std::size_t outcomes() const noexcept {
        return elements_.size();
    }
    const ComplexMatrix &element(std::size_t a) const {
        return elements_.at(a);
    }
    std::span<const ComplexMatrix> elements() const noexcept {
        return elements_;
    }

    /// tr(M_a rho) for every outcome.
    std::vector<double> probabilities(const ComplexMatrix &rho) const;
    /// <psi|M_a|psi> for every outcome.
    std::vector<double> probabilities(const StateVector &psi) const;

   private:
    explicit Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    }
    std::vector<ComplexMatrix> elements_;
};

/// True when every element is within `tol` (Frobenius) of (tr M_a / d) I.
bool is_trivial(const Povm &povm, double tol = 1e-10);

/// Quantum instrument in Kraus form: kraus(a) lists the operators of outcome a.
class Instrument {
   public:
    /// Throws NotNormalized when sum_{a,i} K^dagger K differs from identity
    /// by more than 1e-10 in Frobenius norm.
    static Instrument create(std::vector<std::vector<ComplexMatrix>> kraus);

    std::size_t dim_in() const noexcept {
        return dim_in_;
    }
    std::size_t dim_out() const noexcept {
        return dim_out_;
    }
    std::size_t outcomes() const noexcept {
        return kraus_.size();
    }
    std::span<const ComplexMatrix> kraus(std::size_t a) const {
        return kraus_.at(a);
    }
    /// Largest Kraus count over outcomes.
    std::size_t max_kraus_rank() const;

    /// Lambda_a(rho) = sum_i K_i^a rho K_i^a^dagger (unnormalized).
    ComplexMatrix subchannel(std::size_t a, const ComplexMatrix &rho) const;

   private:
    Instrument(std::size_t dim_in, std::size_t dim_out, std::vector<std::vector<ComplexMatrix>> kraus)
        : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    }
    std::size_t dim_in_ = 0;
    std::size_t dim_out_ = 0;
    std::vector<std::vector<ComplexMatrix>> kraus_;
};

/// M_a = sum_i K_i^a^dagger K_i^a
Povm induced_povm(const Instrument &inst);

struct SubchannelResult {
    double probability = 0.0;
    ComplexMatrix post_state;
};

/// Probability tr[Lambda_a(rho)] and normalized post-measurement state. Throws
/// ZeroProbabilityOutcome below 1e-14.
SubchannelResult apply_subchannel(const Instrument &inst, std::size_t a, const ComplexMatrix &rho);

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
StateVector haar_state(std::size_t dim, Rng &rng);

// Named measurements.

/// Qubit trine: (2/3)|phi_a><phi_a| with the phi_a 120 degrees apart in the
/// x-z plane of the Bloch sphere, phi_0 = |0>.
Povm trine_povm();
/// Asymmetric noisy Z: N_0 = p|0><0| + (1-q)|1><1|, N_1 = (1-p)|0><0| + q|1><1|.
Povm noisy_z_povm(double p, double q);
/// Projective measurement in the computational basis of C^d.
Povm von_neumann_povm(std::size_t d);
/// {|0><0|, |1><1| + |2><2|} on a qutrit.
Povm degenerate_qutrit_povm();

/// Single Kraus operator sqrt(M_a) per outcome.
Instrument luders_instrument(const Povm &povm);
/// Kraus operators |i><i|.
Instrument von_neumann_instrument(std::size_t d);
/// One outcome, Kraus operator I.
Instrument identity_instrument(std::size_t d);

// Random objects for tests and Monte Carlo.

/// Ginibre-distributed positive elements, renormalized to sum to identity.
Povm random_povm(std::size_t dim, std::size_t outcomes, Rng &rng);
/// Random instrument with `kraus_per_outcome[a]` Kraus operators on outcome a.
Instrument random_instrument(std::size_t dim, std::span<const std::size_t> kraus_per_outcome, Rng &rng);
/// Full-rank random density matrix (Ginibre G G^dagger / tr).
ComplexMatrix random_density(std::size_t dim, Rng &rng);
ComplexMatrix random_hermitian(std::size_t dim, Rng &rng);

}  // namespace measrepro

#endif  // MEASREPRO_QUANTUM_H_
