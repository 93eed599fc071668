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

#include <cmath>
#include <sstream>

#include "measrepro/errors.h"
#include "measrepro/linalg.h"
#include "measrepro/subroutines.h"

namespace measrepro::subroutines {

namespace {

constexpr double kZeroProbability = 1e-14;

}  // namespace

MeasurementIsometry build_measurement_isometry(const Instrument &target) {
    MeasurementIsometry iso;
    iso.input_dim = target.dim_in();
    iso.outcome_dim = target.outcomes();
    iso.kraus_dim = target.max_kraus_rank();
    if (target.dim_out() != target.dim_in()) {
        throw Error(ErrorCode::kShapeMismatch, "post-measurement isometry needs dim_out = dim_in");
    }
    const std::size_t d = iso.input_dim;
    const std::size_t m = iso.outcome_dim;
    const std::size_t r = iso.kraus_dim;
    iso.w = ComplexMatrix(d * m * r, d);
    for (std::size_t a = 0; a < m; ++a) {
        const auto kraus = target.kraus(a);
        for (std::size_t j = 0; j < kraus.size(); ++j) {
            for (std::size_t x = 0; x < d; ++x) {
                for (std::size_t y = 0; y < d; ++y) {
                    iso.w((x * m + a) * r + j, y) = kraus[j](x, y);
                }
            }
        }
    }
    const double defect = frobenius_distance(iso.w.adjoint() * iso.w, ComplexMatrix::identity(d));
    if (defect > 1e-10) {
        std::ostringstream os;
        os.precision(12);
        os << "||W^dagger W - I||_F = " << defect;
        throw Error(ErrorCode::kNotNormalized, os.str());
    }
    return iso;
}

std::vector<PostMeasurementBranch> run_post_measurement(const Instrument &target, const StateVector &psi) {
    if (psi.dim() != target.dim_in()) {
        throw Error(ErrorCode::kShapeMismatch, "state dimension does not match the instrument");
    }
    const auto iso = build_measurement_isometry(target);
    const auto out = apply(iso.w, psi.amplitudes());
    const std::size_t d = iso.input_dim;
    const std::size_t m = iso.outcome_dim;
    const std::size_t r = iso.kraus_dim;
    const std::vector<std::size_t> dims = {d, r};
    const std::vector<std::size_t> keep = {0};
    std::vector<PostMeasurementBranch> branches;
    for (std::size_t a = 0; a < m; ++a) {
        // Unnormalized state of (system, Kraus register) given outcome a.
        std::vector<cplx> block(d * r);
        double p = 0.0;
        for (std::size_t x = 0; x < d; ++x) {
            for (std::size_t j = 0; j < r; ++j) {
                block[x * r + j] = out[(x * m + a) * r + j];
                p += std::norm(block[x * r + j]);
            }
        }
        PostMeasurementBranch branch;
        branch.outcome = a;
        branch.probability = p;
        if (p >= kZeroProbability) {
            ComplexMatrix rho = partial_trace(ComplexMatrix::projector(block), dims, keep);
            rho *= 1.0 / p;
            branch.post_state = rho.hermitian_part();
        }
        branches.push_back(std::move(branch));
    }
    return branches;
}

OutcomeEmbedding embed_outcomes(std::size_t outcomes, std::size_t register_dim) {
    if (outcomes == 0 || register_dim < 2) {
        throw Error(ErrorCode::kInvalidArgument, "need at least one outcome and register dimension >= 2");
    }
    OutcomeEmbedding e;
    e.register_dim = register_dim;
    std::size_t capacity = 1;
    while (capacity < outcomes) {
        capacity *= register_dim;
        ++e.registers;
    }
    for (std::size_t a = 0; a < outcomes; ++a) {
        std::vector<std::size_t> digits(e.registers);
        std::size_t rest = a;
        for (std::size_t k = e.registers; k-- > 0;) {
            digits[k] = rest % register_dim;
            rest /= register_dim;
        }
        e.labels.push_back(std::move(digits));
    }
    return e;
}

}  // namespace measrepro::subroutines
