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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "measrepro/errors.h"
#include "measrepro/vnsynth.h"

namespace measrepro::vnsynth {

namespace {

BoxQuadSolution solve_for(const PartitionProtocol &protocol) {
    const auto eig = hermitian_eig(protocol.coarse(0));
    const double lmin = std::clamp(eig.values.back(), 0.0, 1.0);
    const double lmax = std::clamp(eig.values.front(), lmin, 1.0);
    return solve_box_quadratic_qubit(lmin, lmax);
}

}  // namespace

SynthesizedProtocol trine_optimal_protocol(std::size_t uses) {
    if (uses == 0) {
        throw Error(ErrorCode::kInvalidArgument, "need at least one use of the trine");
    }
    auto protocol = build_partition_povm(trine_povm(), uses, any_outcome_assignment(3, uses, 0), 2);
    const auto solution = solve_for(protocol);

    const double a = 0.5 * std::pow(3.0, -0.5 * static_cast<double>(uses - 1));
    const std::vector<cplx> phi = {a, std::sqrt(1.0 - a * a)};
    StatePrep prep;
    prep.measured_systems = uses;
    prep.measured_dim = protocol.system_dim();
    if (uses == 1) {
        prep.ancilla_qubits = 1;
        prep.states.emplace_back(tensor(StateVector::basis(2, 0), StateVector::basis(2, 0)));
        prep.states.emplace_back(tensor(StateVector(phi), StateVector::basis(2, 1)));
    } else {
        prep.states.emplace_back(StateVector::basis(prep.measured_dim, 0));
        std::vector<cplx> psi1(prep.measured_dim);
        // |1...1>|0> and |1...1>|1> are the last two basis states.
        psi1[prep.measured_dim - 2] = phi[0];
        psi1[prep.measured_dim - 1] = phi[1];
        prep.states.emplace_back(StateVector(std::move(psi1)));
    }
    return SynthesizedProtocol{std::move(protocol), solution, std::move(prep)};
}

std::string_view noisy_z_region_name(NoisyZRegion region) {
    switch (region) {
        case NoisyZRegion::kRotateZero:
            return "rotate-zero";
        case NoisyZRegion::kTrivial:
            return "trivial";
        case NoisyZRegion::kRotateOne:
            return "rotate-one";
    }
    return "unknown";
}

NoisyZRegion classify_noisy_z(double p, double q) {
    if (p > (1.0 + q) / 2.0) {
        return NoisyZRegion::kRotateZero;
    }
    if (q > (1.0 + p) / 2.0) {
        return NoisyZRegion::kRotateOne;
    }
    return NoisyZRegion::kTrivial;
}

NoisyZProtocol noisy_z_optimal(double p, double q) {
    if (!(p > 0.5 && p <= 1.0 && q > 0.5 && q <= 1.0)) {
        std::ostringstream os;
        os << "need 1/2 < p, q <= 1, got p = " << p << ", q = " << q;
        throw Error(ErrorCode::kInvalidBounds, os.str());
    }
    NoisyZParams params;
    params.p = p;
    params.q = q;
    params.region = classify_noisy_z(p, q);
    switch (params.region) {
        case NoisyZRegion::kRotateZero:
            params.gamma = std::sqrt((3.0 * q - 1.0) / (2.0 * (p + q - 1.0)));
            break;
        case NoisyZRegion::kRotateOne:
            params.gamma = std::sqrt((3.0 * p - 1.0) / (2.0 * (p + q - 1.0)));
            break;
        case NoisyZRegion::kTrivial:
            params.gamma = 1.0;
            break;
    }
    auto protocol = build_partition_povm(noisy_z_povm(p, q), 1, {0, 1}, 2);
    const auto solution = solve_for(protocol);
    auto prep = construct_states(protocol, solution.x, solution.y);
    return NoisyZProtocol{params, std::move(protocol), solution, std::move(prep)};
}

}  // namespace measrepro::vnsynth
