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

#include <limits>
#include <sstream>

#include "measrepro/errors.h"
#include "measrepro/vnsynth.h"

namespace measrepro::vnsynth {

namespace {

// Coarse elements restricted to strings that start with the digits of
// `prefix`: Q_i[prefix] = sum_b M_b (x) Q_i[prefix b].
std::vector<ComplexMatrix> coarse_below(const Povm &available, std::size_t uses, std::span<const std::size_t> f,
                                        std::size_t targets, std::size_t prefix, std::size_t depth) {
    if (depth == uses) {
        std::vector<ComplexMatrix> leaf(targets, ComplexMatrix(1, 1));
        leaf[f[prefix]](0, 0) = 1.0;
        return leaf;
    }
    const std::size_t m = available.outcomes();
    const std::size_t d = available.dim();
    std::size_t sub = 1;
    for (std::size_t k = depth + 1; k < uses; ++k) {
        sub *= d;
    }
    std::vector<ComplexMatrix> acc(targets, ComplexMatrix(d * sub, d * sub));
    for (std::size_t b = 0; b < m; ++b) {
        const auto below = coarse_below(available, uses, f, targets, prefix * m + b, depth + 1);
        for (std::size_t i = 0; i < targets; ++i) {
            acc[i] += tensor(available.element(b), below[i]);
        }
    }
    return acc;
}

}  // namespace

std::size_t string_count(std::size_t outcomes, std::size_t uses) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < uses; ++k) {
        if (outcomes != 0 && n > std::numeric_limits<std::size_t>::max() / outcomes) {
            throw Error(ErrorCode::kSearchSpaceTooLarge, "outcome string count overflows");
        }
        n *= outcomes;
    }
    return n;
}

std::vector<std::size_t> decode_string(std::size_t index, std::size_t outcomes, std::size_t uses) {
    std::vector<std::size_t> digits(uses);
    for (std::size_t k = uses; k-- > 0;) {
        digits[k] = index % outcomes;
        index /= outcomes;
    }
    return digits;
}

PartitionProtocol build_partition_povm(const Povm &available, std::size_t uses, std::vector<std::size_t> assignment,
                                       std::size_t target_outcomes, std::size_t cap) {
    if (uses == 0) {
        throw Error(ErrorCode::kInvalidArgument, "need at least one use of the available measurement");
    }
    if (target_outcomes < 2) {
        throw Error(ErrorCode::kInvalidArgument, "target needs at least two outcomes");
    }
    std::size_t dim = 1;
    for (std::size_t k = 0; k < uses; ++k) {
        if (dim > cap / available.dim()) {
            std::ostringstream os;
            os << available.dim() << "^" << uses << " exceeds the dimension cap " << cap;
            throw Error(ErrorCode::kDimensionTooLarge, os.str());
        }
        dim *= available.dim();
    }
    const std::size_t strings = string_count(available.outcomes(), uses);
    if (assignment.size() != strings) {
        throw Error(ErrorCode::kShapeMismatch, "partition map covers " + std::to_string(assignment.size()) +
                                                   " strings, expected " + std::to_string(strings));
    }
    for (auto v : assignment) {
        if (v >= target_outcomes) {
            throw Error(ErrorCode::kInvalidArgument, "partition map value " + std::to_string(v) + " out of range");
        }
    }
    auto coarse = coarse_below(available, uses, assignment, target_outcomes, 0, 0);
    for (auto &q : coarse) {
        q = q.hermitian_part();
    }
    return PartitionProtocol(available, uses, std::move(assignment), std::move(coarse));
}

std::vector<std::size_t> any_outcome_assignment(std::size_t outcomes, std::size_t uses, std::size_t outcome) {
    const std::size_t strings = string_count(outcomes, uses);
    std::vector<std::size_t> f(strings, 1);
    for (std::size_t s = 0; s < strings; ++s) {
        for (auto a : decode_string(s, outcomes, uses)) {
            if (a == outcome) {
                f[s] = 0;
                break;
            }
        }
    }
    return f;
}

std::vector<std::size_t> first_outcome_assignment(std::size_t outcomes, std::size_t uses,
                                                  std::size_t target_outcomes) {
    const std::size_t strings = string_count(outcomes, uses);
    std::vector<std::size_t> f(strings);
    for (std::size_t s = 0; s < strings; ++s) {
        f[s] = std::min(decode_string(s, outcomes, uses).front(), target_outcomes - 1);
    }
    return f;
}

}  // namespace measrepro::vnsynth
