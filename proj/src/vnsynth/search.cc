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

#include "measrepro/errors.h"
#include "measrepro/parallel.h"
#include "measrepro/vnsynth.h"

namespace measrepro::vnsynth {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kImprovement = 1e-13;

// M_{a_1} (x) ... (x) M_{a_N} for every string, in string-index order.
std::vector<ComplexMatrix> string_operators(const Povm &available, std::size_t uses) {
    const std::size_t strings = string_count(available.outcomes(), uses);
    std::vector<ComplexMatrix> out;
    out.reserve(strings);
    for (std::size_t s = 0; s < strings; ++s) {
        std::vector<ComplexMatrix> factors;
        for (auto a : decode_string(s, available.outcomes(), uses)) {
            factors.push_back(available.element(a));
        }
        out.push_back(tensor_all(factors));
    }
    return out;
}

BoxQuadSolution solve_for(const ComplexMatrix &q0) {
    const auto eig = hermitian_eig(q0.hermitian_part());
    const double lmin = std::clamp(eig.values.back(), 0.0, 1.0);
    const double lmax = std::clamp(eig.values.front(), lmin, 1.0);
    return solve_box_quadratic_qubit(lmin, lmax);
}

std::vector<std::size_t> canonical_assignment(std::size_t strings, std::size_t index) {
    std::vector<std::size_t> f(strings, 0);
    for (std::size_t s = 1; s < strings; ++s) {
        f[s] = (index >> (s - 1)) & 1u;
    }
    return f;
}

void canonicalize(std::vector<std::size_t> &f) {
    if (!f.empty() && f.front() == 1) {
        for (auto &v : f) {
            v = 1 - v;
        }
    }
}

}  // namespace

BoxQuadSolution evaluate_partition(const Povm &available, std::size_t uses, std::span<const std::size_t> assignment) {
    const auto protocol =
        build_partition_povm(available, uses, std::vector<std::size_t>(assignment.begin(), assignment.end()), 2);
    return solve_for(protocol.coarse(0));
}

SearchResult exhaustive_search(const Povm &available, std::size_t uses) {
    const std::size_t strings = string_count(available.outcomes(), uses);
    if (strings > kMaxExhaustiveStrings) {
        throw Error(ErrorCode::kSearchSpaceTooLarge, std::to_string(strings) + " outcome strings exceed the limit of " +
                                                         std::to_string(kMaxExhaustiveStrings) +
                                                         "; use hill-climb search");
    }
    const auto ops = string_operators(available, uses);
    const std::size_t partitions = std::size_t{1} << (strings - 1);
    const auto parts = map_chunks(partitions, 64, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<double> eps;
        for (std::size_t p = begin; p < end; ++p) {
            ComplexMatrix q0(ops.front().rows(), ops.front().cols());
            const auto f = canonical_assignment(strings, p);
            for (std::size_t s = 0; s < strings; ++s) {
                if (f[s] == 0) {
                    q0 += ops[s];
                }
            }
            eps.push_back(solve_for(q0).epsilon);
        }
        return eps;
    });
    std::vector<double> all;
    for (const auto &p : parts) {
        all.insert(all.end(), p.begin(), p.end());
    }
    std::size_t best = 0;
    for (std::size_t p = 1; p < all.size(); ++p) {
        if (all[p] < all[best] - kTieTolerance) {
            best = p;
        }
    }
    std::vector<std::vector<std::size_t>> co_optimal;
    for (std::size_t p = 0; p < all.size(); ++p) {
        if (all[p] <= all[best] + kTieTolerance) {
            co_optimal.push_back(canonical_assignment(strings, p));
        }
    }
    auto protocol = build_partition_povm(available, uses, canonical_assignment(strings, best), 2);
    const auto solution = solve_for(protocol.coarse(0));
    return SearchResult{std::move(protocol), solution, std::move(co_optimal), partitions};
}

SearchResult hill_climb_search(const Povm &available, std::size_t uses, std::size_t restarts, Rng &rng,
                               std::span<const std::vector<std::size_t>> seeds) {
    const std::size_t strings = string_count(available.outcomes(), uses);
    const auto ops = string_operators(available, uses);
    std::vector<std::vector<std::size_t>> starts;
    for (const auto &s : seeds) {
        if (s.size() != strings) {
            throw Error(ErrorCode::kShapeMismatch, "seed assignment has the wrong number of strings");
        }
        for (auto v : s) {
            if (v > 1) {
                throw Error(ErrorCode::kInvalidArgument, "seed assignments must map into {0, 1}");
            }
        }
        starts.push_back(s);
    }
    const std::size_t random_starts = starts.empty() ? std::max<std::size_t>(restarts, 1) : restarts;
    for (std::size_t r = 0; r < random_starts; ++r) {
        std::vector<std::size_t> f(strings);
        for (auto &v : f) {
            v = rng.index(2);
        }
        starts.push_back(std::move(f));
    }

    std::size_t evaluated = 0;
    std::vector<std::size_t> best_f;
    double best_eps = 0.0;
    for (auto f : starts) {
        ComplexMatrix q0(ops.front().rows(), ops.front().cols());
        for (std::size_t s = 0; s < strings; ++s) {
            if (f[s] == 0) {
                q0 += ops[s];
            }
        }
        double eps = solve_for(q0).epsilon;
        ++evaluated;
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t s = 0; s < strings; ++s) {
                ComplexMatrix trial = q0;
                if (f[s] == 0) {
                    trial -= ops[s];
                } else {
                    trial += ops[s];
                }
                const double e = solve_for(trial).epsilon;
                ++evaluated;
                if (e < eps - kImprovement) {
                    f[s] = 1 - f[s];
                    q0 = std::move(trial);
                    eps = e;
                    improved = true;
                }
            }
        }
        if (best_f.empty() || eps < best_eps - kImprovement) {
            best_f = f;
            best_eps = eps;
        }
    }
    canonicalize(best_f);
    auto protocol = build_partition_povm(available, uses, best_f, 2);
    const auto solution = solve_for(protocol.coarse(0));
    return SearchResult{std::move(protocol), solution, {best_f}, evaluated};
}

}  // namespace measrepro::vnsynth
