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
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "measrepro/errors.h"
#include "measrepro/linalg.h"
#include "measrepro/parallel.h"
#include "measrepro/subroutines.h"

namespace measrepro::subroutines {

namespace {

constexpr double kFlatTolerance = 1e-10;
constexpr std::size_t kThetaScan = 40;
constexpr std::size_t kSampleChunk = 8192;

using Vec = std::vector<cplx>;

std::size_t collision_count(const DistributionTable &table) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = i + 1; j < table.size(); ++j) {
            if (total_variation(table[i], table[j]) < kDistinctRows) {
                ++n;
            }
        }
    }
    return n;
}

std::vector<StateVector> as_states(const std::vector<Vec> &basis) {
    std::vector<StateVector> out;
    for (const auto &v : basis) {
        out.push_back(StateVector::normalized(v));
    }
    return out;
}

Vec combine(cplx a, const Vec &u, cplx b, const Vec &v) {
    Vec out(u.size());
    for (std::size_t r = 0; r < u.size(); ++r) {
        out[r] = a * u[r] + b * v[r];
    }
    return out;
}

bool proportional_to_identity(const ComplexMatrix &m) {
    const ComplexMatrix flat = ComplexMatrix::identity(m.rows()) * (m.trace() / static_cast<double>(m.rows()));
    return frobenius_distance(m, flat) <= kFlatTolerance;
}

// <e_p|M|e_q> over the listed basis vectors.
ComplexMatrix restrict_to(const ComplexMatrix &m, const std::vector<const Vec *> &span) {
    ComplexMatrix r(span.size(), span.size());
    for (std::size_t p = 0; p < span.size(); ++p) {
        for (std::size_t q = 0; q < span.size(); ++q) {
            r(p, q) = sandwich(*span[p], m, *span[q]);
        }
    }
    return r.hermitian_part();
}

// Replaces the listed basis vectors by the eigenvectors of the restriction of m.
void diagonalize_within(const ComplexMatrix &m, std::vector<Vec> &basis, const std::vector<std::size_t> &idx) {
    std::vector<const Vec *> span;
    for (auto i : idx) {
        span.push_back(&basis[i]);
    }
    const auto eig = hermitian_eig(restrict_to(m, span));
    std::vector<Vec> fresh;
    for (std::size_t c = 0; c < idx.size(); ++c) {
        Vec v(basis.front().size());
        for (std::size_t p = 0; p < idx.size(); ++p) {
            for (std::size_t r = 0; r < v.size(); ++r) {
                v[r] += eig.vectors(p, c) * basis[idx[p]][r];
            }
        }
        fresh.push_back(std::move(v));
    }
    for (std::size_t c = 0; c < idx.size(); ++c) {
        basis[idx[c]] = std::move(fresh[c]);
    }
}

std::size_t type_count(std::size_t uses, std::size_t outcomes) {
    // C(uses + outcomes - 1, outcomes - 1), saturating.
    double c = 1.0;
    for (std::size_t k = 1; k < outcomes; ++k) {
        c = c * static_cast<double>(uses + k) / static_cast<double>(k);
    }
    return c > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(std::llround(c));
}

template <typename Visit>
void for_each_type(std::vector<std::size_t> &counts, std::size_t pos, std::size_t remaining, Visit &visit) {
    if (pos + 1 == counts.size()) {
        counts[pos] = remaining;
        visit(counts);
        return;
    }
    for (std::size_t n = 0; n <= remaining; ++n) {
        counts[pos] = n;
        for_each_type(counts, pos + 1, remaining - n, visit);
    }
}

double golden_section(const std::function<double(double)> &f, double lo, double hi, double *argmin) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    double best_s = 0.5 * (a + b);
    double best = f(best_s);
    for (double s : {lo, hi}) {
        const double v = f(s);
        if (v < best) {
            best = v;
            best_s = s;
        }
    }
    *argmin = best_s;
    return best;
}

}  // namespace

DistributionTable cloning_distributions(const Povm &available, std::span<const StateVector> basis) {
    DistributionTable table;
    for (const auto &e : basis) {
        if (e.dim() != available.dim()) {
            throw Error(ErrorCode::kShapeMismatch, "basis state dimension does not match the measurement");
        }
        std::vector<double> row;
        for (const auto &m : available.elements()) {
            row.push_back(std::max(0.0, sandwich(e.amplitudes(), m, e.amplitudes()).real()));
        }
        table.push_back(std::move(row));
    }
    return table;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw Error(ErrorCode::kShapeMismatch, "distributions differ in alphabet size");
    }
    double t = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
        t += std::abs(p[a] - q[a]);
    }
    return 0.5 * t;
}

CloningBasis select_cloning_basis(const Povm &available) {
    if (is_trivial(available, kFlatTolerance)) {
        throw Error(ErrorCode::kTrivialMeasurement, "every POVM element is proportional to the identity");
    }
    const std::size_t d = available.dim();
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(d);
        e[i] = 1.0;
        basis.push_back(std::move(e));
    }
    CloningBasis out;
    const std::size_t max_steps = 64 * d * d + 64;
    for (std::size_t step = 0;; ++step) {
        if (step == max_steps) {
            throw Error(ErrorCode::kNotConverged, "basis selection did not separate all rows");
        }
        const auto table = cloning_distributions(available, as_states(basis));
        std::size_t ci = d;
        std::size_t cj = d;
        for (std::size_t i = 0; i < d && ci == d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                if (total_variation(table[i], table[j]) < kDistinctRows) {
                    ci = i;
                    cj = j;
                    break;
                }
            }
        }
        if (ci == d) {
            out.table = table;
            break;
        }

        // A POVM element that is not flat on span{e_i, e_j} separates the pair.
        bool split = false;
        for (const auto &m : available.elements()) {
            if (!proportional_to_identity(restrict_to(m, {&basis[ci], &basis[cj]}))) {
                diagonalize_within(m, basis, {ci, cj});
                split = true;
                break;
            }
        }
        if (split) {
            continue;
        }

        std::size_t other = d;
        for (std::size_t k = 0; k < d; ++k) {
            if (total_variation(table[k], table[ci]) >= kDistinctRows) {
                other = k;
                break;
            }
        }
        if (other == d) {
            // Every row coincides: diagonalize a non-flat element on the whole space.
            std::vector<std::size_t> all(d);
            for (std::size_t k = 0; k < d; ++k) {
                all[k] = k;
            }
            for (const auto &m : available.elements()) {
                if (!proportional_to_identity(m)) {
                    diagonalize_within(m, basis, all);
                    break;
                }
            }
            continue;
        }

        const std::size_t low = std::min(other, ci);
        const std::size_t high = std::max(other, ci);
        const std::size_t before = collision_count(table);
        bool rotated = false;
        double theta = std::numbers::pi / 8.0;
        for (std::size_t t = 0; t < kThetaScan && !rotated; ++t, theta /= 2.0) {
            auto trial = basis;
            trial[low] = combine(std::cos(theta), basis[low], std::sin(theta), basis[high]);
            trial[high] = combine(-std::sin(theta), basis[low], std::cos(theta), basis[high]);
            if (collision_count(cloning_distributions(available, as_states(trial))) < before) {
                basis = std::move(trial);
                out.theta = theta;
                ++out.rotations;
                rotated = true;
            }
        }
        if (!rotated) {
            throw Error(ErrorCode::kNotConverged, "no rotation angle separated the colliding rows");
        }
    }
    out.states = as_states(basis);
    return out;
}

std::optional<std::size_t> ml_decode_counts(std::span<const std::size_t> counts, const DistributionTable &table) {
    std::optional<std::size_t> best;
    double best_ll = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].size() != counts.size()) {
            throw Error(ErrorCode::kShapeMismatch, "outcome counts do not match the table");
        }
        double ll = 0.0;
        bool alive = true;
        for (std::size_t a = 0; a < counts.size() && alive; ++a) {
            if (counts[a] == 0) {
                continue;
            }
            if (table[i][a] <= 0.0) {
                alive = false;
            } else {
                ll += static_cast<double>(counts[a]) * std::log(table[i][a]);
            }
        }
        if (alive && (!best || ll > best_ll + 1e-12 * std::max(1.0, std::abs(best_ll)))) {
            best = i;
            best_ll = ll;
        }
    }
    return best;
}

std::optional<std::size_t> ml_decode(std::span<const std::size_t> outcomes, const DistributionTable &table) {
    if (table.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "empty distribution table");
    }
    std::vector<std::size_t> counts(table.front().size(), 0);
    for (auto a : outcomes) {
        if (a >= counts.size()) {
            throw Error(ErrorCode::kInvalidArgument, "outcome " + std::to_string(a) + " out of range");
        }
        ++counts[a];
    }
    return ml_decode_counts(counts, table);
}

CloningErrorRate cloning_error_rate(const CloningBasis &basis, std::size_t uses, ErrorMode mode, std::size_t trials,
                                    Rng &rng) {
    const auto &table = basis.table;
    if (table.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "empty distribution table");
    }
    const std::size_t states = table.size();
    const std::size_t outcomes = table.front().size();
    CloningErrorRate out;
    out.mode = mode;
    out.uses = uses;
    out.per_state.assign(states, 0.0);
    out.per_state_se.assign(states, 0.0);

    if (mode == ErrorMode::kExact) {
        if (type_count(uses, outcomes) > kMaxExactTypes) {
            throw Error(ErrorCode::kTooLarge, "too many outcome types for exact enumeration; use sampled mode");
        }
        const double log_n_fact = std::lgamma(static_cast<double>(uses) + 1.0);
        std::vector<std::size_t> counts(outcomes);
        auto visit = [&](const std::vector<std::size_t> &n) {
            const auto decoded = ml_decode_counts(n, table);
            double log_coeff = log_n_fact;
            for (auto c : n) {
                log_coeff -= std::lgamma(static_cast<double>(c) + 1.0);
            }
            for (std::size_t i = 0; i < states; ++i) {
                if (decoded && *decoded == i) {
                    continue;
                }
                double lp = log_coeff;
                bool possible = true;
                for (std::size_t a = 0; a < outcomes && possible; ++a) {
                    if (n[a] == 0) {
                        continue;
                    }
                    if (table[i][a] <= 0.0) {
                        possible = false;
                    } else {
                        lp += static_cast<double>(n[a]) * std::log(table[i][a]);
                    }
                }
                if (possible) {
                    out.per_state[i] += std::exp(lp);
                }
            }
        };
        for_each_type(counts, 0, uses, visit);
        for (auto &e : out.per_state) {
            e = std::clamp(e, 0.0, 1.0);
        }
    } else {
        if (trials == 0) {
            throw Error(ErrorCode::kTooFewSamples, "sampled mode needs at least one trial");
        }
        out.trials = trials;
        const std::uint64_t seed = rng.next_u64();
        for (std::size_t i = 0; i < states; ++i) {
            const auto parts = map_chunks(trials, kSampleChunk, [&](std::size_t chunk, std::size_t begin,
                                                                    std::size_t end) {
                Rng local(seed, (static_cast<std::uint64_t>(i) << 32) | chunk);
                std::size_t errors = 0;
                std::vector<std::size_t> n(outcomes);
                for (std::size_t t = begin; t < end; ++t) {
                    std::fill(n.begin(), n.end(), 0);
                    for (std::size_t k = 0; k < uses; ++k) {
                        ++n[local.categorical(table[i])];
                    }
                    const auto decoded = ml_decode_counts(n, table);
                    if (!decoded || *decoded != i) {
                        ++errors;
                    }
                }
                return errors;
            });
            std::size_t errors = 0;
            for (auto e : parts) {
                errors += e;
            }
            const double p = static_cast<double>(errors) / static_cast<double>(trials);
            out.per_state[i] = p;
            out.per_state_se[i] = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
        }
    }
    double se_sq = 0.0;
    for (std::size_t i = 0; i < states; ++i) {
        out.average += out.per_state[i];
        se_sq += out.per_state_se[i] * out.per_state_se[i];
    }
    out.average /= static_cast<double>(states);
    out.average_se = std::sqrt(se_sq) / static_cast<double>(states);
    return out;
}

ChernoffResult chernoff_information(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw Error(ErrorCode::kShapeMismatch, "distributions differ in alphabet size");
    }
    std::vector<std::pair<double, double>> common;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] > 0.0 && q[a] > 0.0) {
            common.emplace_back(std::log(p[a]), std::log(q[a]));
        }
    }
    ChernoffResult out;
    if (common.empty()) {
        out.infinite = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const auto objective = [&](double s) {
        double acc = 0.0;
        for (const auto &[lp, lq] : common) {
            acc += std::exp(s * lp + (1.0 - s) * lq);
        }
        return std::log(acc);
    };
    const double min = golden_section(objective, 0.0, 1.0, &out.s_star);
    out.value = std::max(0.0, -min);
    return out;
}

}  // namespace measrepro::subroutines
