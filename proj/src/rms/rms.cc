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

#include "measrepro/rms.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "measrepro/errors.h"
#include "measrepro/linalg.h"
#include "measrepro/parallel.h"

namespace measrepro::rms {

namespace {

constexpr std::size_t kMinSamples = 100;
constexpr std::size_t kChunk = 4096;

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// Folds per-sample values of eps^2 into an estimate of eps.
template <typename Sample>
RmsEstimate estimate(std::size_t samples, std::uint64_t seed, std::size_t dim, Sample sample) {
    if (samples < kMinSamples) {
        throw Error(ErrorCode::kTooFewSamples,
                    "need at least " + std::to_string(kMinSamples) + " samples, got " + std::to_string(samples));
    }
    const auto parts = map_chunks(samples, kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Rng rng(seed, chunk);
        Moments m;
        for (std::size_t s = begin; s < end; ++s) {
            const double v = sample(haar_state(dim, rng));
            m.sum += v;
            m.sum_sq += v * v;
        }
        return m;
    });
    Moments total;
    for (const auto &p : parts) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
    }
    const double n = static_cast<double>(samples);
    const double mean = total.sum / n;
    const double var = std::max(0.0, (total.sum_sq / n - mean * mean) * n / (n - 1.0));
    const double se_sq = std::sqrt(var / n);
    RmsEstimate out;
    out.value = std::sqrt(std::max(0.0, mean));
    out.standard_error = out.value > 0.0 ? se_sq / (2.0 * out.value) : 0.0;
    out.samples = samples;
    out.seed = seed;
    return out;
}

void require_matching(const Povm &impl, const Povm &target) {
    if (impl.dim() != target.dim() || impl.outcomes() != target.outcomes()) {
        throw Error(ErrorCode::kShapeMismatch, "implemented and target measurements differ in dimension or outcomes");
    }
}

}  // namespace

double rms_closed_form_qubit(double x, double y, cplx z) {
    const double a = 1.0 - x - y;
    const double eps_sq = (a * a + (1.0 - x) * y + std::norm(z)) / 3.0;
    return std::sqrt(std::max(0.0, eps_sq));
}

double rms_closed_form_qudit(const OutcomeTable &x, std::size_t d, std::size_t m, QuditNormalization norm) {
    if (m != d || x.size() != m) {
        throw Error(ErrorCode::kShapeMismatch, "qudit table must have m = d rows");
    }
    double bracket = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        if (x[a].size() != d) {
            throw Error(ErrorCode::kShapeMismatch, "qudit table row " + std::to_string(a) + " has wrong length");
        }
        double row_sum = 0.0;
        double row_sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            row_sum += x[a][i];
            row_sq += x[a][i] * x[a][i];
        }
        bracket += (row_sum - 1.0) * (row_sum - 1.0) + row_sq - 2.0 * x[a][a] + 1.0;
    }
    const double dd = static_cast<double>(d);
    double scale = 1.0 / (dd * (dd + 1.0));
    if (norm == QuditNormalization::kOutcomeAverage) {
        scale /= static_cast<double>(m);
    }
    return std::sqrt(std::max(0.0, scale * bracket));
}

double rms_exact_povm(const Povm &impl, const Povm &target) {
    require_matching(impl, target);
    const std::size_t d = impl.dim();
    const auto pi_sym = symmetric_subspace_projector(d);
    const double moment_scale = 2.0 / (static_cast<double>(d) * static_cast<double>(d + 1));
    double total = 0.0;
    for (std::size_t a = 0; a < impl.outcomes(); ++a) {
        const ComplexMatrix diff = impl.element(a) - target.element(a);
        total += (tensor(diff, diff) * pi_sym).trace().real() * moment_scale;
    }
    return std::sqrt(std::max(0.0, total / static_cast<double>(impl.outcomes())));
}

RmsEstimate rms_monte_carlo_povm(const Povm &impl, const Povm &target, std::size_t samples, std::uint64_t seed) {
    require_matching(impl, target);
    std::vector<ComplexMatrix> diffs;
    for (std::size_t a = 0; a < impl.outcomes(); ++a) {
        diffs.push_back(impl.element(a) - target.element(a));
    }
    const double m = static_cast<double>(impl.outcomes());
    return estimate(samples, seed, impl.dim(), [&](const StateVector &psi) {
        double acc = 0.0;
        for (const auto &dm : diffs) {
            const double v = sandwich(psi.amplitudes(), dm, psi.amplitudes()).real();
            acc += v * v;
        }
        return acc / m;
    });
}

RmsEstimate rms_monte_carlo_instrument(const Instrument &impl, const Instrument &target, std::size_t samples,
                                       std::uint64_t seed) {
    if (impl.dim_in() != target.dim_in() || impl.dim_out() != target.dim_out() ||
        impl.outcomes() != target.outcomes()) {
        throw Error(ErrorCode::kShapeMismatch, "instruments differ in dimensions or outcome count");
    }
    const double m = static_cast<double>(impl.outcomes());
    return estimate(samples, seed, impl.dim_in(), [&](const StateVector &psi) {
        double acc = 0.0;
        for (std::size_t a = 0; a < impl.outcomes(); ++a) {
            // ||sum_k u_k u_k^+ - sum_l v_l v_l^+||_F^2 expanded in Gram entries.
            std::vector<std::vector<cplx>> u, v;
            for (const auto &k : impl.kraus(a)) {
                u.push_back(apply(k, psi.amplitudes()));
            }
            for (const auto &k : target.kraus(a)) {
                v.push_back(apply(k, psi.amplitudes()));
            }
            double f = 0.0;
            for (const auto &x : u) {
                for (const auto &y : u) {
                    f += std::norm(inner(x, y));
                }
            }
            for (const auto &x : v) {
                for (const auto &y : v) {
                    f += std::norm(inner(x, y));
                }
            }
            for (const auto &x : u) {
                for (const auto &y : v) {
                    f -= 2.0 * std::norm(inner(x, y));
                }
            }
            acc += std::max(0.0, f);
        }
        return acc / m;
    });
}

ComplexMatrix symmetric_subspace_projector(std::size_t d) {
    if (d == 0) {
        throw Error(ErrorCode::kInvalidArgument, "symmetric subspace needs d >= 1");
    }
    ComplexMatrix p = ComplexMatrix::identity(d * d) + swap_operator(d);
    p *= 0.5;
    return p;
}

}  // namespace measrepro::rms
