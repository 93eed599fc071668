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
#include <set>
#include <gtest/gtest.h>

#include "measrepro/errors.h"
#include "measrepro/linalg.h"
#include "measrepro/subroutines.h"

using namespace measrepro;
using namespace measrepro::subroutines;

namespace {

template <typename F>
void expect_error(ErrorCode code, F f) {
    try {
        f();
        FAIL() << "expected " << error_code_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

const DistributionTable kTrineTable = {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}, {0.0, 0.5, 0.5}};

CloningBasis basis_from_table(DistributionTable table) {
    CloningBasis b;
    b.table = std::move(table);
    return b;
}

// Error probabilities by listing every outcome string.
std::vector<double> string_enumeration_errors(const DistributionTable &table, std::size_t uses) {
    const std::size_t m = table.front().size();
    std::size_t strings = 1;
    for (std::size_t k = 0; k < uses; ++k) {
        strings *= m;
    }
    std::vector<double> err(table.size(), 0.0);
    std::vector<std::size_t> s(uses);
    for (std::size_t idx = 0; idx < strings; ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = 0; k < uses; ++k) {
            s[k] = rest % m;
            rest /= m;
        }
        const auto decoded = ml_decode(s, table);
        for (std::size_t i = 0; i < table.size(); ++i) {
            double p = 1.0;
            for (auto a : s) {
                p *= table[i][a];
            }
            if (!decoded || *decoded != i) {
                err[i] += p;
            }
        }
    }
    return err;
}

}  // namespace

TEST(build_measurement_isometry, von_neumann) {
    const auto iso = build_measurement_isometry(von_neumann_instrument(2));
    EXPECT_EQ(iso.kraus_dim, 1u);
    EXPECT_LE(max_abs_difference(iso.w.adjoint() * iso.w, ComplexMatrix::identity(2)), 1e-15);
    const std::vector<cplx> psi = {cplx(0.6, 0.0), cplx(0.0, 0.8)};
    const auto out = measrepro::apply(iso.w, psi);
    // |0>|0>|0> and |1>|1>|0>.
    EXPECT_EQ(out[0], psi[0]);
    EXPECT_EQ(out[3], psi[1]);
    EXPECT_EQ(out[1], cplx{});
    EXPECT_EQ(out[2], cplx{});
}

TEST(build_measurement_isometry, luders_trine_and_identity) {
    const auto iso = build_measurement_isometry(luders_instrument(trine_povm()));
    EXPECT_LE(max_abs_difference(iso.w.adjoint() * iso.w, ComplexMatrix::identity(2)), 1e-12);
    const auto branches = run_post_measurement(luders_instrument(trine_povm()), StateVector::basis(2, 0));
    EXPECT_NEAR(branches[0].probability, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(branches[1].probability, 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(branches[2].probability, 1.0 / 6.0, 1e-12);
    const auto id = build_measurement_isometry(identity_instrument(3));
    EXPECT_LE(max_abs_difference(id.w, ComplexMatrix::identity(3)), 1e-15);
}

TEST(run_post_measurement, von_neumann_on_plus) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto branches = run_post_measurement(von_neumann_instrument(2), StateVector(std::vector<cplx>{h, h}));
    ASSERT_EQ(branches.size(), 2u);
    for (std::size_t a = 0; a < 2; ++a) {
        EXPECT_NEAR(branches[a].probability, 0.5, 1e-15);
        ASSERT_TRUE(branches[a].post_state.has_value());
        EXPECT_LE(max_abs_difference(*branches[a].post_state, StateVector::basis(2, a).density()), 1e-15);
    }
    const auto zero = run_post_measurement(von_neumann_instrument(2), StateVector::basis(2, 0));
    EXPECT_FALSE(zero[1].post_state.has_value());
}

TEST(run_post_measurement, matches_subchannels) {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 2 + trial % 2;
        const std::size_t m = 2 + trial % 3;
        std::vector<std::size_t> ranks;
        for (std::size_t a = 0; a < m; ++a) {
            ranks.push_back(1 + (a + trial) % 3);
        }
        const auto inst = random_instrument(d, ranks, rng);
        for (int s = 0; s < 20; ++s) {
            const auto psi = haar_state(d, rng);
            const auto branches = run_post_measurement(inst, psi);
            double total = 0.0;
            for (std::size_t a = 0; a < m; ++a) {
                const auto expected = apply_subchannel(inst, a, psi.density());
                EXPECT_NEAR(branches[a].probability, expected.probability, 1e-10);
                ASSERT_TRUE(branches[a].post_state.has_value());
                EXPECT_LE(max_abs_difference(*branches[a].post_state, expected.post_state), 1e-10);
                total += branches[a].probability;
            }
            EXPECT_NEAR(total, 1.0, 1e-10);
        }
    }
}

TEST(embed_outcomes, register_counts) {
    const auto seven = embed_outcomes(7, 2);
    EXPECT_EQ(seven.registers, 3u);
    std::set<std::vector<std::size_t>> seen(seven.labels.begin(), seven.labels.end());
    EXPECT_EQ(seen.size(), 7u);
    EXPECT_EQ(embed_outcomes(5, 3).registers, 2u);
    EXPECT_EQ(embed_outcomes(4, 4).registers, 1u);
    EXPECT_EQ(embed_outcomes(9, 3).registers, 2u);
    EXPECT_EQ(embed_outcomes(10, 3).registers, 3u);
}

TEST(select_cloning_basis, trine_keeps_computational_basis) {
    const auto b = select_cloning_basis(trine_povm());
    EXPECT_EQ(b.rotations, 0u);
    EXPECT_EQ(b.theta, 0.0);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t a = 0; a < 3; ++a) {
            EXPECT_NEAR(b.table[i][a], kTrineTable[i][a], 1e-15);
        }
    }
}

TEST(select_cloning_basis, degenerate_qutrit) {
    const auto b = select_cloning_basis(degenerate_qutrit_povm());
    EXPECT_GT(b.theta, 0.0);
    EXPECT_LT(b.theta, std::acos(-1.0) / 4.0);
    const double c2 = std::cos(b.theta) * std::cos(b.theta);
    const double s2 = 1.0 - c2;
    const DistributionTable expected = {{c2, s2}, {s2, c2}, {0.0, 1.0}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t a = 0; a < 2; ++a) {
            EXPECT_NEAR(b.table[i][a], expected[i][a], 1e-12);
        }
    }
}

TEST(select_cloning_basis, trivial_rejected) {
    const auto flat = Povm::create({ComplexMatrix::identity(2) * 0.5, ComplexMatrix::identity(2) * 0.5});
    expect_error(ErrorCode::kTrivialMeasurement, [&] { select_cloning_basis(flat); });
}

TEST(select_cloning_basis, random_and_structured_measurements) {
    Rng rng(9);
    std::vector<Povm> cases;
    for (int i = 0; i < 100; ++i) {
        cases.push_back(random_povm(2 + i % 3, 2 + i % 3, rng));
    }
    // Flat on a two-dimensional block, informative only across blocks.
    const std::vector<double> a = {1.0, 1.0, 0.0, 0.0};
    const std::vector<double> b = {0.0, 0.0, 1.0, 1.0};
    cases.push_back(Povm::create({ComplexMatrix::diagonal(a), ComplexMatrix::diagonal(b)}));
    // Identical computational rows but a non-flat element on the pair's span.
    ComplexMatrix x(2, 2);
    x(0, 0) = x(1, 1) = x(0, 1) = x(1, 0) = 0.5;
    cases.push_back(Povm::create({x, ComplexMatrix::identity(2) - x}));
    for (const auto &povm : cases) {
        const auto basis = select_cloning_basis(povm);
        const std::size_t d = povm.dim();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                EXPECT_NEAR(std::abs(inner(basis.states[i].amplitudes(), basis.states[j].amplitudes())),
                            i == j ? 1.0 : 0.0, 1e-10);
                if (i < j) {
                    EXPECT_GE(total_variation(basis.table[i], basis.table[j]), kDistinctRows);
                }
            }
        }
    }
}

TEST(ml_decode, trine_cases) {
    const std::vector<std::size_t> zero = {0};
    EXPECT_EQ(ml_decode(zero, kTrineTable), 0u);
    const std::vector<std::size_t> ones = {1, 1};
    EXPECT_EQ(ml_decode(ones, kTrineTable), 1u);
    EXPECT_EQ(ml_decode(std::vector<std::size_t>{}, kTrineTable), 0u);
    const DistributionTable disjoint = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    const std::vector<std::size_t> two = {2};
    EXPECT_FALSE(ml_decode(two, disjoint).has_value());
}

TEST(cloning_error_rate, trine_single_use) {
    Rng rng(1);
    const auto r = cloning_error_rate(basis_from_table(kTrineTable), 1, ErrorMode::kExact, 0, rng);
    EXPECT_NEAR(r.per_state[0], 1.0 / 3.0, 1e-15);
    EXPECT_EQ(r.per_state[1], 0.0);
}

TEST(cloning_error_rate, exact_matches_string_enumeration) {
    Rng rng(1);
    const DistributionTable table = {{0.5, 0.3, 0.2}, {0.2, 0.2, 0.6}, {0.1, 0.6, 0.3}};
    for (std::size_t n = 1; n <= 7; ++n) {
        const auto r = cloning_error_rate(basis_from_table(table), n, ErrorMode::kExact, 0, rng);
        const auto oracle = string_enumeration_errors(table, n);
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_NEAR(r.per_state[i], oracle[i], 1e-12) << "n = " << n;
        }
    }
}

TEST(cloning_error_rate, trine_closed_form_and_monotone) {
    Rng rng(1);
    double previous = 1.0;
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto r = cloning_error_rate(basis_from_table(kTrineTable), n, ErrorMode::kExact, 0, rng);
        EXPECT_NEAR(r.average, 0.5 * std::pow(3.0, -static_cast<double>(n)), 1e-15);
        EXPECT_LE(r.average, previous);
        previous = r.average;
    }
}

TEST(cloning_error_rate, chernoff_bound_at_twenty) {
    Rng rng(1);
    const auto xi = chernoff_information(kTrineTable[0], kTrineTable[1]);
    const auto r = cloning_error_rate(basis_from_table(kTrineTable), 20, ErrorMode::kExact, 0, rng);
    EXPECT_LE(r.average, std::exp(-20.0 * xi.value / 2.0));
}

TEST(cloning_error_rate, indistinguishable_rows) {
    Rng rng(1);
    const DistributionTable same = {{0.3, 0.7}, {0.3, 0.7}};
    for (std::size_t n : {1u, 5u, 12u}) {
        EXPECT_NEAR(cloning_error_rate(basis_from_table(same), n, ErrorMode::kExact, 0, rng).average, 0.5, 1e-12);
    }
}

TEST(cloning_error_rate, sampled_agrees_with_exact) {
    const DistributionTable table = {{0.5, 0.3, 0.2}, {0.2, 0.2, 0.6}};
    Rng rng(3);
    const auto exact = cloning_error_rate(basis_from_table(table), 5, ErrorMode::kExact, 0, rng);
    const auto sampled = cloning_error_rate(basis_from_table(table), 5, ErrorMode::kSampled, 200000, rng);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_LE(std::abs(sampled.per_state[i] - exact.per_state[i]), 3.0 * sampled.per_state_se[i] + 1e-12);
    }
    Rng a(5);
    Rng b(5);
    EXPECT_EQ(cloning_error_rate(basis_from_table(table), 5, ErrorMode::kSampled, 10000, a).average,
              cloning_error_rate(basis_from_table(table), 5, ErrorMode::kSampled, 10000, b).average);
}

TEST(chernoff_information, basic_cases) {
    const std::vector<double> p = {0.2, 0.3, 0.5};
    EXPECT_NEAR(chernoff_information(p, p).value, 0.0, 1e-15);
    const std::vector<double> a = {1.0, 0.0};
    const std::vector<double> b = {0.0, 1.0};
    EXPECT_TRUE(chernoff_information(a, b).infinite);
}

TEST(chernoff_information, matches_grid_oracle) {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases = {
        {kTrineTable[0], kTrineTable[1]},
        {{0.5, 0.3, 0.2}, {0.2, 0.2, 0.6}},
        {{0.9, 0.1}, {0.1, 0.9}},
    };
    for (const auto &[p, q] : cases) {
        double best = 1e300;
        for (int k = 0; k <= 10000; ++k) {
            const double s = k / 10000.0;
            double acc = 0.0;
            for (std::size_t a = 0; a < p.size(); ++a) {
                if (p[a] > 0.0 && q[a] > 0.0) {
                    acc += std::pow(p[a], s) * std::pow(q[a], 1.0 - s);
                }
            }
            best = std::min(best, std::log(acc));
        }
        EXPECT_NEAR(chernoff_information(p, q).value, -best, 1e-8);
    }
    EXPECT_NEAR(chernoff_information(kTrineTable[0], kTrineTable[1]).value, std::log(3.0), 1e-10);
}
