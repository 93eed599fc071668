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
#include <map>
#include <numeric>
#include <set>
#include <gtest/gtest.h>

#include "measrepro/coding.h"
#include "measrepro/errors.h"

using namespace measrepro;
using namespace measrepro::coding;

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

double h2(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Mutual information straight from the joint distribution.
double mi_oracle(const std::vector<double> &px, const std::vector<std::vector<double>> &w) {
    std::vector<double> pa(w[0].size(), 0.0);
    for (std::size_t x = 0; x < px.size(); ++x) {
        for (std::size_t a = 0; a < pa.size(); ++a) {
            pa[a] += px[x] * w[x][a];
        }
    }
    double i = 0.0;
    for (std::size_t x = 0; x < px.size(); ++x) {
        for (std::size_t a = 0; a < pa.size(); ++a) {
            const double joint = px[x] * w[x][a];
            if (joint > 0.0) {
                i += joint * std::log2(joint / (px[x] * pa[a]));
            }
        }
    }
    return i;
}

const std::vector<std::vector<double>> kTrineRows = {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}, {0.0, 0.5, 0.5}};

// Error of per-string ML decoding over every received string, ties to the
// lowest letter, undecodable strings counted as errors.
double repetition_symbol_error_oracle(const std::vector<std::vector<double>> &w, std::size_t copies) {
    const std::size_t m = w[0].size();
    std::size_t total = 1;
    for (std::size_t c = 0; c < copies; ++c) {
        total *= m;
    }
    double err = 0.0;
    for (std::size_t s = 0; s < total; ++s) {
        std::vector<double> like(w.size(), 1.0);
        std::size_t rest = s;
        for (std::size_t c = 0; c < copies; ++c) {
            const std::size_t a = rest % m;
            rest /= m;
            for (std::size_t x = 0; x < w.size(); ++x) {
                like[x] *= w[x][a];
            }
        }
        const auto best = std::max_element(like.begin(), like.end()) - like.begin();
        for (std::size_t x = 0; x < w.size(); ++x) {
            if (like[best] == 0.0 || static_cast<std::size_t>(best) != x) {
                err += like[x];
            }
        }
    }
    return err / static_cast<double>(w.size());
}

}  // namespace

TEST(ChannelTest, TrineAssociatedChannel) {
    const auto ch = associated_channel(trine_povm());
    ASSERT_EQ(ch.inputs(), 2u);
    ASSERT_EQ(ch.outputs(), 3u);
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t a = 0; a < 3; ++a) {
            EXPECT_NEAR(ch.row(x)[a], kTrineRows[x][a], 1e-12);
        }
    }
}

TEST(ChannelTest, StateInputsUseTrace) {
    const auto povm = trine_povm();
    const std::vector<ComplexMatrix> states = {ComplexMatrix::identity(2) * 0.5};
    const auto ch = associated_channel(povm, states);
    for (std::size_t a = 0; a < 3; ++a) {
        EXPECT_NEAR(ch.row(0)[a], 1.0 / 3.0, 1e-12);
    }
    const std::vector<ComplexMatrix> bad = {ComplexMatrix::identity(2)};
    expect_error(ErrorCode::kInvalidArgument, [&] { associated_channel(povm, bad); });
}

TEST(ChannelTest, RejectsMalformedRows) {
    expect_error(ErrorCode::kInvalidArgument, [] { ClassicalChannel::create({{0.5, 0.6}}); });
    expect_error(ErrorCode::kInvalidArgument, [] { ClassicalChannel::create({{1.5, -0.5}}); });
    expect_error(ErrorCode::kShapeMismatch, [] { ClassicalChannel::create({{1.0}, {0.5, 0.5}}); });
    expect_error(ErrorCode::kInvalidArgument, [] { binary_symmetric_channel(1.5); });
}

TEST(ChannelTest, MutualInformationMatchesOracle) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> w(3, std::vector<double>(4));
        for (auto &row : w) {
            double s = 0.0;
            for (auto &v : row) {
                v = rng.uniform();
                s += v;
            }
            for (auto &v : row) {
                v /= s;
            }
        }
        std::vector<double> px = {rng.uniform(), rng.uniform(), rng.uniform()};
        const double s = px[0] + px[1] + px[2];
        for (auto &p : px) {
            p /= s;
        }
        EXPECT_NEAR(mutual_information(px, ClassicalChannel::create(w)), mi_oracle(px, w), 1e-12);
    }
}

TEST(CapacityTest, BinarySymmetricChannel) {
    const auto r = blahut_arimoto(binary_symmetric_channel(0.1));
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.capacity, 1.0 - h2(0.1), 1e-4);
    EXPECT_NEAR(r.capacity, 0.5310, 1e-4);
    EXPECT_LE(r.capacity, r.upper);
    EXPECT_LE(r.upper - r.capacity, 1e-6);
}

TEST(CapacityTest, TrineMatchesGridOracle) {
    const auto r = blahut_arimoto(associated_channel(trine_povm()));
    ASSERT_TRUE(r.converged);
    double best = 0.0;
    for (int k = 0; k <= 10000; ++k) {
        const double p = k / 10000.0;
        best = std::max(best, mi_oracle({p, 1.0 - p}, kTrineRows));
    }
    EXPECT_NEAR(r.capacity, best, 1e-6);
    EXPECT_GE(r.upper + 1e-12, best);
    EXPECT_NEAR(mutual_information(r.input, associated_channel(trine_povm())), r.capacity, 1e-6);
}

TEST(CapacityTest, InvariantUnderRelabeling) {
    const std::vector<std::vector<double>> w = {{0.7, 0.2, 0.1}, {0.1, 0.3, 0.6}, {0.25, 0.5, 0.25}};
    const auto base = blahut_arimoto(ClassicalChannel::create(w));
    std::vector<std::vector<double>> permuted = {w[2], w[0], w[1]};
    for (auto &row : permuted) {
        std::swap(row[0], row[2]);
    }
    const auto other = blahut_arimoto(ClassicalChannel::create(permuted));
    EXPECT_NEAR(base.capacity, other.capacity, 2e-6);
}

TEST(CapacityTest, DominatesUniformInput) {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> w(4, std::vector<double>(3));
        for (auto &row : w) {
            double s = 0.0;
            for (auto &v : row) {
                v = rng.uniform();
                s += v;
            }
            for (auto &v : row) {
                v /= s;
            }
        }
        const auto ch = ClassicalChannel::create(w);
        const auto r = blahut_arimoto(ch);
        const std::vector<double> uniform(4, 0.25);
        EXPECT_GE(r.capacity, mutual_information(uniform, ch) - 1e-6);
        EXPECT_LE(r.capacity, std::log2(3.0) + 1e-12);
    }
}

TEST(CapacityTest, IdentityAndUselessChannels) {
    EXPECT_NEAR(blahut_arimoto(identity_channel(4)).capacity, 2.0, 1e-6);
    EXPECT_NEAR(blahut_arimoto(ClassicalChannel::create({{0.5, 0.5}, {0.5, 0.5}})).capacity, 0.0, 1e-9);
}

TEST(CapacityTest, IterationCapReportsNotConverged) {
    const auto r = blahut_arimoto(associated_channel(trine_povm()), 1e-15, 1);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 1u);
    EXPECT_LE(r.capacity, r.upper);
}

TEST(CodeTest, RepetitionLayout) {
    const auto code = repetition_code(2, 3, 2);
    ASSERT_EQ(code.messages(), 4u);
    EXPECT_EQ(code.n, 6u);
    const std::vector<std::size_t> expected = {1, 1, 1, 0, 0, 0};
    EXPECT_EQ(code.codewords[2], expected);
    EXPECT_DOUBLE_EQ(code.rate_bits_per_use(), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(code.uses_per_symbol(), 3.0);
    EXPECT_EQ(message_digits(5, 3, 2), (std::vector<std::size_t>{1, 0, 1}));
}

TEST(CodeTest, RandomCodebookIsInjective) {
    Rng rng(3);
    const auto code = random_codebook(4, 4, 2, rng);
    std::set<std::vector<std::size_t>> distinct(code.codewords.begin(), code.codewords.end());
    EXPECT_EQ(distinct.size(), 16u);
    expect_error(ErrorCode::kInvalidArgument, [&] { random_codebook(4, 3, 2, rng); });
    expect_error(ErrorCode::kTooLarge, [&] { random_codebook(17, 20, 2, rng); });
}

TEST(CodeTest, DecodeValidatesInput) {
    const auto ch = associated_channel(trine_povm());
    const auto code = repetition_code(1, 2, 2);
    const std::vector<std::size_t> short_block = {0};
    expect_error(ErrorCode::kShapeMismatch, [&] { decode(code, ch, short_block); });
    const std::vector<std::size_t> bad_letter = {0, 3};
    expect_error(ErrorCode::kInvalidArgument, [&] { decode(code, ch, bad_letter); });
    const auto wide = repetition_code(1, 2, 3);
    const std::vector<std::size_t> ok = {0, 0};
    expect_error(ErrorCode::kShapeMismatch, [&] { decode(wide, ch, ok); });
}

TEST(CodeTest, RandomCodeDecodingIsMaximumLikelihood) {
    Rng rng(21);
    const auto ch = associated_channel(trine_povm());
    const auto code = random_codebook(2, 5, 2, rng);
    std::vector<std::size_t> received(5);
    for (std::size_t s = 0; s < 243; ++s) {
        std::size_t rest = s;
        for (auto &a : received) {
            a = rest % 3;
            rest /= 3;
        }
        std::vector<double> like;
        for (const auto &word : code.codewords) {
            double l = 1.0;
            for (std::size_t p = 0; p < 5; ++p) {
                l *= kTrineRows[word[p]][received[p]];
            }
            like.push_back(l);
        }
        const double best = *std::max_element(like.begin(), like.end());
        const auto got = decode(code, ch, received);
        if (best == 0.0) {
            EXPECT_FALSE(got.has_value());
        } else {
            ASSERT_TRUE(got.has_value());
            EXPECT_NEAR(like[*got], best, 1e-12 * best);
        }
    }
}

TEST(RepetitionTest, ExactErrorMatchesStringOracle) {
    const auto ch = associated_channel(trine_povm());
    for (std::size_t copies = 1; copies <= 7; ++copies) {
        const double e = repetition_symbol_error_oracle(kTrineRows, copies);
        EXPECT_NEAR(repetition_exact_error(ch, 1, copies), e, 1e-13);
        EXPECT_NEAR(repetition_exact_error(ch, 3, copies), 1.0 - std::pow(1.0 - e, 3.0), 1e-13);
    }
    const std::vector<std::vector<double>> noisy = {{0.8, 0.15, 0.05}, {0.1, 0.6, 0.3}};
    for (std::size_t copies = 1; copies <= 6; ++copies) {
        EXPECT_NEAR(repetition_exact_error(ClassicalChannel::create(noisy), 1, copies),
                    repetition_symbol_error_oracle(noisy, copies), 1e-13);
    }
}

TEST(RepetitionTest, TrineErrorFallsWithCopies) {
    const auto ch = associated_channel(trine_povm());
    EXPECT_NEAR(repetition_exact_error(ch, 1, 1), 1.0 / 6.0, 1e-14);
    EXPECT_LT(repetition_exact_error(ch, 1, 15), 1e-3);
    double prev = 1.0;
    for (std::size_t copies = 1; copies <= 20; ++copies) {
        const double e = repetition_exact_error(ch, 1, copies);
        EXPECT_LT(e, prev);
        prev = e;
    }
}

TEST(BlockTest, EmptyMessageNeverErrs) {
    Rng rng(1);
    const auto ch = associated_channel(trine_povm());
    const auto code = random_codebook(0, 3, 2, rng);
    const auto sim = simulate_block_protocol(ch, code, {}, 1000, rng);
    EXPECT_EQ(sim.error_rate, 0.0);
}

TEST(BlockTest, SimulationAgreesWithExactDistribution) {
    Rng rng(17);
    const auto ch = associated_channel(trine_povm());
    const auto code = random_codebook(3, 6, 2, rng);
    const std::vector<double> weights = {0.3, 0.1, 0.05, 0.05, 0.2, 0.1, 0.1, 0.1};
    const auto dist = block_outcome_distribution(ch, code, weights);
    ASSERT_EQ(dist.size(), 9u);
    EXPECT_NEAR(std::accumulate(dist.begin(), dist.end(), 0.0), 1.0, 1e-12);
    // Exact error: message i drawn and something else decoded.
    double exact_error = 0.0;
    std::vector<std::size_t> received(6);
    for (std::size_t s = 0; s < 729; ++s) {
        std::size_t rest = s;
        for (std::size_t p = 6; p-- > 0;) {
            received[p] = rest % 3;
            rest /= 3;
        }
        const auto guess = decode(code, ch, received);
        for (std::size_t i = 0; i < 8; ++i) {
            double l = weights[i];
            for (std::size_t p = 0; p < 6; ++p) {
                l *= kTrineRows[code.codewords[i][p]][received[p]];
            }
            if (!guess || *guess != i) {
                exact_error += l;
            }
        }
    }
    const std::size_t trials = 200000;
    const auto sim = simulate_block_protocol(ch, code, weights, trials, rng);
    EXPECT_NEAR(sim.error_rate, exact_error, 4.0 * std::sqrt(exact_error * (1 - exact_error) / trials));
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(sim.effective[i], dist[i], 4.0 * std::sqrt(dist[i] * (1 - dist[i]) / trials) + 1e-12);
    }
}

TEST(BlockTest, SimulationIsSeedDeterministic) {
    const auto ch = associated_channel(trine_povm());
    Rng a(99), b(99);
    const auto code_a = random_codebook(3, 5, 2, a);
    const auto code_b = random_codebook(3, 5, 2, b);
    const auto ra = simulate_block_protocol(ch, code_a, {}, 20000, a);
    const auto rb = simulate_block_protocol(ch, code_b, {}, 20000, b);
    EXPECT_EQ(ra.error_rate, rb.error_rate);
    EXPECT_EQ(ra.effective, rb.effective);
}

TEST(BlockTest, LongerRandomCodesHelp) {
    const auto ch = associated_channel(trine_povm());
    Rng rng(8);
    const auto short_code = random_codebook(4, 4, 2, rng);
    const auto long_code = random_codebook(4, 16, 2, rng);
    const auto s = simulate_block_protocol(ch, short_code, {}, 20000, rng);
    const auto l = simulate_block_protocol(ch, long_code, {}, 20000, rng);
    EXPECT_LT(l.error_rate + 4.0 * (l.standard_error + s.standard_error), s.error_rate);
    const auto dense = random_codebook(8, 8, 2, rng);
    EXPECT_GT(simulate_block_protocol(ch, dense, {}, 20000, rng).error_rate, 0.1);
}

TEST(BlockTest, EnsembleErrorFallsWithBlockLength) {
    const auto ch = binary_symmetric_channel(0.1);
    double prev = 1.0;
    for (std::size_t n : {4u, 8u, 12u, 16u}) {
        Rng rng(1234);
        double avg = 0.0;
        std::vector<std::size_t> received(n);
        for (int c = 0; c < 20; ++c) {
            const auto code = random_codebook(4, n, 2, rng);
            // Under uniform messages the success probability is the mean
            // likelihood of the decoded codeword over received strings.
            double correct = 0.0;
            for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
                for (std::size_t p = 0; p < n; ++p) {
                    received[p] = (s >> p) & 1;
                }
                const auto guess = decode(code, ch, received);
                if (!guess) {
                    continue;
                }
                double l = 1.0;
                for (std::size_t p = 0; p < n; ++p) {
                    l *= code.codewords[*guess][p] == received[p] ? 0.9 : 0.1;
                }
                correct += l / 16.0;
            }
            avg += (1.0 - correct) / 20.0;
        }
        EXPECT_LT(avg, prev) << "n = " << n;
        prev = avg;
    }
}

TEST(BlockTest, QuantumPathMatchesClassicalOnBasisInputs) {
    const auto povm = trine_povm();
    const auto ch = associated_channel(povm);
    const auto code = repetition_code(2, 2, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<cplx> alpha(4, 0.0);
        alpha[i] = 1.0;
        std::vector<double> w(4, 0.0);
        w[i] = 1.0;
        const auto q = block_outcome_distribution_quantum(povm, code, alpha);
        const auto c = block_outcome_distribution(ch, code, w);
        ASSERT_EQ(q.size(), c.size());
        for (std::size_t j = 0; j < q.size(); ++j) {
            EXPECT_NEAR(q[j], c[j], 1e-12);
        }
    }
}

TEST(BlockTest, DephasedMixtureMatchesClassicalWeights) {
    Rng rng(31);
    const auto povm = random_povm(2, 3, rng);
    const auto ch = associated_channel(povm);
    const auto code = repetition_code(2, 1, 2);
    const std::vector<cplx> alpha = {cplx(0.3, 0.1), cplx(-0.5, 0.2), cplx(0.1, 0.6), cplx(0.4, -0.2)};
    double norm = 0.0;
    for (auto a : alpha) {
        norm += std::norm(a);
    }
    std::vector<double> weights;
    std::vector<double> mixture(5, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
        weights.push_back(std::norm(alpha[i]) / norm);
        std::vector<cplx> basis(4, 0.0);
        basis[i] = 1.0;
        const auto q = block_outcome_distribution_quantum(povm, code, basis);
        for (std::size_t j = 0; j < 5; ++j) {
            mixture[j] += weights[i] * q[j];
        }
    }
    const auto classical = block_outcome_distribution(ch, code, weights);
    const auto coherent = block_outcome_distribution_quantum(povm, code, alpha);
    double gap = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_NEAR(mixture[j], classical[j], 1e-12);
        gap = std::max(gap, std::abs(coherent[j] - classical[j]));
    }
    EXPECT_GT(gap, 1e-3);
}

TEST(BlockTest, IdentityReproducesBornWeights) {
    const auto povm = von_neumann_povm(2);
    const auto code = repetition_code(3, 1, 2);
    std::vector<cplx> alpha;
    Rng rng(4);
    double norm = 0.0;
    for (int i = 0; i < 8; ++i) {
        alpha.push_back(rng.complex_normal());
        norm += std::norm(alpha.back());
    }
    const auto dist = block_outcome_distribution_quantum(povm, code, alpha);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(dist[i], std::norm(alpha[i]) / norm, 1e-12);
    }
    EXPECT_NEAR(dist[8], 0.0, 1e-15);
}

TEST(BlockTest, QuantumPathLimits) {
    const auto povm = trine_povm();
    const auto code = repetition_code(7, 1, 2);
    const std::vector<cplx> alpha(128, 1.0);
    expect_error(ErrorCode::kTooLarge, [&] { block_outcome_distribution_quantum(povm, code, alpha); });
    const auto small = repetition_code(1, 1, 2);
    const std::vector<cplx> wrong(3, 1.0);
    expect_error(ErrorCode::kShapeMismatch, [&] { block_outcome_distribution_quantum(povm, small, wrong); });
}
