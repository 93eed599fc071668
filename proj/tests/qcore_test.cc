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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <gtest/gtest.h>

#include "measrepro/errors.h"
#include "measrepro/linalg.h"
#include "measrepro/quantum.h"
#include "measrepro/rng.h"

using namespace measrepro;

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix reconstruct(const EigenDecomposition &eig) {
    const std::size_t n = eig.values.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out += ComplexMatrix::projector(eig.vectors.column(k)) * eig.values[k];
    }
    return out;
}

template <typename F>
void expect_error(ErrorCode code, F f) {
    try {
        f();
        FAIL() << "expected " << error_code_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

ComplexMatrix trine_q0_two_uses() {
    const auto trine = trine_povm();
    const auto id = ComplexMatrix::identity(2);
    const auto rest = id - trine.element(0);
    return ComplexMatrix::identity(4) - tensor(rest, rest);
}

}  // namespace

TEST(tensor, identity_and_trace) {
    EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
    const auto m0 = trine_povm().element(0);
    EXPECT_NEAR(tensor(m0, m0).trace().real(), 4.0 / 9.0, 1e-15);
}

TEST(tensor, projector_action) {
    const auto p0 = ComplexMatrix::projector(StateVector::basis(2, 0).amplitudes());
    const auto p1 = ComplexMatrix::projector(StateVector::basis(2, 1).amplitudes());
    const auto ket01 = StateVector::basis(4, 1);
    const auto out = measrepro::apply(tensor(p0, p1), ket01.amplitudes());
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(out[i], ket01[i]);
    }
}

TEST(tensor, associative_entrywise) {
    // Dyadic entries keep every product exact, so both groupings agree bit for bit.
    Rng rng(7);
    const auto dyadic = [&](std::size_t n) {
        ComplexMatrix m(n, n);
        for (auto &e : m.entries()) {
            e = cplx(static_cast<double>(rng.index(17)) / 8.0 - 1.0, static_cast<double>(rng.index(17)) / 8.0 - 1.0);
        }
        return m;
    };
    const auto a = dyadic(2);
    const auto b = dyadic(3);
    const auto c = dyadic(2);
    const auto left = tensor(tensor(a, b), c);
    const auto right = tensor(a, tensor(b, c));
    ASSERT_EQ(left.rows(), right.rows());
    for (std::size_t i = 0; i < left.entries().size(); ++i) {
        EXPECT_EQ(left.entries()[i], right.entries()[i]);
    }
    const auto ga = random_hermitian(2, rng);
    const auto gb = random_hermitian(3, rng);
    const auto gc = random_hermitian(2, rng);
    EXPECT_LE(max_abs_difference(tensor(tensor(ga, gb), gc), tensor(ga, tensor(gb, gc))), 1e-14);
}

TEST(tensor, dimension_cap) {
    expect_error(ErrorCode::kDimensionTooLarge,
                 [] { tensor(ComplexMatrix::identity(16), ComplexMatrix::identity(16), 128); });
    const std::vector<ComplexMatrix> many(17, ComplexMatrix::identity(2));
    expect_error(ErrorCode::kDimensionTooLarge, [&] { tensor_all(many); });
    expect_error(ErrorCode::kDimensionTooLarge,
                 [] { tensor(ComplexMatrix::identity(256), ComplexMatrix::identity(512)); });
}

TEST(partial_trace, factorized) {
    Rng rng(11);
    const auto a = random_hermitian(3, rng);
    const auto b = random_hermitian(2, rng);
    const std::vector<std::size_t> dims = {3, 2};
    const std::vector<std::size_t> keep = {0};
    const auto reduced = partial_trace(tensor(a, b), dims, keep);
    EXPECT_LE(max_abs_difference(reduced, a * b.trace()), 1e-12);
    const std::vector<std::size_t> keep_second = {1};
    EXPECT_LE(max_abs_difference(partial_trace(tensor(a, b), dims, keep_second), b * a.trace()), 1e-12);
}

TEST(partial_trace, bell_state) {
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> bell = {h, 0.0, 0.0, h};
    const std::vector<std::size_t> dims = {2, 2};
    const std::vector<std::size_t> keep = {0};
    const auto reduced = partial_trace(ComplexMatrix::projector(bell), dims, keep);
    EXPECT_LE(max_abs_difference(reduced, ComplexMatrix::identity(2) * 0.5), 1e-15);
}

TEST(partial_trace, preserves_trace_and_checks_dims) {
    Rng rng(3);
    const auto m = random_hermitian(12, rng);
    const std::vector<std::size_t> dims = {2, 3, 2};
    const std::vector<std::size_t> keep = {0, 2};
    EXPECT_NEAR(std::abs(partial_trace(m, dims, keep).trace() - m.trace()), 0.0, 1e-12);
    const std::vector<std::size_t> bad = {2, 2};
    expect_error(ErrorCode::kShapeMismatch, [&] { partial_trace(m, bad, keep); });
}

TEST(hermitian_eig, two_use_trine_coarse_element) {
    const auto eig = hermitian_eig(trine_q0_two_uses());
    const std::vector<double> expected = {8.0 / 9.0, 2.0 / 3.0, 2.0 / 3.0, 0.0};
    ASSERT_EQ(eig.values.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(eig.values[i], expected[i], 1e-12);
    }
}

TEST(hermitian_eig, identity_and_trine_element) {
    for (double v : hermitian_eig(ComplexMatrix::identity(5)).values) {
        EXPECT_EQ(v, 1.0);
    }
    const auto eig = hermitian_eig(trine_povm().element(0));
    EXPECT_NEAR(eig.values[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(eig.values[1], 0.0, 1e-15);
}

TEST(hermitian_eig, matches_reference_solver) {
    Rng rng(2026);
    for (std::size_t trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + (trial * 13) % 64;
        const auto m = random_hermitian(n, rng);
        const auto eig = hermitian_eig(m);
        EXPECT_LE(frobenius_distance(reconstruct(eig), m), 1e-10) << "n = " << n;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(m));
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_NEAR(eig.values[k], oracle.eigenvalues()(static_cast<Eigen::Index>(n - 1 - k)), 1e-10);
        }
        for (std::size_t k = 1; k < n; ++k) {
            EXPECT_GE(eig.values[k - 1], eig.values[k]);
        }
        const auto gram = eig.vectors.adjoint() * eig.vectors;
        EXPECT_LE(max_abs_difference(gram, ComplexMatrix::identity(n)), 1e-12);
    }
}

TEST(hermitian_eig, deterministic_tie_order) {
    const std::vector<double> diag = {0.5, 0.5, 0.2};
    const auto eig = hermitian_eig(ComplexMatrix::diagonal(diag));
    EXPECT_EQ(eig.vectors(0, 0), cplx(1.0));
    EXPECT_EQ(eig.vectors(1, 1), cplx(1.0));
    const auto again = hermitian_eig(ComplexMatrix::diagonal(diag));
    EXPECT_EQ(eig.vectors, again.vectors);
}

TEST(hermitian_eig, rejects_non_hermitian) {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    expect_error(ErrorCode::kNotHermitian, [&] { hermitian_eig(m); });
}

TEST(haar_state, first_moment) {
    Rng rng(42);
    const std::size_t n = 100000;
    // Running sums of rho_00, Re rho_01, Im rho_01 and their squares.
    double sum[3] = {0.0, 0.0, 0.0};
    double sum_sq[3] = {0.0, 0.0, 0.0};
    for (std::size_t s = 0; s < n; ++s) {
        const auto rho = haar_state(2, rng).density();
        const double v[3] = {rho(0, 0).real(), rho(0, 1).real(), rho(0, 1).imag()};
        for (int k = 0; k < 3; ++k) {
            sum[k] += v[k];
            sum_sq[k] += v[k] * v[k];
        }
    }
    const double expected[3] = {0.5, 0.0, 0.0};
    const double nn = static_cast<double>(n);
    for (int k = 0; k < 3; ++k) {
        const double mean = sum[k] / nn;
        const double se = std::sqrt((sum_sq[k] / nn - mean * mean) / nn);
        EXPECT_LE(std::abs(mean - expected[k]), 3.0 * se) << "component " << k;
    }
}

TEST(haar_state, second_moment_converges) {
    // Sample mean of (psi psi^dagger)^{(x)2} against Pi_sym / 3.
    ComplexMatrix sym = ComplexMatrix::identity(4);
    sym(1, 1) = sym(2, 2) = 0.5;
    sym(1, 2) = sym(2, 1) = 0.5;
    sym *= 1.0 / 3.0;
    std::vector<double> deviations;
    for (std::size_t n : {1000u, 10000u, 100000u}) {
        Rng rng(5, n);
        ComplexMatrix sum(4, 4);
        ComplexMatrix sum_sq(4, 4);
        for (std::size_t s = 0; s < n; ++s) {
            const auto rho = haar_state(2, rng).density();
            const auto t = tensor(rho, rho);
            sum += t;
            for (std::size_t i = 0; i < 16; ++i) {
                const cplx e = t.entries()[i];
                sum_sq.entries()[i] += cplx(e.real() * e.real(), e.imag() * e.imag());
            }
        }
        const double nn = static_cast<double>(n);
        ComplexMatrix mean = sum * (1.0 / nn);
        double se_sq_total = 0.0;
        for (std::size_t i = 0; i < 16; ++i) {
            const cplx m = mean.entries()[i];
            se_sq_total += std::max(0.0, sum_sq.entries()[i].real() / nn - m.real() * m.real()) / nn;
            se_sq_total += std::max(0.0, sum_sq.entries()[i].imag() / nn - m.imag() * m.imag()) / nn;
        }
        // The squared Frobenius deviation has mean sum_i se_i^2.
        EXPECT_LE(frobenius_distance(mean, sym), 3.0 * std::sqrt(se_sq_total)) << "n = " << n;
        deviations.push_back(frobenius_distance(mean, sym));
    }
    // O(1/sqrt(n)): a hundredfold sample increase shrinks the error roughly tenfold.
    EXPECT_GT(deviations[0] / deviations[2], 3.0);
    EXPECT_LT(deviations[0] / deviations[2], 30.0);
}

TEST(haar_state, reproducible_per_seed_and_substream) {
    Rng a(42, 0);
    Rng b(42, 0);
    Rng c(42, 1);
    bool differs = false;
    for (int s = 0; s < 50; ++s) {
        const auto x = haar_state(3, a);
        const auto y = haar_state(3, b);
        const auto z = haar_state(3, c);
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_EQ(x[i], y[i]);
            differs = differs || x[i] != z[i];
        }
    }
    EXPECT_TRUE(differs);
}

TEST(validate_povm, trine_ok) {
    EXPECT_TRUE(validate_povm(trine_povm().elements()).ok());
}

TEST(validate_povm, completeness_defect) {
    const std::vector<ComplexMatrix> els = {ComplexMatrix::identity(2) * 0.5,
                                            ComplexMatrix::identity(2) * (1.0 / 3.0)};
    const auto report = validate_povm(els);
    EXPECT_FALSE(report.ok());
    EXPECT_NEAR(report.completeness_defect, std::sqrt(2.0) / 6.0, 1e-15);
}

TEST(validate_povm, positivity_defect) {
    const std::vector<double> d0 = {1.1, 0.0};
    const std::vector<double> d1 = {-0.1, 1.0};
    const std::vector<ComplexMatrix> els = {ComplexMatrix::diagonal(d0), ComplexMatrix::diagonal(d1)};
    const auto report = validate_povm(els);
    EXPECT_FALSE(report.ok());
    EXPECT_NEAR(report.positivity_defect, 0.1, 1e-12);
    EXPECT_EQ(report.worst_element, 1u);
    expect_error(ErrorCode::kInvalidMeasurement, [&] { Povm::create(els); });
}

TEST(povm, probabilities_sum_to_one) {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 2 + trial % 4;
        const auto povm = random_povm(d, 2 + trial % 3, rng);
        const auto p = povm.probabilities(random_density(d, rng));
        double total = 0.0;
        for (double v : p) {
            EXPECT_GE(v, -1e-12);
            total += v;
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(povm, trivial_predicate) {
    EXPECT_FALSE(is_trivial(trine_povm()));
    EXPECT_TRUE(is_trivial(Povm::create({ComplexMatrix::identity(2) * 0.5, ComplexMatrix::identity(2) * 0.5})));
}

TEST(induced_povm, luders_trine) {
    const auto trine = trine_povm();
    const auto induced = induced_povm(luders_instrument(trine));
    for (std::size_t a = 0; a < 3; ++a) {
        EXPECT_LE(max_abs_difference(induced.element(a), trine.element(a)), 1e-12);
    }
    const auto single = induced_povm(identity_instrument(3));
    ASSERT_EQ(single.outcomes(), 1u);
    EXPECT_LE(max_abs_difference(single.element(0), ComplexMatrix::identity(3)), 1e-15);
}

TEST(induced_povm, gram_sum_of_two_kraus) {
    const std::vector<double> a = {1.0, 0.0};
    ComplexMatrix k0 = ComplexMatrix::diagonal(a);
    ComplexMatrix k1(2, 2);
    k1(0, 1) = 1.0;  // |0><1|
    const auto inst = Instrument::create({{k0, k1}});
    const auto induced = induced_povm(inst);
    EXPECT_LE(max_abs_difference(induced.element(0), ComplexMatrix::identity(2)), 1e-15);
    expect_error(ErrorCode::kNotNormalized, [&] { Instrument::create({{k0}}); });
}

TEST(apply_subchannel, luders_trine_on_zero) {
    const auto inst = luders_instrument(trine_povm());
    const auto r = apply_subchannel(inst, 0, StateVector::basis(2, 0).density());
    EXPECT_NEAR(r.probability, 2.0 / 3.0, 1e-12);
}

TEST(apply_subchannel, identity_and_von_neumann) {
    Rng rng(1);
    const auto rho = random_density(2, rng);
    const auto id = apply_subchannel(identity_instrument(2), 0, rho);
    EXPECT_NEAR(id.probability, 1.0, 1e-12);
    EXPECT_LE(max_abs_difference(id.post_state, rho), 1e-12);
    const double h = 1.0 / std::sqrt(2.0);
    const auto plus = StateVector(std::vector<cplx>{h, h}).density();
    const auto vn = apply_subchannel(von_neumann_instrument(2), 0, plus);
    EXPECT_NEAR(vn.probability, 0.5, 1e-12);
    EXPECT_LE(max_abs_difference(vn.post_state, StateVector::basis(2, 0).density()), 1e-12);
    expect_error(ErrorCode::kZeroProbabilityOutcome,
                 [] { apply_subchannel(von_neumann_instrument(2), 1, StateVector::basis(2, 0).density()); });
}
