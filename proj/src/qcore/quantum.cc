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

#include "measrepro/quantum.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "measrepro/errors.h"
#include "measrepro/linalg.h"

namespace measrepro {

namespace {

constexpr double kZeroProbability = 1e-14;

ComplexMatrix gram_sum(std::span<const ComplexMatrix> ops) {
    ComplexMatrix acc(ops.front().cols(), ops.front().cols());
    for (const auto &k : ops) {
        acc += k.adjoint() * k;
    }
    return acc;
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    ComplexMatrix g(rows, cols);
    for (auto &e : g.entries()) {
        e = rng.complex_normal();
    }
    return g;
}

}  // namespace

std::string PovmReport::describe() const {
    std::ostringstream os;
    if (ok()) {
        os << "ok";
    }
    for (std::size_t i = 0; i < violations.size(); ++i) {
        os << (i ? "; " : "") << violations[i];
    }
    return os.str();
}

PovmReport validate_povm(std::span<const ComplexMatrix> elements) {
    PovmReport report;
    if (elements.empty()) {
        report.violations.push_back("no elements");
        return report;
    }
    const std::size_t d = elements.front().rows();
    for (std::size_t a = 0; a < elements.size(); ++a) {
        const auto &m = elements[a];
        if (!m.is_square() || m.rows() != d) {
            report.violations.push_back("element " + std::to_string(a) + " has shape " + std::to_string(m.rows()) +
                                        "x" + std::to_string(m.cols()) + ", expected " + std::to_string(d) + "x" +
                                        std::to_string(d));
            return report;
        }
        if (!m.is_hermitian(1e-12)) {
            report.violations.push_back("element " + std::to_string(a) + " is not Hermitian");
            return report;
        }
    }
    ComplexMatrix sum(d, d);
    for (std::size_t a = 0; a < elements.size(); ++a) {
        const double smallest = hermitian_eig(elements[a]).values.back();
        if (-smallest > report.positivity_defect) {
            report.positivity_defect = -smallest;
            report.worst_element = a;
        }
        sum += elements[a];
    }
    report.completeness_defect = frobenius_distance(sum, ComplexMatrix::identity(d));
    if (report.positivity_defect > kPositivityTolerance) {
        std::ostringstream os;
        os << "positivity violation: element " << report.worst_element << " has eigenvalue "
           << -report.positivity_defect;
        report.violations.push_back(os.str());
    }
    if (report.completeness_defect > kCompletenessTolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "completeness violation: ||sum_a M_a - I||_F = " << report.completeness_defect;
        report.violations.push_back(os.str());
    }
    return report;
}

Povm Povm::create(std::vector<ComplexMatrix> elements) {
    const auto report = validate_povm(elements);
    if (!report.ok()) {
        throw Error(ErrorCode::kInvalidMeasurement, report.describe());
    }
    return Povm(std::move(elements));
}

Povm Povm::unchecked(std::vector<ComplexMatrix> elements) {
    return Povm(std::move(elements));
}

std::vector<double> Povm::probabilities(const ComplexMatrix &rho) const {
    std::vector<double> p;
    p.reserve(elements_.size());
    for (const auto &m : elements_) {
        p.push_back((m * rho).trace().real());
    }
    return p;
}

std::vector<double> Povm::probabilities(const StateVector &psi) const {
    std::vector<double> p;
    p.reserve(elements_.size());
    for (const auto &m : elements_) {
        p.push_back(sandwich(psi.amplitudes(), m, psi.amplitudes()).real());
    }
    return p;
}

bool is_trivial(const Povm &povm, double tol) {
    const std::size_t d = povm.dim();
    for (const auto &m : povm.elements()) {
        const ComplexMatrix flat = ComplexMatrix::identity(d) * (m.trace() / static_cast<double>(d));
        if (frobenius_distance(m, flat) > tol) {
            return false;
        }
    }
    return true;
}

Instrument Instrument::create(std::vector<std::vector<ComplexMatrix>> kraus) {
    if (kraus.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "instrument needs at least one outcome");
    }
    std::vector<ComplexMatrix> all;
    for (std::size_t a = 0; a < kraus.size(); ++a) {
        if (kraus[a].empty()) {
            throw Error(ErrorCode::kInvalidArgument, "outcome " + std::to_string(a) + " has no Kraus operators");
        }
        for (const auto &k : kraus[a]) {
            all.push_back(k);
        }
    }
    const std::size_t din = all.front().cols();
    const std::size_t dout = all.front().rows();
    for (const auto &k : all) {
        if (k.cols() != din || k.rows() != dout) {
            throw Error(ErrorCode::kShapeMismatch, "Kraus operators have inconsistent shapes");
        }
    }
    const double defect = frobenius_distance(gram_sum(all), ComplexMatrix::identity(din));
    if (defect > kCompletenessTolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "||sum K^dagger K - I||_F = " << defect;
        throw Error(ErrorCode::kNotNormalized, os.str());
    }
    return Instrument(din, dout, std::move(kraus));
}

std::size_t Instrument::max_kraus_rank() const {
    std::size_t r = 0;
    for (const auto &ks : kraus_) {
        r = std::max(r, ks.size());
    }
    return r;
}

ComplexMatrix Instrument::subchannel(std::size_t a, const ComplexMatrix &rho) const {
    ComplexMatrix out(dim_out_, dim_out_);
    for (const auto &k : kraus_.at(a)) {
        out += k * rho * k.adjoint();
    }
    return out;
}

Povm induced_povm(const Instrument &inst) {
    std::vector<ComplexMatrix> elements;
    elements.reserve(inst.outcomes());
    for (std::size_t a = 0; a < inst.outcomes(); ++a) {
        elements.push_back(gram_sum(inst.kraus(a)).hermitian_part());
    }
    return Povm::create(std::move(elements));
}

SubchannelResult apply_subchannel(const Instrument &inst, std::size_t a, const ComplexMatrix &rho) {
    if (rho.rows() != inst.dim_in() || rho.cols() != inst.dim_in()) {
        throw Error(ErrorCode::kShapeMismatch, "state dimension does not match instrument input");
    }
    ComplexMatrix out = inst.subchannel(a, rho);
    const double p = out.trace().real();
    if (p < kZeroProbability) {
        throw Error(ErrorCode::kZeroProbabilityOutcome, "outcome " + std::to_string(a) + " has probability " +
                                                            std::to_string(p));
    }
    out *= 1.0 / p;
    return {p, std::move(out)};
}

StateVector haar_state(std::size_t dim, Rng &rng) {
    if (dim == 0) {
        throw Error(ErrorCode::kInvalidArgument, "haar_state needs dim >= 1");
    }
    std::vector<cplx> amps(dim);
    for (auto &a : amps) {
        a = rng.complex_normal();
    }
    return StateVector::normalized(std::move(amps));
}

Povm trine_povm() {
    const double s3 = std::sqrt(3.0);
    const std::vector<std::vector<cplx>> directions = {{1.0, 0.0}, {0.5, s3 / 2.0}, {0.5, -s3 / 2.0}};
    std::vector<ComplexMatrix> elements;
    for (const auto &phi : directions) {
        elements.push_back(ComplexMatrix::projector(phi) * (2.0 / 3.0));
    }
    return Povm::create(std::move(elements));
}

Povm noisy_z_povm(double p, double q) {
    const std::vector<double> n0 = {p, 1.0 - q};
    const std::vector<double> n1 = {1.0 - p, q};
    return Povm::create({ComplexMatrix::diagonal(n0), ComplexMatrix::diagonal(n1)});
}

Povm von_neumann_povm(std::size_t d) {
    std::vector<ComplexMatrix> elements;
    for (std::size_t i = 0; i < d; ++i) {
        ComplexMatrix m(d, d);
        m(i, i) = 1.0;
        elements.push_back(std::move(m));
    }
    return Povm::create(std::move(elements));
}

Povm degenerate_qutrit_povm() {
    const std::vector<double> m0 = {1.0, 0.0, 0.0};
    const std::vector<double> m1 = {0.0, 1.0, 1.0};
    return Povm::create({ComplexMatrix::diagonal(m0), ComplexMatrix::diagonal(m1)});
}

Instrument luders_instrument(const Povm &povm) {
    std::vector<std::vector<ComplexMatrix>> kraus;
    for (const auto &m : povm.elements()) {
        kraus.push_back({psd_sqrt(m)});
    }
    return Instrument::create(std::move(kraus));
}

Instrument von_neumann_instrument(std::size_t d) {
    std::vector<std::vector<ComplexMatrix>> kraus;
    const auto povm = von_neumann_povm(d);
    for (const auto &m : povm.elements()) {
        kraus.push_back({m});
    }
    return Instrument::create(std::move(kraus));
}

Instrument identity_instrument(std::size_t d) {
    return Instrument::create({{ComplexMatrix::identity(d)}});
}

Povm random_povm(std::size_t dim, std::size_t outcomes, Rng &rng) {
    std::vector<ComplexMatrix> raw;
    ComplexMatrix total(dim, dim);
    for (std::size_t a = 0; a < outcomes; ++a) {
        const auto g = ginibre(dim, dim, rng);
        raw.push_back((g.adjoint() * g).hermitian_part());
        total += raw.back();
    }
    const auto inv_sqrt = hermitian_function(total, [](double x) { return 1.0 / std::sqrt(x); });
    std::vector<ComplexMatrix> elements;
    for (const auto &r : raw) {
        elements.push_back((inv_sqrt * r * inv_sqrt).hermitian_part());
    }
    return Povm::create(std::move(elements));
}

Instrument random_instrument(std::size_t dim, std::span<const std::size_t> kraus_per_outcome, Rng &rng) {
    std::vector<std::vector<ComplexMatrix>> raw;
    ComplexMatrix total(dim, dim);
    for (auto count : kraus_per_outcome) {
        raw.emplace_back();
        for (std::size_t i = 0; i < count; ++i) {
            raw.back().push_back(ginibre(dim, dim, rng));
            total += raw.back().back().adjoint() * raw.back().back();
        }
    }
    const auto inv_sqrt = hermitian_function(total.hermitian_part(), [](double x) { return 1.0 / std::sqrt(x); });
    for (auto &ks : raw) {
        for (auto &k : ks) {
            k = k * inv_sqrt;
        }
    }
    return Instrument::create(std::move(raw));
}

ComplexMatrix random_density(std::size_t dim, Rng &rng) {
    const auto g = ginibre(dim, dim, rng);
    ComplexMatrix rho = (g * g.adjoint()).hermitian_part();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng &rng) {
    return ginibre(dim, dim, rng).hermitian_part();
}

}  // namespace measrepro
