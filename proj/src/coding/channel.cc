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

#include "measrepro/coding.h"
#include "measrepro/errors.h"
#include "measrepro/linalg.h"

namespace measrepro::coding {

namespace {

constexpr double kRowTolerance = 1e-12;

// Divergences D(W(.|x) || q) in bits.
std::vector<double> divergences(const ClassicalChannel &channel, const std::vector<double> &q) {
    std::vector<double> d(channel.inputs(), 0.0);
    for (std::size_t x = 0; x < channel.inputs(); ++x) {
        for (std::size_t a = 0; a < channel.outputs(); ++a) {
            const double w = channel.row(x)[a];
            if (w > 0.0) {
                d[x] += w * std::log2(w / q[a]);
            }
        }
    }
    return d;
}

std::vector<double> output_distribution(const ClassicalChannel &channel, std::span<const double> px) {
    std::vector<double> q(channel.outputs(), 0.0);
    for (std::size_t x = 0; x < channel.inputs(); ++x) {
        for (std::size_t a = 0; a < channel.outputs(); ++a) {
            q[a] += px[x] * channel.row(x)[a];
        }
    }
    return q;
}

}  // namespace

ClassicalChannel ClassicalChannel::create(std::vector<std::vector<double>> rows) {
    if (rows.empty() || rows.front().empty()) {
        throw Error(ErrorCode::kInvalidArgument, "channel needs at least one input and one output letter");
    }
    for (std::size_t x = 0; x < rows.size(); ++x) {
        if (rows[x].size() != rows.front().size()) {
            throw Error(ErrorCode::kShapeMismatch, "channel rows differ in length");
        }
        double sum = 0.0;
        for (double v : rows[x]) {
            if (!(v >= 0.0)) {
                throw Error(ErrorCode::kInvalidArgument, "negative entry in channel row " + std::to_string(x));
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowTolerance) {
            std::ostringstream os;
            os.precision(15);
            os << "channel row " << x << " sums to " << sum;
            throw Error(ErrorCode::kInvalidArgument, os.str());
        }
    }
    return ClassicalChannel(std::move(rows));
}

ClassicalChannel associated_channel(const Povm &available, std::optional<std::span<const ComplexMatrix>> states) {
    std::vector<ComplexMatrix> inputs;
    if (states) {
        for (const auto &rho : *states) {
            if (rho.rows() != available.dim() || !rho.is_hermitian(1e-10) ||
                std::abs(rho.trace() - cplx(1.0)) > 1e-10 || hermitian_eig(rho.hermitian_part()).values.back() < -1e-10) {
                throw Error(ErrorCode::kInvalidArgument, "channel input states must be density matrices");
            }
            inputs.push_back(rho);
        }
    } else {
        for (std::size_t x = 0; x < available.dim(); ++x) {
            inputs.push_back(StateVector::basis(available.dim(), x).density());
        }
    }
    std::vector<std::vector<double>> rows;
    for (const auto &rho : inputs) {
        auto p = available.probabilities(rho);
        double sum = 0.0;
        for (auto &v : p) {
            v = std::max(0.0, v);
            sum += v;
        }
        for (auto &v : p) {
            v /= sum;
        }
        rows.push_back(std::move(p));
    }
    return ClassicalChannel::create(std::move(rows));
}

ClassicalChannel binary_symmetric_channel(double flip) {
    if (!(flip >= 0.0 && flip <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "flip probability must lie in [0, 1]");
    }
    return ClassicalChannel::create({{1.0 - flip, flip}, {flip, 1.0 - flip}});
}

ClassicalChannel identity_channel(std::size_t letters) {
    std::vector<std::vector<double>> rows(letters, std::vector<double>(letters, 0.0));
    for (std::size_t x = 0; x < letters; ++x) {
        rows[x][x] = 1.0;
    }
    return ClassicalChannel::create(std::move(rows));
}

double mutual_information(std::span<const double> px, const ClassicalChannel &channel) {
    if (px.size() != channel.inputs()) {
        throw Error(ErrorCode::kShapeMismatch, "input distribution does not match the channel");
    }
    const auto q = output_distribution(channel, px);
    const auto d = divergences(channel, q);
    double info = 0.0;
    for (std::size_t x = 0; x < px.size(); ++x) {
        if (px[x] > 0.0) {
            info += px[x] * d[x];
        }
    }
    return std::max(0.0, info);
}

CapacityResult blahut_arimoto(const ClassicalChannel &channel, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
    }
    CapacityResult out;
    std::vector<double> p(channel.inputs(), 1.0 / static_cast<double>(channel.inputs()));
    while (true) {
        const auto q = output_distribution(channel, p);
        const auto d = divergences(channel, q);
        double z = 0.0;
        double upper = 0.0;
        for (std::size_t x = 0; x < p.size(); ++x) {
            z += p[x] * std::exp2(d[x]);
            upper = std::max(upper, d[x]);
        }
        const double lower = std::log2(z);
        out.capacity = std::max(0.0, lower);
        out.upper = upper;
        out.gap = std::max(0.0, upper - lower);
        out.input = p;
        if (out.gap <= tol) {
            out.converged = true;
            break;
        }
        if (out.iterations == max_iter) {
            break;
        }
        ++out.iterations;
        for (std::size_t x = 0; x < p.size(); ++x) {
            p[x] *= std::exp2(d[x]) / z;
        }
    }
    return out;
}

}  // namespace measrepro::coding
