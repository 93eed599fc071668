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

constexpr double kBoundSlack = 1e-12;
constexpr std::size_t kMaxIterations = 10000;
constexpr std::size_t kBisectionSteps = 200;

double qubit_objective(double x, double y) {
    const double a = 1.0 - x - y;
    return (a * a + (1.0 - x) * y) / 3.0;
}

// Moves v onto {lo <= w <= hi, sum w = 1} in Euclidean norm. The minimizer is
// w = clamp(v - tau) for the tau that fixes the sum.
void project_column(std::vector<double> &v, const std::vector<double> &lo, const std::vector<double> &hi) {
    const auto shifted_sum = [&](double tau) {
        double s = 0.0;
        for (std::size_t a = 0; a < v.size(); ++a) {
            s += std::clamp(v[a] - tau, lo[a], hi[a]);
        }
        return s;
    };
    double left = v[0] - hi[0];
    double right = v[0] - lo[0];
    for (std::size_t a = 1; a < v.size(); ++a) {
        left = std::min(left, v[a] - hi[a]);
        right = std::max(right, v[a] - lo[a]);
    }
    for (std::size_t step = 0; step < kBisectionSteps && right - left > 0.0; ++step) {
        const double mid = 0.5 * (left + right);
        if (mid <= left || mid >= right) {
            break;
        }
        (shifted_sum(mid) > 1.0 ? left : right) = mid;
    }
    const double tau = 0.5 * (left + right);
    for (std::size_t a = 0; a < v.size(); ++a) {
        v[a] = std::clamp(v[a] - tau, lo[a], hi[a]);
    }
}

}  // namespace

std::string_view region_name(BoxRegion region) {
    switch (region) {
        case BoxRegion::kLeft:
            return "left";
        case BoxRegion::kCorner:
            return "corner";
        case BoxRegion::kRight:
            return "right";
    }
    return "unknown";
}

BoxQuadSolution solve_box_quadratic_qubit(double lambda_min, double lambda_max) {
    if (!(lambda_min >= 0.0 && lambda_max <= 1.0 && lambda_min <= lambda_max)) {
        std::ostringstream os;
        os << "need 0 <= lambda_min <= lambda_max <= 1, got [" << lambda_min << ", " << lambda_max << "]";
        throw Error(ErrorCode::kInvalidBounds, os.str());
    }
    BoxQuadSolution s;
    s.lambda_min = lambda_min;
    s.lambda_max = lambda_max;
    if (lambda_max <= 1.0 - 2.0 * lambda_min) {
        s.region = BoxRegion::kLeft;
        s.x = lambda_max;
        s.y = std::clamp((1.0 - lambda_max) / 2.0, lambda_min, lambda_max);
    } else if (lambda_max >= 1.0 - lambda_min / 2.0) {
        s.region = BoxRegion::kRight;
        s.x = std::clamp(1.0 - lambda_min / 2.0, lambda_min, lambda_max);
        s.y = lambda_min;
    } else {
        s.region = BoxRegion::kCorner;
        s.x = lambda_max;
        s.y = lambda_min;
    }
    s.epsilon = std::sqrt(std::max(0.0, qubit_objective(s.x, s.y)));
    return s;
}

QuditQpSolution solve_box_quadratic_qudit(QuditQpProblem problem) {
    const std::size_t d = problem.d;
    if (d < 2 || problem.lower.size() != d || problem.upper.size() != d) {
        throw Error(ErrorCode::kShapeMismatch, "qudit problem needs d >= 2 and d bounds per side");
    }
    double lower_sum = 0.0;
    double upper_sum = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        if (!(problem.lower[a] <= problem.upper[a])) {
            throw Error(ErrorCode::kInvalidBounds, "outcome " + std::to_string(a) + " has lower > upper");
        }
        lower_sum += problem.lower[a];
        upper_sum += problem.upper[a];
    }
    if (lower_sum > 1.0 + kBoundSlack || upper_sum < 1.0 - kBoundSlack) {
        std::ostringstream os;
        os << "columns cannot sum to 1: bounds sum to [" << lower_sum << ", " << upper_sum << "]";
        throw Error(ErrorCode::kInfeasible, os.str());
    }

    const double dd = static_cast<double>(d);
    const double c = 1.0 / (dd * dd * (dd + 1.0));
    // Hessian is 2c (J + I) per row with J the all-ones matrix.
    const double lipschitz = 2.0 * c * (dd + 1.0);

    auto &x = problem.x;
    x.assign(d, std::vector<double>(d, 1.0 / dd));
    const auto gradient = [&](const rms::OutcomeTable &t) {
        rms::OutcomeTable g(d, std::vector<double>(d));
        for (std::size_t a = 0; a < d; ++a) {
            double row = 0.0;
            for (double v : t[a]) {
                row += v;
            }
            for (std::size_t i = 0; i < d; ++i) {
                g[a][i] = 2.0 * c * ((row - 1.0) + t[a][i] - (a == i ? 1.0 : 0.0));
            }
        }
        return g;
    };
    // One projected gradient step; returns the largest coordinate change.
    const auto step = [&](rms::OutcomeTable &t) {
        const auto g = gradient(t);
        double change = 0.0;
        std::vector<double> col(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t a = 0; a < d; ++a) {
                col[a] = t[a][i] - g[a][i] / lipschitz;
            }
            project_column(col, problem.lower, problem.upper);
            for (std::size_t a = 0; a < d; ++a) {
                change = std::max(change, std::abs(col[a] - t[a][i]));
                t[a][i] = col[a];
            }
        }
        return change;
    };

    QuditQpSolution out;
    {
        std::vector<double> col(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t a = 0; a < d; ++a) {
                col[a] = x[a][i];
            }
            project_column(col, problem.lower, problem.upper);
            for (std::size_t a = 0; a < d; ++a) {
                x[a][i] = col[a];
            }
        }
    }
    while (out.iterations < kMaxIterations) {
        ++out.iterations;
        if (step(x) <= 1e-15) {
            break;
        }
    }
    auto probe = x;
    out.kkt_residual = lipschitz * step(probe);
    out.epsilon = rms::rms_closed_form_qudit(x, d, d, rms::QuditNormalization::kOutcomeAverage);
    out.epsilon_outcome_sum = rms::rms_closed_form_qudit(x, d, d, rms::QuditNormalization::kOutcomeSum);
    out.problem = std::move(problem);
    return out;
}

QuditQpProblem qudit_problem_from_protocol(const PartitionProtocol &protocol) {
    QuditQpProblem problem;
    problem.d = protocol.target_outcomes();
    for (const auto &q : protocol.coarse()) {
        const auto eig = hermitian_eig(q);
        problem.lower.push_back(std::clamp(eig.values.back(), 0.0, 1.0));
        problem.upper.push_back(std::clamp(eig.values.front(), 0.0, 1.0));
    }
    return problem;
}

}  // namespace measrepro::vnsynth
