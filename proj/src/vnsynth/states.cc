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
#include <optional>
#include <sstream>

#include "measrepro/errors.h"
#include "measrepro/vnsynth.h"

namespace measrepro::vnsynth {

namespace {

constexpr double kEigenvalueMatch = 1e-12;

// sqrt(w)|v_hi> + sqrt(1 - w)|v_lo>; a singleton when hi == lo.
struct Support {
    std::size_t hi = 0;
    std::size_t lo = 0;
    double weight = 1.0;

    bool overlaps(const Support &o) const {
        return hi == o.hi || hi == o.lo || lo == o.hi || lo == o.lo;
    }
};

std::vector<Support> supports_for(const EigenDecomposition &eig, double target) {
    const auto &v = eig.values;
    std::vector<Support> out;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(v[j] - target) <= kEigenvalueMatch) {
            out.push_back({j, j, 1.0});
        }
    }
    std::vector<Support> pairs;
    for (std::size_t j = 0; j < v.size(); ++j) {
        for (std::size_t k = j + 1; k < v.size(); ++k) {
            if (v[j] > target + kEigenvalueMatch && v[k] < target - kEigenvalueMatch) {
                pairs.push_back({j, k, std::clamp((target - v[k]) / (v[j] - v[k]), 0.0, 1.0)});
            }
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [&](const Support &a, const Support &b) {
        const double wa = v[a.hi] - v[a.lo];
        const double wb = v[b.hi] - v[b.lo];
        if (std::abs(wa - wb) > kEigenvalueMatch) {
            return wa < wb;
        }
        if (a.hi != b.hi) {
            return a.hi > b.hi;
        }
        return a.lo < b.lo;
    });
    out.insert(out.end(), pairs.begin(), pairs.end());
    return out;
}

std::vector<cplx> realize(const EigenDecomposition &eig, const Support &s) {
    auto out = eig.vectors.column(s.hi);
    if (s.hi == s.lo) {
        return out;
    }
    const auto lo = eig.vectors.column(s.lo);
    const double a = std::sqrt(s.weight);
    const double b = std::sqrt(1.0 - s.weight);
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[r] = a * out[r] + b * lo[r];
    }
    return out;
}

std::vector<cplx> with_tag(std::span<const cplx> u, std::size_t tag) {
    std::vector<cplx> out(2 * u.size());
    for (std::size_t r = 0; r < u.size(); ++r) {
        out[2 * r + tag] = u[r];
    }
    return out;
}

// (Q (x) I_anc)|v> with the ancilla register as the fastest index.
std::vector<cplx> apply_measured(const ComplexMatrix &q, std::span<const cplx> v, std::size_t anc_dim) {
    const std::size_t n = q.rows();
    std::vector<cplx> out(v.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const cplx e = q(r, c);
            if (e == cplx{}) {
                continue;
            }
            for (std::size_t t = 0; t < anc_dim; ++t) {
                out[r * anc_dim + t] += e * v[c * anc_dim + t];
            }
        }
    }
    return out;
}

}  // namespace

ComplexMatrix StatePrep::isometry() const {
    ComplexMatrix v(total_dim(), states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t r = 0; r < total_dim(); ++r) {
            v(r, i) = states[i][r];
        }
    }
    return v;
}

StatePrep construct_states(const PartitionProtocol &protocol, double x, double y) {
    if (protocol.target_outcomes() != 2) {
        throw Error(ErrorCode::kInvalidArgument, "state construction supports two-outcome targets");
    }
    const auto eig = hermitian_eig(protocol.coarse(0));
    const double lmax = eig.values.front();
    const double lmin = eig.values.back();
    for (double t : {x, y}) {
        if (t < lmin - kEigenvalueMatch || t > lmax + kEigenvalueMatch) {
            std::ostringstream os;
            os.precision(12);
            os << "target " << t << " outside [" << lmin << ", " << lmax << "]";
            throw Error(ErrorCode::kUnachievable, os.str());
        }
    }
    // Targets at the spectrum edge within tolerance are snapped onto it.
    const auto snap = [&](double t) {
        return std::clamp(t, lmin, lmax);
    };
    const auto sx = supports_for(eig, snap(x));
    const auto sy = supports_for(eig, snap(y));
    if (sx.empty() || sy.empty()) {
        throw Error(ErrorCode::kUnachievable, "no eigenvector support for the requested targets");
    }

    StatePrep prep;
    prep.measured_systems = protocol.uses();
    prep.measured_dim = protocol.system_dim();
    std::optional<std::pair<Support, Support>> chosen;
    for (const auto &a : sx) {
        for (const auto &b : sy) {
            if (!a.overlaps(b)) {
                chosen.emplace(a, b);
                break;
            }
        }
        if (chosen) {
            break;
        }
    }
    if (chosen) {
        prep.states.emplace_back(StateVector::normalized(realize(eig, chosen->first)));
        prep.states.emplace_back(StateVector::normalized(realize(eig, chosen->second)));
    } else {
        prep.ancilla_qubits = 1;
        prep.states.emplace_back(StateVector::normalized(with_tag(realize(eig, sx.front()), 0)));
        prep.states.emplace_back(StateVector::normalized(with_tag(realize(eig, sy.front()), 1)));
    }
    return prep;
}

Povm implemented_povm(const StatePrep &prep, const PartitionProtocol &protocol) {
    if (prep.measured_dim != protocol.system_dim() || prep.states.size() != protocol.target_outcomes()) {
        throw Error(ErrorCode::kShapeMismatch, "state preparation does not match the protocol");
    }
    const std::size_t t = prep.states.size();
    const std::size_t anc_dim = std::size_t{1} << prep.ancilla_qubits;
    std::vector<ComplexMatrix> elements;
    for (const auto &q : protocol.coarse()) {
        ComplexMatrix m(t, t);
        for (std::size_t k = 0; k < t; ++k) {
            const auto qk = apply_measured(q, prep.states[k].amplitudes(), anc_dim);
            for (std::size_t j = 0; j < t; ++j) {
                m(j, k) = inner(prep.states[j].amplitudes(), qk);
            }
        }
        elements.push_back(m.hermitian_part());
    }
    return Povm::create(std::move(elements));
}

ComplexMatrix complete_unitary(const StatePrep &prep) {
    const std::size_t dim = prep.total_dim();
    const std::size_t t = prep.states.size();
    if (t == 0 || dim % t != 0) {
        throw Error(ErrorCode::kShapeMismatch, "total dimension is not a multiple of the target dimension");
    }
    const std::size_t omega = dim / t;
    std::vector<std::vector<cplx>> columns(dim);
    std::vector<bool> filled(dim, false);
    std::vector<std::vector<cplx>> basis;
    for (std::size_t i = 0; i < t; ++i) {
        const auto amps = prep.states[i].amplitudes();
        columns[i * omega].assign(amps.begin(), amps.end());
        filled[i * omega] = true;
        basis.push_back(columns[i * omega]);
    }
    std::size_t next = 0;
    for (std::size_t c = 0; c < dim; ++c) {
        if (filled[c]) {
            continue;
        }
        while (true) {
            if (next >= dim) {
                throw Error(ErrorCode::kInvalidArgument, "prepared states are not linearly independent");
            }
            std::vector<cplx> v(dim);
            v[next++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto &b : basis) {
                    const cplx proj = inner(b, v);
                    for (std::size_t r = 0; r < dim; ++r) {
                        v[r] -= proj * b[r];
                    }
                }
            }
            double norm = 0.0;
            for (const auto &e : v) {
                norm += std::norm(e);
            }
            if (norm > 1e-6) {
                for (auto &e : v) {
                    e /= std::sqrt(norm);
                }
                basis.push_back(v);
                columns[c] = std::move(v);
                break;
            }
        }
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            u(r, c) = columns[c][r];
        }
    }
    return u;
}

}  // namespace measrepro::vnsynth
