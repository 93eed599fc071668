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

#include <chrono>
#include <limits>
#include <cmath>
#include <sstream>

#include "measrepro/cli.h"
#include "measrepro/coding.h"
#include "measrepro/errors.h"
#include "measrepro/linalg.h"
#include "measrepro/rms.h"
#include "measrepro/subroutines.h"
#include "measrepro/vnsynth.h"

namespace measrepro::cli {

namespace {

constexpr double kClosedFormTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kSigmas = 3.0;

class Stopwatch {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunReport start_report(std::string command, const std::string &inputs, const CommandOptions &options) {
    RunReport r;
    std::ostringstream key;
    key << command << '\n'
        << inputs << "\nsamples=" << options.samples << " tol=" << format_number(options.tol)
        << " max_n=" << options.max_n << " uses=" << options.uses << " targets=" << options.targets
        << " k=" << options.k << " restarts=" << options.restarts;
    r.command = std::move(command);
    r.inputs_digest = fnv1a64(key.str());
    r.seed = options.seed;
    return r;
}

std::string label(const std::string &prefix, std::size_t i) {
    return prefix + std::to_string(i);
}

std::string rate_note(std::size_t k, std::size_t n) {
    return "rate k/N=" + format_number(static_cast<double>(k) / static_cast<double>(n)) +
           " R_k=N/k=" + format_number(static_cast<double>(n) / static_cast<double>(k));
}

// Both qudit normalizations for an implementation diagonal in the target basis.
void report_normalizations(RunReport &report, const rms::OutcomeTable &table, std::size_t d) {
    report.info("epsilon_outcome_average", rms::rms_closed_form_qudit(table, d, d, rms::QuditNormalization::kOutcomeAverage),
                0.0, "1/(m d (d+1)) normalization");
    report.info("epsilon_outcome_sum", rms::rms_closed_form_qudit(table, d, d, rms::QuditNormalization::kOutcomeSum),
                0.0, "1/(d (d+1)) normalization");
}

bool is_diagonal(const ComplexMatrix &m, double tol) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (r != c && std::abs(m(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

rms::OutcomeTable diagonal_table(const Povm &povm) {
    rms::OutcomeTable table;
    for (const auto &m : povm.elements()) {
        std::vector<double> row;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            row.push_back(m(i, i).real());
        }
        table.push_back(std::move(row));
    }
    return table;
}

Povm computational_implementation(const vnsynth::PartitionProtocol &protocol, std::span<const std::size_t> rows) {
    // Basis product states |r_i> on the measured systems, no ancilla.
    vnsynth::StatePrep prep;
    prep.measured_systems = protocol.uses();
    prep.measured_dim = protocol.system_dim();
    for (auto r : rows) {
        prep.states.push_back(StateVector::basis(protocol.system_dim(), r));
    }
    return vnsynth::implemented_povm(prep, protocol);
}

}  // namespace

RunReport cmd_validate(const std::string &spec, const CommandOptions &options) {
    Stopwatch watch;
    const auto m = load_measurement(spec);
    auto report = start_report("validate", measurement_to_json(m), options);
    const auto povm = as_povm(m);
    const auto check = validate_povm(povm.elements());
    report.info("dim", static_cast<double>(povm.dim()));
    report.info("outcomes", static_cast<double>(povm.outcomes()));
    if (const auto *inst = std::get_if<Instrument>(&m)) {
        report.info("max_kraus_rank", static_cast<double>(inst->max_kraus_rank()), 0.0, "instrument");
    }
    report.info("positivity_defect", check.positivity_defect);
    report.info("completeness_defect", check.completeness_defect);
    report.check_flag("valid", check.ok(), check.ok() ? 1.0 : 0.0, check.describe());
    report.info("trivial", is_trivial(povm) ? 1.0 : 0.0, 0.0,
                is_trivial(povm) ? "every element is proportional to I" : "");
    report.wall_seconds = watch.seconds();
    return report;
}

RunReport cmd_synth(const std::string &spec, const CommandOptions &options) {
    Stopwatch watch;
    const auto m = load_measurement(spec);
    auto report = start_report("synth", measurement_to_json(m), options);
    const auto povm = as_povm(m);
    const std::size_t uses = options.uses;
    const std::size_t strings = vnsynth::string_count(povm.outcomes(), uses);
    report.info("uses", static_cast<double>(uses));
    report.info("strings", static_cast<double>(strings));
    if (options.targets == 2) {
        const auto result = [&] {
            if (strings <= vnsynth::kMaxExhaustiveStrings) {
                return vnsynth::exhaustive_search(povm, uses);
            }
            Rng rng(options.seed);
            std::vector<std::vector<std::size_t>> seeds;
            for (std::size_t a = 0; a < povm.outcomes(); ++a) {
                seeds.push_back(vnsynth::any_outcome_assignment(povm.outcomes(), uses, a));
            }
            return vnsynth::hill_climb_search(povm, uses, options.restarts, rng, seeds);
        }();
        const auto &s = result.solution;
        report.info("partitions_evaluated", static_cast<double>(result.evaluated), 0.0,
                    strings <= vnsynth::kMaxExhaustiveStrings ? "exhaustive" : "hill climb");
        if (strings <= vnsynth::kMaxExhaustiveStrings) {
            report.info("co_optimal_partitions", static_cast<double>(result.co_optimal.size()));
        }
        report.info("lambda_min", s.lambda_min);
        report.info("lambda_max", s.lambda_max);
        report.info("x", s.x);
        report.info("y", s.y);
        report.info("epsilon", s.epsilon, 0.0, std::string("region ") + std::string(vnsynth::region_name(s.region)));
        const auto prep = vnsynth::construct_states(result.protocol, s.x, s.y);
        const auto impl = vnsynth::implemented_povm(prep, result.protocol);
        report.info("ancilla_qubits", static_cast<double>(prep.ancilla_qubits));
        report.check("epsilon_implemented", rms::rms_exact_povm(impl, von_neumann_povm(2)), s.epsilon,
                     kClosedFormTol, 0.0, "exact Haar average of the implemented POVM");
        report_normalizations(report, diagonal_table(impl), 2);
    } else {
        const std::size_t d = options.targets;
        if (povm.outcomes() < d) {
            throw Error(ErrorCode::kInvalidArgument, "need at least as many outcomes as target outcomes");
        }
        const auto protocol = vnsynth::build_partition_povm(
            povm, uses, vnsynth::first_outcome_assignment(povm.outcomes(), uses, d), d);
        const auto sol = vnsynth::solve_box_quadratic_qudit(vnsynth::qudit_problem_from_protocol(protocol));
        report.info("epsilon_outcome_average", sol.epsilon, 0.0, "1/(m d (d+1)) normalization, first-outcome map");
        report.info("epsilon_outcome_sum", sol.epsilon_outcome_sum, 0.0, "1/(d (d+1)) normalization");
        report.info("iterations", static_cast<double>(sol.iterations));
        report.info("kkt_residual", sol.kkt_residual);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t i = 0; i < d; ++i) {
                report.info("x[" + std::to_string(a) + "][" + std::to_string(i) + "]", sol.problem.x[a][i]);
            }
        }
    }
    report.wall_seconds = watch.seconds();
    return report;
}

RunReport cmd_rms(const std::string &implemented, const std::string &target, const CommandOptions &options) {
    Stopwatch watch;
    const auto mi = load_measurement(implemented);
    const auto mt = load_measurement(target);
    auto report = start_report("rms", measurement_to_json(mi) + measurement_to_json(mt), options);
    const auto impl = as_povm(mi);
    const auto tgt = as_povm(mt);
    const std::size_t samples = options.samples ? options.samples : 100000;
    const double exact = rms::rms_exact_povm(impl, tgt);
    report.info("epsilon_exact", exact, 0.0, "second-moment identity");
    const auto mc = rms::rms_monte_carlo_povm(impl, tgt, samples, options.seed);
    report.info("epsilon_monte_carlo", mc.value, mc.standard_error, std::to_string(samples) + " Haar samples");
    const std::size_t d = impl.dim();
    const bool target_is_vn =
        tgt.outcomes() == d && [&] {
            const auto vn = von_neumann_povm(d);
            for (std::size_t a = 0; a < d; ++a) {
                if (max_abs_difference(tgt.element(a), vn.element(a)) > kExactTol) {
                    return false;
                }
            }
            return true;
        }();
    if (target_is_vn && impl.outcomes() == d) {
        if (d == 2) {
            const auto &m0 = impl.element(0);
            report.info("epsilon_closed_form_qubit", rms::rms_closed_form_qubit(m0(0, 0).real(), m0(1, 1).real(), m0(0, 1)));
        }
        bool diagonal = true;
        for (const auto &e : impl.elements()) {
            diagonal = diagonal && is_diagonal(e, kExactTol);
        }
        if (diagonal) {
            report_normalizations(report, diagonal_table(impl), d);
        }
    }
    if (std::holds_alternative<Instrument>(mi) || std::holds_alternative<Instrument>(mt)) {
        const auto ii = as_instrument(mi);
        const auto it = as_instrument(mt);
        const auto inst = rms::rms_monte_carlo_instrument(ii, it, samples, options.seed);
        report.info("epsilon_instrument_monte_carlo", inst.value, inst.standard_error, "post-measurement states included");
    }
    report.wall_seconds = watch.seconds();
    return report;
}

RunReport cmd_postmeas(const std::string &spec, const CommandOptions &options) {
    Stopwatch watch;
    const auto m = load_measurement(spec);
    auto report = start_report("postmeas", measurement_to_json(m), options);
    const auto inst = as_instrument(m);
    const std::size_t states = options.samples ? options.samples : 20;
    const auto iso = subroutines::build_measurement_isometry(inst);
    report.info("isometry_rows", static_cast<double>(iso.w.rows()));
    report.info("outcome_registers",
                static_cast<double>(subroutines::embed_outcomes(inst.outcomes(), inst.dim_in()).registers));
    Rng rng(options.seed);
    double prob_dev = 0.0;
    double state_dev = 0.0;
    for (std::size_t s = 0; s < states; ++s) {
        const auto psi = haar_state(inst.dim_in(), rng);
        const auto rho = psi.density();
        for (const auto &branch : subroutines::run_post_measurement(inst, psi)) {
            const double p = inst.subchannel(branch.outcome, rho).trace().real();
            prob_dev = std::max(prob_dev, std::abs(p - branch.probability));
            if (branch.post_state) {
                const auto target = apply_subchannel(inst, branch.outcome, rho);
                state_dev = std::max(state_dev, max_abs_difference(*branch.post_state, target.post_state));
            }
        }
    }
    report.check("max_probability_deviation", prob_dev, 0.0, kClosedFormTol, 0.0, std::to_string(states) + " Haar states");
    report.check("max_post_state_deviation", state_dev, 0.0, kClosedFormTol);
    report.wall_seconds = watch.seconds();
    return report;
}

RunReport cmd_clone(const std::string &spec, const CommandOptions &options) {
    Stopwatch watch;
    const auto m = load_measurement(spec);
    auto report = start_report("clone", measurement_to_json(m), options);
    const auto povm = as_povm(m);
    const auto basis = subroutines::select_cloning_basis(povm);
    for (std::size_t i = 0; i < basis.table.size(); ++i) {
        for (std::size_t a = 0; a < basis.table[i].size(); ++a) {
            report.info("P(" + std::to_string(a) + "|" + std::to_string(i) + ")", basis.table[i][a]);
        }
    }
    report.info("theta", basis.theta);
    report.info("rotations", static_cast<double>(basis.rotations));
    double xi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < basis.table.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.table.size(); ++j) {
            const auto c = subroutines::chernoff_information(basis.table[i], basis.table[j]);
            if (!c.infinite) {
                xi = std::min(xi, c.value);
            }
        }
    }
    report.info("chernoff_information", xi, 0.0, "minimum over pairs");
    Rng rng(options.seed);
    const auto mode = options.samples ? subroutines::ErrorMode::kSampled : subroutines::ErrorMode::kExact;
    for (std::size_t n = 1; n <= options.max_n; ++n) {
        const auto e = subroutines::cloning_error_rate(basis, n, mode, options.samples, rng);
        report.info(label("error_N=", n), e.average, e.average_se, mode == subroutines::ErrorMode::kExact ? "exact" : "sampled");
    }
    report.wall_seconds = watch.seconds();
    return report;
}

RunReport cmd_capacity(const std::string &spec, const CommandOptions &options) {
    Stopwatch watch;
    const auto m = load_measurement(spec);
    auto report = start_report("capacity", measurement_to_json(m), options);
    const auto channel = coding::associated_channel(as_povm(m));
    const auto r = coding::blahut_arimoto(channel, options.tol);
    report.info("capacity_bits", r.capacity, 0.0, "certified lower bound");
    report.info("upper_bound_bits", r.upper);
    report.info("iterations", static_cast<double>(r.iterations), 0.0, r.converged ? "converged" : "iteration cap hit");
    for (std::size_t x = 0; x < r.input.size(); ++x) {
        report.info(label("p(x)_x=", x), r.input[x]);
    }
    const std::vector<double> uniform(channel.inputs(), 1.0 / static_cast<double>(channel.inputs()));
    report.info("mutual_information_uniform", coding::mutual_information(uniform, channel));
    report.wall_seconds = watch.seconds();
    return report;
}

RunReport cmd_block(const std::string &spec, const CommandOptions &options) {
    Stopwatch watch;
    const auto m = load_measurement(spec);
    auto report = start_report("block", measurement_to_json(m), options);
    const auto channel = coding::associated_channel(as_povm(m));
    const std::size_t k = options.k;
    const std::size_t trials = options.samples ? options.samples : 10000;
    report.info("capacity_bits", coding::blahut_arimoto(channel, options.tol).capacity);
    for (std::size_t copies = 1; copies <= options.max_n; copies += 2) {
        report.info(label("repetition_error_copies=", copies), coding::repetition_exact_error(channel, k, copies), 0.0,
                    "exact; " + rate_note(k, k * copies));
    }
    Rng rng(options.seed);
    for (std::size_t n = k; n <= k * options.max_n; n += k) {
        const auto code = coding::random_codebook(k, n, channel.inputs(), rng);
        const auto sim = coding::simulate_block_protocol(channel, code, {}, trials, rng);
        report.info(label("random_code_error_N=", n), sim.error_rate, sim.standard_error,
                    std::to_string(trials) + " trials; " + rate_note(k, n));
    }
    report.wall_seconds = watch.seconds();
    return report;
}

RunReport cmd_reproduce_paper(const CommandOptions &options) {
    Stopwatch watch;
    Povm trine = trine_povm();
    std::string source = "builtin trine";
    if (options.override_path) {
        trine = as_povm(load_measurement(*options.override_path));
        source = measurement_to_json(trine);
        if (trine.dim() != 2 || trine.outcomes() != 3) {
            throw Error(ErrorCode::kShapeMismatch, "override must be a qubit POVM with three outcomes");
        }
    }
    auto report = start_report("reproduce-paper", source, options);
    const std::size_t samples = options.samples ? options.samples : 1000000;
    const auto vn2 = von_neumann_povm(2);
    const double s3 = std::sqrt(3.0);

    // Two-copy classical cloning: states |00>, |11>, outcome 0 iff some trine outcome is 0.
    const auto two = vnsynth::build_partition_povm(trine, 2, vnsynth::any_outcome_assignment(3, 2, 0), 2);
    const std::vector<std::size_t> clone_rows = {0, 3};
    const auto cloned = computational_implementation(two, clone_rows);
    const double eps_clone = rms::rms_exact_povm(cloned, vn2);
    report.check("two-copy cloning epsilon", eps_clone, 1.0 / (9.0 * s3), kClosedFormTol);
    const auto clone_mc = rms::rms_monte_carlo_povm(cloned, vn2, samples, options.seed);
    report.check("two-copy cloning epsilon (Monte Carlo)", clone_mc.value, 1.0 / (9.0 * s3),
                 kSigmas * clone_mc.standard_error, clone_mc.standard_error);
    report.check("two-copy cloning M'_0(0,0)", cloned.element(0)(0, 0).real(), 8.0 / 9.0, kClosedFormTol);
    report.check("two-copy cloning M'_1(1,1)", cloned.element(1)(1, 1).real(), 1.0, kClosedFormTol);

    // Eigenvalues of Q_0 for two uses.
    const auto eig = hermitian_eig(two.coarse(0)).values;
    const double expected_eig[] = {8.0 / 9.0, 2.0 / 3.0, 2.0 / 3.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        report.check(label("two-copy Q_0 eigenvalue ", i), eig[i], expected_eig[i], kClosedFormTol);
    }

    // Exhaustive two-use optimum.
    const auto best = vnsynth::exhaustive_search(trine, 2);
    report.check("two-copy optimum epsilon", best.solution.epsilon, 1.0 / 18.0, kExactTol);
    report.check("two-copy optimum x", best.solution.x, 8.0 / 9.0, kExactTol);
    report.check("two-copy optimum y", best.solution.y, 1.0 / 18.0, kExactTol);
    report.info("two-copy partitions evaluated", static_cast<double>(best.evaluated));
    const auto best_prep = vnsynth::construct_states(best.protocol, best.solution.x, best.solution.y);
    const auto best_impl = vnsynth::implemented_povm(best_prep, best.protocol);
    const auto best_mc = rms::rms_monte_carlo_povm(best_impl, vn2, samples, options.seed + 1);
    report.check("two-copy optimum epsilon (Monte Carlo)", best_mc.value, 1.0 / 18.0,
                 kSigmas * best_mc.standard_error, best_mc.standard_error);

    // N uses: optimum 3^-N / 2 and lambda_max = 1 - 3^-N, implemented POVM diag(1 - 3^-N, 3^-N / 2).
    for (std::size_t n = 1; n <= options.max_n; ++n) {
        const double t = std::pow(3.0, -static_cast<double>(n));
        const auto protocol = vnsynth::build_partition_povm(trine, n, vnsynth::any_outcome_assignment(3, n, 0), 2);
        const auto sol = vnsynth::evaluate_partition(trine, n, protocol.assignment());
        const std::string tag = " N=" + std::to_string(n);
        report.check("optimal epsilon" + tag, sol.epsilon, t / 2.0, kClosedFormTol);
        report.check("lambda_max" + tag, sol.lambda_max, 1.0 - t, kClosedFormTol);
        const auto impl = vnsynth::implemented_povm(vnsynth::construct_states(protocol, sol.x, sol.y), protocol);
        const ComplexMatrix expected = ComplexMatrix::diagonal(std::vector<double>{1.0 - t, t / 2.0});
        report.check("implemented M_0 max deviation" + tag, max_abs_difference(impl.element(0), expected), 0.0,
                     kClosedFormTol);
        if (!options.override_path) {
            const auto synth = vnsynth::trine_optimal_protocol(n);
            const auto closed = vnsynth::implemented_povm(synth.prep, synth.protocol);
            report.check("closed-form protocol M_0 max deviation" + tag,
                         max_abs_difference(closed.element(0), expected), 0.0, kClosedFormTol);
        }
    }

    // Single use.
    const auto one = vnsynth::build_partition_povm(trine, 1, vnsynth::any_outcome_assignment(3, 1, 0), 2);
    const auto one_sol = vnsynth::evaluate_partition(trine, 1, one.assignment());
    const auto one_impl = vnsynth::implemented_povm(vnsynth::construct_states(one, one_sol.x, one_sol.y), one);
    report.check("single-use M_0(0,0)", one_impl.element(0)(0, 0).real(), 2.0 / 3.0, kClosedFormTol);
    report.check("single-use M_0(1,1)", one_impl.element(0)(1, 1).real(), 1.0 / 6.0, kClosedFormTol);
    report.check("single-use M_0(0,1)", std::abs(one_impl.element(0)(0, 1)), 0.0, kClosedFormTol);
    const std::vector<std::size_t> naive_rows = {0, 1};
    report.check("naive single-use epsilon", rms::rms_exact_povm(computational_implementation(one, naive_rows), vn2),
                 1.0 / (3.0 * s3), kClosedFormTol);

    // Noisy Z.
    struct NoisyCase {
        double p, q;
        vnsynth::NoisyZRegion region;
    };
    const NoisyCase cases[] = {{0.95, 0.7, vnsynth::NoisyZRegion::kRotateZero},
                               {0.99, 0.6, vnsynth::NoisyZRegion::kRotateZero},
                               {0.8, 0.75, vnsynth::NoisyZRegion::kTrivial},
                               {0.7, 0.95, vnsynth::NoisyZRegion::kRotateOne},
                               {0.85 + 1e-6, 0.7, vnsynth::NoisyZRegion::kRotateZero},
                               {0.85 - 1e-6, 0.7, vnsynth::NoisyZRegion::kTrivial},
                               {0.7, 0.85 + 1e-6, vnsynth::NoisyZRegion::kRotateOne},
                               {0.7, 0.85 - 1e-6, vnsynth::NoisyZRegion::kTrivial}};
    for (const auto &c : cases) {
        const std::string tag = " p=" + format_number(c.p) + " q=" + format_number(c.q);
        const auto region = vnsynth::classify_noisy_z(c.p, c.q);
        report.check_flag("noisy-Z region" + tag, region == c.region, static_cast<double>(region),
                          std::string(vnsynth::noisy_z_region_name(region)));
        const auto proto = vnsynth::noisy_z_optimal(c.p, c.q);
        double gamma = 1.0;
        double eps = rms::rms_closed_form_qubit(c.p, 1.0 - c.q);
        if (c.region == vnsynth::NoisyZRegion::kRotateZero) {
            gamma = std::sqrt((3.0 * c.q - 1.0) / (2.0 * (c.p + c.q - 1.0)));
            eps = (1.0 - c.q) / 2.0;
        } else if (c.region == vnsynth::NoisyZRegion::kRotateOne) {
            gamma = std::sqrt((3.0 * c.p - 1.0) / (2.0 * (c.p + c.q - 1.0)));
            eps = (1.0 - c.p) / 2.0;
        }
        report.check("noisy-Z gamma" + tag, proto.params.gamma, gamma, kClosedFormTol);
        report.check("noisy-Z epsilon" + tag, proto.solution.epsilon, eps, kClosedFormTol);
        const auto impl = vnsynth::implemented_povm(proto.prep, proto.protocol);
        report.check("noisy-Z implemented epsilon" + tag, rms::rms_exact_povm(impl, vn2), eps, kClosedFormTol);
    }

    // Trine P(a|i) table under plain cloning.
    const std::vector<StateVector> comp = {StateVector::basis(2, 0), StateVector::basis(2, 1)};
    const auto table = subroutines::cloning_distributions(trine, comp);
    const double expected_table[2][3] = {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}, {0.0, 0.5, 0.5}};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t a = 0; a < 3; ++a) {
            report.check("trine P(" + std::to_string(a) + "|" + std::to_string(i) + ")", table[i][a],
                         expected_table[i][a], kExactTol);
        }
    }
    subroutines::CloningBasis trine_basis;
    trine_basis.states = comp;
    trine_basis.table = table;
    Rng unused(0);
    const auto single = subroutines::cloning_error_rate(trine_basis, 1, subroutines::ErrorMode::kExact, 0, unused);
    report.check("cloning error N=1 state 0", single.per_state[0], 1.0 / 3.0, kExactTol);
    report.check("cloning error N=1 state 1", single.per_state[1], 0.0, kExactTol);
    report.check("trine Chernoff information", subroutines::chernoff_information(table[0], table[1]).value,
                 std::log(3.0), 1e-9);

    // Joint probabilities of a trine pair on alpha|00> + beta|11>.
    Rng rng(options.seed);
    std::vector<ComplexMatrix> pair_ops;
    for (std::size_t a1 = 0; a1 < 3; ++a1) {
        for (std::size_t a2 = 0; a2 < 3; ++a2) {
            pair_ops.push_back(tensor(trine.element(a1), trine.element(a2)));
        }
    }
    for (std::size_t sample = 0; sample < 10; ++sample) {
        const auto psi = haar_state(2, rng);
        const cplx alpha = psi[0];
        const cplx beta = psi[1];
        const auto big = StateVector::normalized({alpha, 0.0, 0.0, beta});
        const double aa = std::norm(alpha);
        const double bb = std::norm(beta);
        const double cross = 2.0 * (alpha * std::conj(beta)).real();
        const double closed_form[9] = {4.0 / 9.0 * aa,
                                 aa / 9.0,
                                 aa / 9.0,
                                 aa / 9.0,
                                 1.0 / 36.0 + 2.0 / 9.0 * bb + cross / 12.0,
                                 1.0 / 36.0 + 2.0 / 9.0 * bb - cross / 12.0,
                                 aa / 9.0,
                                 1.0 / 36.0 + 2.0 / 9.0 * bb - cross / 12.0,
                                 1.0 / 36.0 + 2.0 / 9.0 * bb + cross / 12.0};
        double dev = 0.0;
        for (std::size_t j = 0; j < 9; ++j) {
            dev = std::max(dev, std::abs(sandwich(big.amplitudes(), pair_ops[j], big.amplitudes()).real() - closed_form[j]));
        }
        report.check(label("joint P(a1,a2) max deviation, sample ", sample), dev, 0.0, kClosedFormTol);
    }
    report.wall_seconds = watch.seconds();
    return report;
}

}  // namespace measrepro::cli
