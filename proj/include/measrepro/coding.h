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

// Finite-rate reproduction: the classical channel a measurement induces on
// basis-state inputs, its capacity, and block codes run over it.

#ifndef MEASREPRO_CODING_H_
#define MEASREPRO_CODING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "measrepro/matrix.h"
#include "measrepro/quantum.h"
#include "measrepro/rng.h"

namespace measrepro::coding {

/// Conditional distribution p(a|x), one row per input letter.
class ClassicalChannel {
   public:
    /// Throws InvalidArgument unless every row is a distribution (entries
    /// >= 0, sum within 1e-12 of one) and all rows have the same length.
    static ClassicalChannel create(std::vector<std::vector<double>> rows);

    std::size_t inputs() const noexcept {
        return rows_.size();
    }
    std::size_t outputs() const noexcept {
        return rows_.front().size();
    }
    const std::vector<double> &row(std::size_t x) const {
        return rows_.at(x);
    }
    const std::vector<std::vector<double>> &rows() const noexcept {
        return rows_;
    }

   private:
    explicit ClassicalChannel(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    }
    std::vector<std::vector<double>> rows_;
};

/// p(a|x) = <x|M_a|x>, or tr(M_a rho_x) when states are supplied.
ClassicalChannel associated_channel(const Povm &available,
                                    std::optional<std::span<const ComplexMatrix>> states = std::nullopt);
ClassicalChannel binary_symmetric_channel(double flip);
ClassicalChannel identity_channel(std::size_t letters);

/// I(A:X) in bits for input distribution px.
double mutual_information(std::span<const double> px, const ClassicalChannel &channel);

struct CapacityResult {
    /// Certified lower bound; the true capacity lies in [capacity, upper].
    double capacity = 0.0;
    double upper = 0.0;
    std::vector<double> input;
    std::size_t iterations = 0;
    double gap = 0.0;
    bool converged = false;
};

/// Blahut-Arimoto from the uniform input. Stops once
/// max_x D(W(.|x) || q) - log2 sum_x p(x) 2^{D(W(.|x) || q)} <= tol; when
/// max_iter is reached first, `converged` is false and the bounds so far are
/// returned.
CapacityResult blahut_arimoto(const ClassicalChannel &channel, double tol = 1e-6, std::size_t max_iter = 100000);

enum class CodeKind { kRepetition, kRandom };

struct BlockCode {
    CodeKind kind = CodeKind::kRepetition;
    /// Message length (target measurements).
    std::size_t k = 0;
    /// Block length (available measurements).
    std::size_t n = 0;
    std::size_t alphabet = 2;
    /// Repetition factor; 0 for random codebooks.
    std::size_t copies = 0;
    /// codewords[message], message strings indexed in base `alphabet`, first
    /// symbol most significant.
    std::vector<std::vector<std::size_t>> codewords;

    std::size_t messages() const noexcept {
        return codewords.size();
    }
    /// k log2(alphabet) / n.
    double rate_bits_per_use() const;
    /// n / k, available measurements per target measurement.
    double uses_per_symbol() const;
};

/// Each message symbol repeated `copies` times in place.
BlockCode repetition_code(std::size_t k, std::size_t copies, std::size_t alphabet);

inline constexpr std::size_t kMaxCodewords = std::size_t{1} << 16;

/// alphabet^k distinct codewords of length n, each drawn uniformly and
/// redrawn on collision so that the encoder stays injective. Throws TooLarge
/// above kMaxCodewords messages and InvalidArgument when alphabet^n is too
/// small to hold them.
BlockCode random_codebook(std::size_t k, std::size_t n, std::size_t alphabet, Rng &rng);

std::vector<std::size_t> message_digits(std::size_t message, std::size_t k, std::size_t alphabet);

/// Maximum-likelihood decoding under the channel: per symbol for repetition
/// codes, over the whole codebook otherwise. Ties go to the smallest index;
/// nullopt when every candidate has zero likelihood.
std::optional<std::size_t> decode(const BlockCode &code, const ClassicalChannel &channel,
                                  std::span<const std::size_t> received);

/// Exact block error of a repetition code under uniform messages, from
/// per-symbol outcome-count enumeration: 1 - (1 - e)^k with e the symbol
/// error averaged over input letters.
double repetition_exact_error(const ClassicalChannel &channel, std::size_t k, std::size_t copies);

struct BlockSimulation {
    double error_rate = 0.0;
    double standard_error = 0.0;
    std::size_t trials = 0;
    /// Frequency of each decoded message.
    std::vector<double> effective;
    /// Fraction of blocks that could not be decoded (counted as errors).
    double undecodable = 0.0;
};

/// Draws messages with probability weights[i] (uniform when empty), encodes,
/// passes each symbol through the channel and decodes.
BlockSimulation simulate_block_protocol(const ClassicalChannel &channel, const BlockCode &code,
                                        std::span<const double> weights, std::size_t trials, Rng &rng);

/// Exact decoded-message distribution (last entry: undecodable) when the
/// message is drawn with the given weights, by enumerating every received
/// string.
std::vector<double> block_outcome_distribution(const ClassicalChannel &channel, const BlockCode &code,
                                               std::span<const double> weights);

inline constexpr std::size_t kMaxStateVectorDim = 81;

/// The same distribution from the quantum protocol: prepare
/// sum_i alpha_i |c_i1>...|c_iN> with basis-state codewords, measure every
/// system with the POVM and decode. Agrees with block_outcome_distribution
/// for basis or dephased inputs; coherent superpositions add interference
/// terms whenever the POVM has off-diagonal elements. Throws TooLarge above
/// kMaxStateVectorDim.
std::vector<double> block_outcome_distribution_quantum(const Povm &available, const BlockCode &code,
                                                       std::span<const cplx> alpha);

}  // namespace measrepro::coding

#endif  // MEASREPRO_CODING_H_
