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
#include <limits>
#include <set>

#include "measrepro/coding.h"
#include "measrepro/errors.h"
#include "measrepro/linalg.h"
#include "measrepro/parallel.h"
#include "measrepro/subroutines.h"

namespace measrepro::coding {

namespace {

constexpr std::size_t kSimulationChunk = 4096;

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap) {
    std::size_t v = 1;
    for (std::size_t k = 0; k < exponent; ++k) {
        if (v > cap / std::max<std::size_t>(base, 1)) {
            return cap + 1;
        }
        v *= base;
    }
    return v;
}

void require_alphabet(const BlockCode &code, const ClassicalChannel &channel) {
    if (code.alphabet != channel.inputs()) {
        throw Error(ErrorCode::kShapeMismatch, "code alphabet does not match the channel input alphabet");
    }
}

std::vector<double> normalized_weights(std::span<const double> weights, std::size_t messages) {
    if (weights.empty()) {
        return std::vector<double>(messages, 1.0 / static_cast<double>(messages));
    }
    if (weights.size() != messages) {
        throw Error(ErrorCode::kShapeMismatch, "one weight per message is required");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw Error(ErrorCode::kInvalidArgument, "message weights must be nonnegative");
        }
        sum += w;
    }
    if (!(sum > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "message weights sum to zero");
    }
    std::vector<double> out(weights.begin(), weights.end());
    for (auto &w : out) {
        w /= sum;
    }
    return out;
}

// Calls visit(string) for every length-n string over `letters`.
template <typename Visit>
void for_each_string(std::size_t n, std::size_t letters, Visit visit) {
    std::vector<std::size_t> s(n, 0);
    while (true) {
        visit(s);
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++s[pos] < letters) {
                break;
            }
            s[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (n == 0) {
            return;
        }
    }
}

}  // namespace

double BlockCode::rate_bits_per_use() const {
    return n == 0 ? 0.0 : static_cast<double>(k) * std::log2(static_cast<double>(alphabet)) / static_cast<double>(n);
}

double BlockCode::uses_per_symbol() const {
    return k == 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(n) / static_cast<double>(k);
}

std::vector<std::size_t> message_digits(std::size_t message, std::size_t k, std::size_t alphabet) {
    std::vector<std::size_t> digits(k);
    for (std::size_t p = k; p-- > 0;) {
        digits[p] = message % alphabet;
        message /= alphabet;
    }
    return digits;
}

BlockCode repetition_code(std::size_t k, std::size_t copies, std::size_t alphabet) {
    if (alphabet < 2 || copies == 0) {
        throw Error(ErrorCode::kInvalidArgument, "repetition code needs alphabet >= 2 and copies >= 1");
    }
    const std::size_t messages = checked_power(alphabet, k, kMaxCodewords);
    if (messages > kMaxCodewords) {
        throw Error(ErrorCode::kTooLarge, "too many messages for an explicit codebook");
    }
    BlockCode code;
    code.kind = CodeKind::kRepetition;
    code.k = k;
    code.n = k * copies;
    code.alphabet = alphabet;
    code.copies = copies;
    for (std::size_t msg = 0; msg < messages; ++msg) {
        std::vector<std::size_t> word;
        for (auto x : message_digits(msg, k, alphabet)) {
            word.insert(word.end(), copies, x);
        }
        code.codewords.push_back(std::move(word));
    }
    return code;
}

BlockCode random_codebook(std::size_t k, std::size_t n, std::size_t alphabet, Rng &rng) {
    if (alphabet < 2) {
        throw Error(ErrorCode::kInvalidArgument, "alphabet must have at least two letters");
    }
    const std::size_t messages = checked_power(alphabet, k, kMaxCodewords);
    if (messages > kMaxCodewords) {
        throw Error(ErrorCode::kTooLarge, "at most 2^16 codewords are supported for ML decoding");
    }
    if (checked_power(alphabet, n, messages) < messages) {
        throw Error(ErrorCode::kInvalidArgument, "block length too short for distinct codewords");
    }
    BlockCode code;
    code.kind = CodeKind::kRandom;
    code.k = k;
    code.n = n;
    code.alphabet = alphabet;
    std::set<std::vector<std::size_t>> used;
    while (code.codewords.size() < messages) {
        std::vector<std::size_t> word(n);
        for (auto &x : word) {
            x = rng.index(alphabet);
        }
        if (used.insert(word).second) {
            code.codewords.push_back(std::move(word));
        }
    }
    return code;
}

std::optional<std::size_t> decode(const BlockCode &code, const ClassicalChannel &channel,
                                  std::span<const std::size_t> received) {
    require_alphabet(code, channel);
    if (received.size() != code.n) {
        throw Error(ErrorCode::kShapeMismatch, "received block has the wrong length");
    }
    for (auto a : received) {
        if (a >= channel.outputs()) {
            throw Error(ErrorCode::kInvalidArgument, "received letter out of range");
        }
    }
    if (code.kind == CodeKind::kRepetition) {
        std::size_t msg = 0;
        std::vector<std::size_t> counts(channel.outputs());
        for (std::size_t s = 0; s < code.k; ++s) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t c = 0; c < code.copies; ++c) {
                ++counts[received[s * code.copies + c]];
            }
            const auto symbol = subroutines::ml_decode_counts(counts, channel.rows());
            if (!symbol) {
                return std::nullopt;
            }
            msg = msg * code.alphabet + *symbol;
        }
        return msg;
    }
    std::optional<std::size_t> best;
    double best_ll = 0.0;
    for (std::size_t i = 0; i < code.codewords.size(); ++i) {
        const auto &word = code.codewords[i];
        double ll = 0.0;
        bool alive = true;
        for (std::size_t p = 0; p < code.n && alive; ++p) {
            const double w = channel.row(word[p])[received[p]];
            if (w <= 0.0) {
                alive = false;
            } else {
                ll += std::log(w);
            }
        }
        if (alive && (!best || ll > best_ll + 1e-12 * std::max(1.0, std::abs(best_ll)))) {
            best = i;
            best_ll = ll;
        }
    }
    return best;
}

double repetition_exact_error(const ClassicalChannel &channel, std::size_t k, std::size_t copies) {
    subroutines::CloningBasis symbols;
    symbols.table = channel.rows();
    Rng unused(0);
    const auto rate = subroutines::cloning_error_rate(symbols, copies, subroutines::ErrorMode::kExact, 0, unused);
    return 1.0 - std::pow(1.0 - rate.average, static_cast<double>(k));
}

BlockSimulation simulate_block_protocol(const ClassicalChannel &channel, const BlockCode &code,
                                        std::span<const double> weights, std::size_t trials, Rng &rng) {
    require_alphabet(code, channel);
    if (trials == 0) {
        throw Error(ErrorCode::kTooFewSamples, "need at least one trial");
    }
    const std::size_t messages = code.messages();
    const auto w = normalized_weights(weights, messages);
    std::vector<double> cumulative(messages);
    double acc = 0.0;
    for (std::size_t i = 0; i < messages; ++i) {
        acc += w[i];
        cumulative[i] = acc;
    }
    const std::uint64_t seed = rng.next_u64();
    struct Tally {
        std::size_t errors = 0;
        std::size_t undecodable = 0;
        std::vector<std::size_t> decoded;
    };
    const auto parts = map_chunks(trials, kSimulationChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Rng local(seed, chunk);
        Tally t;
        t.decoded.assign(messages, 0);
        std::vector<std::size_t> received(code.n);
        for (std::size_t trial = begin; trial < end; ++trial) {
            const double u = local.uniform() * acc;
            const std::size_t msg = std::min<std::size_t>(
                messages - 1, std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            const auto &word = code.codewords[msg];
            for (std::size_t p = 0; p < code.n; ++p) {
                received[p] = local.categorical(channel.row(word[p]));
            }
            const auto guess = decode(code, channel, received);
            if (!guess) {
                ++t.undecodable;
                ++t.errors;
                continue;
            }
            ++t.decoded[*guess];
            if (*guess != msg) {
                ++t.errors;
            }
        }
        return t;
    });
    BlockSimulation out;
    out.trials = trials;
    out.effective.assign(messages, 0.0);
    std::size_t errors = 0;
    std::size_t undecodable = 0;
    for (const auto &t : parts) {
        errors += t.errors;
        undecodable += t.undecodable;
        for (std::size_t i = 0; i < messages; ++i) {
            out.effective[i] += static_cast<double>(t.decoded[i]);
        }
    }
    const double n = static_cast<double>(trials);
    for (auto &e : out.effective) {
        e /= n;
    }
    out.error_rate = static_cast<double>(errors) / n;
    out.standard_error = std::sqrt(out.error_rate * (1.0 - out.error_rate) / n);
    out.undecodable = static_cast<double>(undecodable) / n;
    return out;
}

std::vector<double> block_outcome_distribution(const ClassicalChannel &channel, const BlockCode &code,
                                               std::span<const double> weights) {
    require_alphabet(code, channel);
    const std::size_t messages = code.messages();
    const auto w = normalized_weights(weights, messages);
    if (checked_power(channel.outputs(), code.n, 10000000) > 10000000) {
        throw Error(ErrorCode::kTooLarge, "too many received strings to enumerate");
    }
    std::vector<double> dist(messages + 1, 0.0);
    for_each_string(code.n, channel.outputs(), [&](const std::vector<std::size_t> &received) {
        double p = 0.0;
        for (std::size_t i = 0; i < messages; ++i) {
            double pi = w[i];
            for (std::size_t q = 0; q < code.n && pi > 0.0; ++q) {
                pi *= channel.row(code.codewords[i][q])[received[q]];
            }
            p += pi;
        }
        const auto guess = decode(code, channel, received);
        dist[guess ? *guess : messages] += p;
    });
    return dist;
}

std::vector<double> block_outcome_distribution_quantum(const Povm &available, const BlockCode &code,
                                                       std::span<const cplx> alpha) {
    const std::size_t d = available.dim();
    if (code.alphabet != d) {
        throw Error(ErrorCode::kShapeMismatch, "codewords must be basis states of the measured system");
    }
    const std::size_t dim = checked_power(d, code.n, kMaxStateVectorDim);
    if (dim > kMaxStateVectorDim) {
        throw Error(ErrorCode::kTooLarge, "state-vector path is limited to small blocks");
    }
    const std::size_t messages = code.messages();
    if (alpha.size() != messages) {
        throw Error(ErrorCode::kShapeMismatch, "one amplitude per message is required");
    }
    std::vector<cplx> amplitudes(alpha.begin(), alpha.end());
    const auto psi = StateVector::normalized(std::move(amplitudes));
    std::vector<cplx> encoded(dim);
    for (std::size_t i = 0; i < messages; ++i) {
        std::size_t idx = 0;
        for (auto x : code.codewords[i]) {
            idx = idx * d + x;
        }
        encoded[idx] += psi[i];
    }
    const auto channel = associated_channel(available);
    std::vector<double> dist(messages + 1, 0.0);
    for_each_string(code.n, available.outcomes(), [&](const std::vector<std::size_t> &outcomes) {
        std::vector<ComplexMatrix> factors;
        for (auto a : outcomes) {
            factors.push_back(available.element(a));
        }
        const double p = sandwich(encoded, tensor_all(factors), encoded).real();
        const auto guess = decode(code, channel, outcomes);
        dist[guess ? *guess : messages] += p;
    });
    return dist;
}

}  // namespace measrepro::coding
