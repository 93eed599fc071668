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
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "measrepro/cli.h"
#include "measrepro/errors.h"

namespace measrepro::cli {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string &what) {
    throw Error(ErrorCode::kMalformedFile, what);
}

ComplexMatrix matrix_from_json(const json &rows, std::size_t expect_rows, std::size_t expect_cols,
                               const std::string &where) {
    if (!rows.is_array() || rows.size() != expect_rows) {
        malformed(where + ": expected " + std::to_string(expect_rows) + " rows");
    }
    ComplexMatrix m(expect_rows, expect_cols);
    for (std::size_t r = 0; r < expect_rows; ++r) {
        const auto &row = rows[r];
        if (!row.is_array() || row.size() != expect_cols) {
            malformed(where + ": row " + std::to_string(r) + " must have " + std::to_string(expect_cols) +
                      " entries");
        }
        for (std::size_t c = 0; c < expect_cols; ++c) {
            const auto &e = row[c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                malformed(where + ": entry (" + std::to_string(r) + ", " + std::to_string(c) +
                          ") must be a [re, im] pair of numbers");
            }
            m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t positive_field(const json &doc, const char *key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned() || doc[key].get<std::size_t>() == 0) {
        malformed(std::string("field \"") + key + "\" must be a positive integer");
    }
    return doc[key].get<std::size_t>();
}

double parse_double(const std::string &text, const std::string &spec) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw Error(ErrorCode::kInvalidArgument, "cannot parse number \"" + text + "\" in \"" + spec + "\"");
    }
    return v;
}

std::optional<Measurement> builtin(const std::string &spec) {
    if (spec == "trine") {
        return trine_povm();
    }
    if (spec == "degenerate-qutrit") {
        return degenerate_qutrit_povm();
    }
    if (spec.rfind("vn:", 0) == 0) {
        const double d = parse_double(spec.substr(3), spec);
        if (d < 1 || d != std::floor(d) || d > 64) {
            throw Error(ErrorCode::kInvalidArgument, "vn:d needs an integer 1 <= d <= 64");
        }
        return von_neumann_povm(static_cast<std::size_t>(d));
    }
    if (spec.rfind("noisy-z:", 0) == 0) {
        const auto body = spec.substr(8);
        const auto comma = body.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorCode::kInvalidArgument, "noisy-z needs two parameters, as in noisy-z:0.9,0.8");
        }
        const double p = parse_double(body.substr(0, comma), spec);
        const double q = parse_double(body.substr(comma + 1), spec);
        if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
            throw Error(ErrorCode::kInvalidMeasurement, "noisy-z parameters must lie in [0, 1]");
        }
        return noisy_z_povm(p, q);
    }
    return std::nullopt;
}

}  // namespace

Measurement parse_measurement(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
        malformed("missing string field \"kind\"");
    }
    const auto kind = doc["kind"].get<std::string>();
    const std::size_t dim = positive_field(doc, "dim");
    const std::size_t outcomes = positive_field(doc, "outcomes");
    if (!doc.contains("elements") || !doc["elements"].is_array() || doc["elements"].size() != outcomes) {
        malformed("\"elements\" must be an array with one entry per outcome");
    }
    const auto &elements = doc["elements"];
    if (kind == "povm") {
        std::vector<ComplexMatrix> ms;
        for (std::size_t a = 0; a < outcomes; ++a) {
            ms.push_back(matrix_from_json(elements[a], dim, dim, "element " + std::to_string(a)));
        }
        return Povm::create(std::move(ms));
    }
    if (kind == "instrument") {
        std::vector<std::vector<ComplexMatrix>> kraus;
        for (std::size_t a = 0; a < outcomes; ++a) {
            if (!elements[a].is_array() || elements[a].empty()) {
                malformed("outcome " + std::to_string(a) + " needs a non-empty array of Kraus operators");
            }
            kraus.emplace_back();
            for (std::size_t j = 0; j < elements[a].size(); ++j) {
                kraus.back().push_back(matrix_from_json(elements[a][j], dim, dim,
                                                        "Kraus " + std::to_string(j) + " of outcome " +
                                                            std::to_string(a)));
            }
        }
        try {
            return Instrument::create(std::move(kraus));
        } catch (const Error &e) {
            throw Error(ErrorCode::kInvalidMeasurement, e.what());
        }
    }
    malformed("\"kind\" must be \"povm\" or \"instrument\"");
}

std::string measurement_to_json(const Measurement &measurement) {
    json doc;
    if (const auto *povm = std::get_if<Povm>(&measurement)) {
        doc["kind"] = "povm";
        doc["dim"] = povm->dim();
        doc["outcomes"] = povm->outcomes();
        json elements = json::array();
        for (const auto &m : povm->elements()) {
            elements.push_back(matrix_to_json(m));
        }
        doc["elements"] = std::move(elements);
    } else {
        const auto &inst = std::get<Instrument>(measurement);
        doc["kind"] = "instrument";
        doc["dim"] = inst.dim_in();
        doc["outcomes"] = inst.outcomes();
        json elements = json::array();
        for (std::size_t a = 0; a < inst.outcomes(); ++a) {
            json ks = json::array();
            for (const auto &k : inst.kraus(a)) {
                ks.push_back(matrix_to_json(k));
            }
            elements.push_back(std::move(ks));
        }
        doc["elements"] = std::move(elements);
    }
    return doc.dump(2) + "\n";
}

Measurement load_measurement(const std::string &spec) {
    if (auto b = builtin(spec)) {
        return std::move(*b);
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in) {
        malformed("cannot open \"" + spec + "\" (and it is not a built-in name)");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_measurement(text.str());
}

void save_measurement(const std::string &path, const Measurement &measurement) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::kInvalidArgument, "cannot write \"" + path + "\"");
    }
    out << measurement_to_json(measurement);
}

Povm as_povm(const Measurement &measurement) {
    if (const auto *povm = std::get_if<Povm>(&measurement)) {
        return *povm;
    }
    return induced_povm(std::get<Instrument>(measurement));
}

Instrument as_instrument(const Measurement &measurement) {
    if (const auto *inst = std::get_if<Instrument>(&measurement)) {
        return *inst;
    }
    return luders_instrument(std::get<Povm>(measurement));
}

}  // namespace measrepro::cli
