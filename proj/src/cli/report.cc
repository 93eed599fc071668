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
#include <cstdio>
#include <iomanip>
#include <limits>

#include "json.hpp"
#include "measrepro/cli.h"

namespace measrepro::cli {

std::string_view row_status_name(RowStatus status) {
    switch (status) {
        case RowStatus::kInfo:
            return "INFO";
        case RowStatus::kPass:
            return "PASS";
        case RowStatus::kFail:
            return "FAIL";
    }
    return "?";
}

void RunReport::info(std::string name, double value, double standard_error, std::string note) {
    rows.push_back({std::move(name), value, standard_error, std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(), RowStatus::kInfo, std::move(note)});
}

void RunReport::check(std::string name, double value, double expected, double tolerance, double standard_error,
                      std::string note) {
    const bool ok = std::abs(value - expected) <= tolerance;
    rows.push_back({std::move(name), value, standard_error, expected, tolerance,
                    ok ? RowStatus::kPass : RowStatus::kFail, std::move(note)});
}

void RunReport::check_flag(std::string name, bool ok, double value, std::string note) {
    rows.push_back({std::move(name), value, 0.0, std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(), ok ? RowStatus::kPass : RowStatus::kFail,
                    std::move(note)});
}

std::size_t RunReport::failures() const {
    std::size_t n = 0;
    for (const auto &r : rows) {
        n += r.status == RowStatus::kFail;
    }
    return n;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

namespace {

std::string hex_digest(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Quotes a CSV field when it contains a separator, quote or line break.
std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

nlohmann::json number_json(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return nullptr;
}

}  // namespace

void write_csv(const RunReport &report, std::ostream &out) {
    out << "command,inputs_digest,seed,name,value,standard_error,expected,tolerance,status,note\n";
    for (const auto &r : report.rows) {
        out << csv_field(report.command) << ',' << hex_digest(report.inputs_digest) << ',' << report.seed << ','
            << csv_field(r.name) << ',' << format_number(r.value) << ',' << format_number(r.standard_error) << ','
            << format_number(r.expected) << ',' << format_number(r.tolerance) << ',' << row_status_name(r.status)
            << ',' << csv_field(r.note) << '\n';
    }
}

std::string report_json(const RunReport &report) {
    nlohmann::json doc;
    doc["command"] = report.command;
    doc["inputs_digest"] = hex_digest(report.inputs_digest);
    doc["seed"] = report.seed;
    doc["wall_seconds"] = report.wall_seconds;
    doc["failures"] = report.failures();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : report.rows) {
        rows.push_back({{"name", r.name},
                        {"value", number_json(r.value)},
                        {"standard_error", number_json(r.standard_error)},
                        {"expected", number_json(r.expected)},
                        {"tolerance", number_json(r.tolerance)},
                        {"status", row_status_name(r.status)},
                        {"note", r.note}});
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

void print_table(const RunReport &report, std::ostream &out) {
    std::size_t width = 4;
    for (const auto &r : report.rows) {
        width = std::max(width, r.name.size());
    }
    out << "command " << report.command << "  digest " << hex_digest(report.inputs_digest) << "  seed "
        << report.seed << '\n';
    out << std::left << std::setw(static_cast<int>(width)) << "name" << "  " << std::setw(19) << "value"
        << std::setw(19) << "std.err" << std::setw(19) << "expected" << "status\n";
    for (const auto &r : report.rows) {
        out << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(19)
            << format_number(r.value) << std::setw(19) << format_number(r.standard_error) << std::setw(19)
            << (std::isfinite(r.expected) ? format_number(r.expected) : "") << row_status_name(r.status);
        if (!r.note.empty()) {
            out << "  " << r.note;
        }
        out << '\n';
    }
    out << std::fixed << std::setprecision(3) << "wall time " << report.wall_seconds << " s, "
        << report.failures() << " failed\n";
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6);
}

int exit_status(const RunReport &report) {
    return report.failures() == 0 ? 0 : 1;
}

}  // namespace measrepro::cli
