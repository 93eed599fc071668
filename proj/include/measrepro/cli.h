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

// Command-line front end: measurement files, run reports and the commands
// behind the `measrepro` tool.

#ifndef MEASREPRO_CLI_H_
#define MEASREPRO_CLI_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "measrepro/quantum.h"

namespace measrepro::cli {

// ---------------------------------------------------------------------------
// Measurement files.
//
// {"kind": "povm", "dim": d, "outcomes": m, "elements": [M_0, ...]}
// {"kind": "instrument", "dim": d, "outcomes": m, "elements": [[K_0^0, ...], ...]}
// Each matrix is an array of rows; each entry is a [re, im] pair.

using Measurement = std::variant<Povm, Instrument>;

/// Throws MalformedFile on syntax or schema errors and InvalidMeasurement
/// (carrying the violation report) when the operators fail validation.
Measurement parse_measurement(std::string_view json_text);
std::string measurement_to_json(const Measurement &measurement);

/// Built-in names: "trine", "noisy-z:p,q", "vn:d", "degenerate-qutrit".
/// Anything else is read as a file path.
Measurement load_measurement(const std::string &spec);
void save_measurement(const std::string &path, const Measurement &measurement);

/// The induced POVM of an instrument, or the POVM itself.
Povm as_povm(const Measurement &measurement);
/// The Lueders instrument of a POVM, or the instrument itself.
Instrument as_instrument(const Measurement &measurement);

// ---------------------------------------------------------------------------
// Run reports.

enum class RowStatus { kInfo, kPass, kFail };
std::string_view row_status_name(RowStatus status);

struct ResultRow {
    std::string name;
    double value = 0.0;
    double standard_error = 0.0;
    /// NaN when the row is informational.
    double expected = 0.0;
    double tolerance = 0.0;
    RowStatus status = RowStatus::kInfo;
    std::string note;
};

struct RunReport {
    std::string command;
    std::uint64_t inputs_digest = 0;
    std::uint64_t seed = 0;
    std::vector<ResultRow> rows;
    double wall_seconds = 0.0;

    void info(std::string name, double value, double standard_error = 0.0, std::string note = {});
    /// PASS when |value - expected| <= tolerance.
    void check(std::string name, double value, double expected, double tolerance, double standard_error = 0.0,
               std::string note = {});
    /// PASS when `ok`; for conditions that are not a numeric comparison.
    void check_flag(std::string name, bool ok, double value, std::string note = {});
    std::size_t failures() const;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
/// 12 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double value);

/// Header row then one row per result, LF line endings. Wall time is left
/// out so that equal seeds give byte-identical files.
void write_csv(const RunReport &report, std::ostream &out);
std::string report_json(const RunReport &report);
void print_table(const RunReport &report, std::ostream &out);

// ---------------------------------------------------------------------------
// Commands.

struct CommandOptions {
    std::uint64_t seed = 1;
    /// 0 selects the command's default.
    std::size_t samples = 0;
    double tol = 1e-6;
    std::size_t max_n = 6;
    /// Uses of the available measurement (synth).
    std::size_t uses = 2;
    /// Target outcomes (synth).
    std::size_t targets = 2;
    /// Message length (block).
    std::size_t k = 2;
    std::size_t restarts = 20;
    /// Replaces the built-in trine in reproduce-paper.
    std::optional<std::string> override_path;
};

RunReport cmd_validate(const std::string &spec, const CommandOptions &options);
RunReport cmd_synth(const std::string &spec, const CommandOptions &options);
RunReport cmd_rms(const std::string &implemented, const std::string &target, const CommandOptions &options);
RunReport cmd_postmeas(const std::string &spec, const CommandOptions &options);
RunReport cmd_clone(const std::string &spec, const CommandOptions &options);
RunReport cmd_capacity(const std::string &spec, const CommandOptions &options);
RunReport cmd_block(const std::string &spec, const CommandOptions &options);
RunReport cmd_reproduce_paper(const CommandOptions &options);

/// 0 when the report has no FAIL row, 1 otherwise.
int exit_status(const RunReport &report);

}  // namespace measrepro::cli

#endif  // MEASREPRO_CLI_H_
