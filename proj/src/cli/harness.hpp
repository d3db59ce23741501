/*
   Copyright 2026 The divsigma Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DIVSIGMA_CLI_HARNESS_HPP
#define DIVSIGMA_CLI_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace divsigma::cli {

using Json = nlohmann::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Raised for malformed flags or values; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Csv, Markdown, Bfile };

Format parse_format(const std::string& text);

/// Inclusive integer interval written "lo:hi" or a single value.
struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

Range parse_range(const std::string& text);

struct RunConfig {
    std::string subcommand;
    std::optional<std::string> alpha;  // integer or "lo:hi"
    std::optional<int> beta;
    std::optional<std::int64_t> x;
    std::optional<std::string> range;
    std::uint64_t prime_limit = 10000;
    int precision = 30;
    Format format = Format::Json;
    unsigned jobs = 1;
    std::vector<std::string> suites;
    bool update_ledger = false;
    std::string ledger_path = "docs/errata.jsonl";
    bool timestamp = true;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> limit;
    std::optional<std::string> exponents;

    /// Checks the cross-field invariants; throws UsageError.
    void validate() const;
    Range alpha_range(Range fallback) const;
    int alpha_value(int fallback) const;
    Range x_range(Range fallback) const;
};

/// Rows with a fixed column order; cells are JSON scalars. Rationals travel as
/// "p/q" strings, reals as decimal strings with separate digits/radius columns.
struct Table {
    std::vector<std::string> columns;
    std::vector<Json> rows;
    std::optional<std::pair<std::string, std::string>> bfile_columns;
};

/// Writes the table; json rows are one object per line with sorted keys.
void render(const Table& table, Format format, bool timestamp, std::ostream& out);

// ---- Errata ledger -------------------------------------------------------

struct ErrataEntry {
    std::string location;  // neutral anchor, e.g. "symmetric-form.s2-prime-range"
    std::string printed_form;
    std::string tested_form;
    std::string verdict;   // holds | fails | corrected | diagnostic
    std::string evidence;  // reproducible test name

    bool operator==(const ErrataEntry&) const = default;
    Json to_json() const;
    static ErrataEntry from_json(const Json& j);
};

/// Append-only list of entries keyed by location. Existing entries are never
/// modified; a conflicting re-append is reported and ignored.
class ErrataLedger {
public:
    static ErrataLedger load(const std::string& path);

    enum class AppendResult { Added, Unchanged, Conflict };
    AppendResult append(const ErrataEntry& entry);

    const std::vector<ErrataEntry>& entries() const { return entries_; }
    const ErrataEntry* find(const std::string& location) const;
    void save(const std::string& path) const;

private:
    std::vector<ErrataEntry> entries_;
};

// ---- Verification suites -------------------------------------------------

struct SuiteResult {
    std::string name;
    bool diagnostic = false;
    bool passed = false;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::string detail;
    std::vector<ErrataEntry> errata;
};

struct SuiteOptions {
    std::optional<Range> x;
    std::optional<Range> alpha;
    std::optional<int> beta;
    unsigned jobs = 1;
};

const std::vector<std::string>& suite_names();
bool suite_is_diagnostic(const std::string& name);
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

// ---- Commands ------------------------------------------------------------

int cmd_sigma(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_constants(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_summatory(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_partitions(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_perfect(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_lambert_terms(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.subcommand, mapping library errors to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full argv entry point (parsing included); used by the binary and tests.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace divsigma::cli

#endif  // DIVSIGMA_CLI_HARNESS_HPP
