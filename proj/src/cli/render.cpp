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

#include <chrono>
#include <ctime>
#include <ostream>
#include <sstream>

#include "harness.hpp"

namespace divsigma::cli {

Format parse_format(const std::string& text) {
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    if (text == "markdown") return Format::Markdown;
    if (text == "bfile") return Format::Bfile;
    throw UsageError("unknown format '" + text + "' (expected json, csv, markdown or bfile)");
}

Range parse_range(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw UsageError("invalid integer in range '" + text + "'");
        }
        if (used != s.size()) throw UsageError("invalid integer in range '" + text + "'");
        return static_cast<std::int64_t>(v);
    };
    // A leading '-' belongs to the first number, so split at the first ':' after it.
    const auto colon = text.find(':', text.empty() ? 0 : 1);
    Range r;
    if (colon == std::string::npos) {
        r.lo = r.hi = parse_int(text);
    } else {
        r.lo = parse_int(text.substr(0, colon));
        r.hi = parse_int(text.substr(colon + 1));
    }
    if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
    return r;
}

void RunConfig::validate() const {
    if (precision < 6 || precision > 45) throw UsageError("--precision must lie in 6..45");
    if (x && range) throw UsageError("--x and --range are mutually exclusive");
    if (x && *x < 1) throw UsageError("--x must be >= 1");
    if (range) {
        const Range r = parse_range(*range);
        if (r.lo < 1) throw UsageError("--range must start at 1 or above");
    }
    if (alpha) parse_range(*alpha);
    if (jobs == 0) throw UsageError("--jobs must be >= 1");
    if (prime_limit < 100) throw UsageError("--prime-limit must be >= 100");
}

Range RunConfig::alpha_range(Range fallback) const { return alpha ? parse_range(*alpha) : fallback; }

int RunConfig::alpha_value(int fallback) const {
    if (!alpha) return fallback;
    const Range r = parse_range(*alpha);
    if (r.lo != r.hi) throw UsageError("this command takes a single --alpha value");
    return static_cast<int>(r.lo);
}

Range RunConfig::x_range(Range fallback) const {
    if (x) return {*x, *x};
    if (range) return parse_range(*range);
    return fallback;
}

namespace {

std::string cell_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void render(const Table& table, Format format, bool timestamp, std::ostream& out) {
    switch (format) {
        case Format::Json: {
            const std::string stamp = timestamp ? utc_timestamp() : "";
            for (const Json& row : table.rows) {
                Json copy = row;
                if (timestamp) copy["generated_at"] = stamp;
                out << copy.dump() << '\n';
            }
            break;
        }
        case Format::Csv: {
            for (std::size_t i = 0; i < table.columns.size(); ++i)
                out << (i ? "," : "") << csv_escape(table.columns[i]);
            out << '\n';
            for (const Json& row : table.rows) {
                for (std::size_t i = 0; i < table.columns.size(); ++i)
                    out << (i ? "," : "") << csv_escape(cell_text(row.value(table.columns[i], Json{})));
                out << '\n';
            }
            break;
        }
        case Format::Markdown: {
            out << '|';
            for (const auto& c : table.columns) out << ' ' << c << " |";
            out << "\n|";
            for (std::size_t i = 0; i < table.columns.size(); ++i) out << " --- |";
            out << '\n';
            for (const Json& row : table.rows) {
                out << '|';
                for (const auto& c : table.columns) out << ' ' << cell_text(row.value(c, Json{})) << " |";
                out << '\n';
            }
            break;
        }
        case Format::Bfile: {
            if (!table.bfile_columns) throw UsageError("bfile output is not available for this command");
            const auto& [key, value] = *table.bfile_columns;
            for (const Json& row : table.rows) {
                const std::string v = cell_text(row.at(value));
                if (v.find('/') != std::string::npos) throw UsageError("bfile output needs integer values");
                out << cell_text(row.at(key)) << ' ' << v << '\n';
            }
            break;
        }
    }
}

}  // namespace divsigma::cli
