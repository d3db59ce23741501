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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "harness.hpp"

using namespace divsigma::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "divsigma");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<Json> json_lines(const std::string& text) {
    std::vector<Json> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(Json::parse(line));
    return rows;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_ledger(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("divsigma_ledger_" + tag + ".jsonl");
    std::filesystem::remove(p);
    return p;
}

const std::filesystem::path source_dir{DIVSIGMA_SOURCE_DIR};

}  // namespace

TEST(Cli, SigmaJsonRow) {
    const auto r = invoke({"sigma", "--x", "6", "--alpha", "0", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto rows = json_lines(r.out);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0]["x"], 6);
    EXPECT_EQ(rows[0]["H"], "49/20");
    EXPECT_EQ(rows[0]["total"], "4");
    EXPECT_EQ(rows[0]["oracle_match"], true);
    EXPECT_FALSE(rows[0].contains("generated_at"));
}

TEST(Cli, TimestampPresentByDefault) {
    const auto r = invoke({"sigma", "--x", "12", "--alpha", "1"});
    ASSERT_EQ(r.code, kOk);
    const auto rows = json_lines(r.out);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].contains("generated_at"));
    EXPECT_EQ(rows[0]["total"], "28");
}

TEST(Cli, JsonRoundTripIsIdempotent) {
    const auto r = invoke({"sigma", "--range", "1:40", "--alpha", "2", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk);
    std::istringstream in(r.out);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(Json::parse(line).dump(), line);
        ++n;
    }
    EXPECT_EQ(n, 40);
}

TEST(Cli, DeterministicAcrossJobs) {
    const auto a = invoke({"sigma", "--range", "1:200", "--alpha", "1", "--no-timestamp", "--jobs", "1"});
    const auto b = invoke({"sigma", "--range", "1:200", "--alpha", "1", "--no-timestamp", "--jobs", "4"});
    ASSERT_EQ(a.code, kOk);
    EXPECT_EQ(a.out, b.out);
    const auto c = invoke({"summatory", "--range", "1:60", "--alpha", "1", "--beta", "0", "--no-timestamp"});
    const auto d = invoke({"summatory", "--range", "1:60", "--alpha", "1", "--beta", "0", "--no-timestamp"});
    ASSERT_EQ(c.code, kOk) << c.err;
    EXPECT_EQ(c.out, d.out);
}

TEST(Cli, ParseRange) {
    const Range r = parse_range("3:17");
    EXPECT_EQ(r.lo, 3);
    EXPECT_EQ(r.hi, 17);
    const Range neg = parse_range("-2:3");
    EXPECT_EQ(neg.lo, -2);
    EXPECT_EQ(neg.hi, 3);
    EXPECT_THROW(parse_range("5:1"), UsageError);
    EXPECT_THROW(parse_range("a:b"), UsageError);
    const Range single = parse_range("7");
    EXPECT_EQ(single.lo, 7);
    EXPECT_EQ(single.hi, 7);
}

TEST(Cli, ParseFormat) {
    EXPECT_EQ(parse_format("json"), Format::Json);
    EXPECT_EQ(parse_format("csv"), Format::Csv);
    EXPECT_EQ(parse_format("markdown"), Format::Markdown);
    EXPECT_EQ(parse_format("bfile"), Format::Bfile);
    EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(Cli, CsvEscaping) {
    Table t{{"a", "b"}, {Json{{"a", "x,y"}, {"b", "say \"hi\""}}, Json{{"a", 3}, {"b", "plain"}}}, std::nullopt};
    std::ostringstream out;
    render(t, Format::Csv, false, out);
    EXPECT_EQ(out.str(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n3,plain\n");
}

TEST(Cli, MarkdownTable) {
    Table t{{"n", "v"}, {Json{{"n", 1}, {"v", "1/2"}}}, std::nullopt};
    std::ostringstream out;
    render(t, Format::Markdown, true, out);
    EXPECT_EQ(out.str(), "| n | v |\n| --- | --- |\n| 1 | 1/2 |\n");
}

TEST(Cli, BfileOutputs) {
    const auto p = invoke({"partitions", "--alpha", "1", "--n", "6", "--format", "bfile"});
    ASSERT_EQ(p.code, kOk) << p.err;
    EXPECT_EQ(p.out, "0 1\n1 1\n2 3\n3 6\n4 13\n5 24\n6 48\n");
    const auto q = invoke({"perfect", "--limit", "10000", "--format", "bfile"});
    ASSERT_EQ(q.code, kOk);
    EXPECT_EQ(q.out, "1 6\n2 28\n3 496\n4 8128\n");
    // No integer sequence behind sigma output.
    EXPECT_EQ(invoke({"sigma", "--x", "5", "--format", "bfile"}).code, kUsage);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({"sigma", "--x", "5", "--format", "yaml"}).code, kUsage);
    EXPECT_EQ(invoke({"sigma", "--x", "0"}).code, kUsage);
    EXPECT_EQ(invoke({"sigma", "--range", "9:2"}).code, kUsage);
    EXPECT_EQ(invoke({"constants", "--precision", "0"}).code, kUsage);
    EXPECT_EQ(invoke({"verify", "--suite", "no-such-suite"}).code, kUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
    EXPECT_EQ(invoke({}).code, kUsage);
    EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(Cli, ConstantsRows) {
    const auto r = invoke({"constants", "--alpha", "3", "--beta", "2", "--prime-limit", "2000", "--no-timestamp"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto rows = json_lines(r.out);
    ASSERT_FALSE(rows.empty());
    for (const auto& row : rows) {
        EXPECT_TRUE(row.contains("name"));
        EXPECT_TRUE(row.contains("value"));
        EXPECT_TRUE(row.contains("radius"));
    }
}

TEST(Cli, VerifySuitesPass) {
    for (const auto& name : suite_names()) {
        if (name == "theorem4-full") continue;  // slow; run by the acceptance binary
        const SuiteResult r = run_suite(name, {});
        if (suite_is_diagnostic(name)) {
            EXPECT_TRUE(r.diagnostic) << name;
        } else {
            EXPECT_TRUE(r.passed) << name << ": " << r.detail;
            EXPECT_EQ(r.failures, 0u) << name;
        }
        EXPECT_GT(r.checked, 0u) << name;
    }
}

TEST(Cli, DiagnosticSuitesDoNotFailVerify) {
    const auto r = invoke({"verify", "--suite", "lambert-generic-verbatim", "--suite", "perfect-condition",
                           "--no-timestamp"});
    EXPECT_EQ(r.code, kOk) << r.err;
    for (const auto& row : json_lines(r.out)) EXPECT_EQ(row["status"], "reported");
}

TEST(Cli, LedgerAppendOnly) {
    const auto path = temp_ledger("append");
    ErrataLedger ledger = ErrataLedger::load(path.string());
    EXPECT_TRUE(ledger.entries().empty());
    const ErrataEntry e{"demo.location", "printed", "tested", "holds", "Cli.LedgerAppendOnly"};
    EXPECT_EQ(ledger.append(e), ErrataLedger::AppendResult::Added);
    EXPECT_EQ(ledger.append(e), ErrataLedger::AppendResult::Unchanged);
    ErrataEntry changed = e;
    changed.verdict = "fails";
    EXPECT_EQ(ledger.append(changed), ErrataLedger::AppendResult::Conflict);
    EXPECT_EQ(ledger.find("demo.location")->verdict, "holds");
    ledger.save(path.string());
    const ErrataLedger back = ErrataLedger::load(path.string());
    ASSERT_EQ(back.entries().size(), 1u);
    EXPECT_EQ(back.entries()[0], e);
    std::filesystem::remove(path);
}

TEST(Cli, UpdateLedgerIsIdempotent) {
    const auto path = temp_ledger("update");
    const std::vector<std::string> args{"verify",   "--suite",  "table1", "--suite", "table2", "--update-ledger",
                                        "--ledger", path.string(), "--no-timestamp"};
    ASSERT_EQ(invoke(args).code, kOk);
    const std::string first = read_file(path);
    EXPECT_FALSE(first.empty());
    ASSERT_EQ(invoke(args).code, kOk);
    EXPECT_EQ(read_file(path), first);
    std::filesystem::remove(path);
}

TEST(Cli, UpdateLedgerConflictExitsNonzero) {
    const auto path = temp_ledger("conflict");
    {
        std::ofstream out(path);
        out << ErrataEntry{"lambert-terms.row-9-reduced", "x", "y", "holds", "Nowhere.Test"}.to_json().dump() << '\n';
    }
    const auto r = invoke({"verify", "--suite", "table1", "--update-ledger", "--ledger", path.string()});
    EXPECT_EQ(r.code, kFailure);
    EXPECT_NE(r.err.find("conflict"), std::string::npos);
    // The recorded entry is kept as written.
    EXPECT_EQ(ErrataLedger::load(path.string()).find("lambert-terms.row-9-reduced")->verdict, "holds");
    std::filesystem::remove(path);
}

TEST(Cli, CommittedLedgerEvidenceExists) {
    const ErrataLedger ledger = ErrataLedger::load((source_dir / "docs" / "errata.jsonl").string());
    ASSERT_FALSE(ledger.entries().empty());
    std::string sources;
    for (const auto& f : std::filesystem::directory_iterator(source_dir / "tests")) sources += read_file(f.path());
    for (const auto& e : ledger.entries()) {
        const auto dot = e.evidence.find('.');
        ASSERT_NE(dot, std::string::npos) << e.evidence;
        const std::string decl =
            "TEST(" + e.evidence.substr(0, dot) + ", " + e.evidence.substr(dot + 1) + ")";
        EXPECT_NE(sources.find(decl), std::string::npos) << e.location << " -> " << e.evidence;
        EXPECT_TRUE(e.verdict == "holds" || e.verdict == "fails" || e.verdict == "corrected" ||
                    e.verdict == "diagnostic")
            << e.location;
    }
}

TEST(Cli, CommittedLedgerMatchesSuites) {
    const ErrataLedger ledger = ErrataLedger::load((source_dir / "docs" / "errata.jsonl").string());
    std::size_t seen = 0;
    for (const auto& name : suite_names()) {
        if (name == "theorem4-full") continue;
        for (const auto& e : run_suite(name, {}).errata) {
            const ErrataEntry* recorded = ledger.find(e.location);
            ASSERT_NE(recorded, nullptr) << e.location;
            EXPECT_EQ(*recorded, e) << e.location;
            ++seen;
        }
    }
    EXPECT_GT(seen, 10u);
}
