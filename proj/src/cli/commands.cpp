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
#include <ostream>
#include <sstream>

#include <divsigma/divsigma.hpp>

#include "CLI11.hpp"
#include "harness.hpp"
#include "parallel.hpp"

namespace divsigma::cli {

namespace {

std::uint64_t to_u64(std::int64_t v) {
    if (v < 1) throw UsageError("values must be >= 1");
    return static_cast<std::uint64_t>(v);
}

std::string real_text(const Real& v, int digits) { return v.str(digits, std::ios::scientific); }

std::string radius_text(const Real& r) { return r.str(3, std::ios::scientific); }

SuiteOptions suite_options(const RunConfig& c) {
    SuiteOptions o;
    if (c.x || c.range) o.x = c.x_range({});
    if (c.alpha) o.alpha = c.alpha_range({});
    o.beta = c.beta;
    o.jobs = c.jobs;
    return o;
}

}  // namespace

int cmd_sigma(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const Range xs = c.x_range({1, 1});
    const int alpha = c.alpha_value(0);
    const std::uint64_t hi = to_u64(xs.hi);
    to_u64(xs.lo);
    ArithContext ctx(hi);
    Table t{{"x", "alpha", "H", "s0", "s1", "s2", "total", "oracle_match"}, {}, std::nullopt};
    const auto count = static_cast<std::size_t>(xs.hi - xs.lo + 1);
    t.rows = ordered_map<Json>(count, c.jobs, [&](std::size_t i) {
        const std::uint64_t x = static_cast<std::uint64_t>(xs.lo) + i;
        const SigmaBreakdown b = sigma_exact(alpha, x, ctx);
        return Json{{"x", x},
                    {"alpha", alpha},
                    {"H", to_string(b.harmonic_term)},
                    {"s0", to_string(b.s0)},
                    {"s1", to_string(b.s1)},
                    {"s2", to_string(b.s2)},
                    {"total", to_string(b.total)},
                    {"oracle_match", b.total == sigma_bruteforce(alpha, x, ctx.primes)}};
    });
    render(t, c.format, c.timestamp, out);
    std::uint64_t mismatches = 0;
    for (const auto& row : t.rows)
        if (!row["oracle_match"].get<bool>()) ++mismatches;
    if (mismatches) err << mismatches << " value(s) disagree with the divisor-sum oracle\n";
    return mismatches ? kFailure : kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<std::string> names = c.suites.empty() ? suite_names() : c.suites;
    for (const auto& n : names) (void)suite_is_diagnostic(n);
    const SuiteOptions opts = suite_options(c);
    Table t{{"suite", "diagnostic", "status", "checked", "failures", "detail"}, {}, std::nullopt};
    std::vector<SuiteResult> results;
    bool failed = false;
    for (const auto& n : names) {
        SuiteResult r = run_suite(n, opts);
        const std::string status = r.diagnostic ? "reported" : (r.passed ? "pass" : "fail");
        if (!r.diagnostic && !r.passed) failed = true;
        t.rows.push_back(Json{{"suite", r.name},
                              {"diagnostic", r.diagnostic},
                              {"status", status},
                              {"checked", r.checked},
                              {"failures", r.failures},
                              {"detail", r.detail}});
        results.push_back(std::move(r));
    }
    render(t, c.format, c.timestamp, out);
    if (c.update_ledger) {
        ErrataLedger ledger = ErrataLedger::load(c.ledger_path);
        std::uint64_t added = 0, conflicts = 0;
        for (const auto& r : results)
            for (const auto& e : r.errata) switch (ledger.append(e)) {
                    case ErrataLedger::AppendResult::Added: ++added; break;
                    case ErrataLedger::AppendResult::Unchanged: break;
                    case ErrataLedger::AppendResult::Conflict:
                        ++conflicts;
                        err << "ledger conflict at " << e.location << ": recorded entry kept, observed verdict "
                            << e.verdict << '\n';
                        break;
                }
        ledger.save(c.ledger_path);
        err << "ledger " << c.ledger_path << ": " << added << " added, " << conflicts << " conflicting\n";
        if (conflicts) failed = true;
    }
    return failed ? kFailure : kOk;
}

int cmd_constants(const RunConfig& c, std::ostream& out, std::ostream&) {
    const int alpha = c.alpha_value(3);
    const int beta = c.beta.value_or(2);
    const ConstantSet cs = constants(alpha, beta, c.prime_limit);
    Table t{{"name", "value", "digits", "radius", "prime_limit"}, {}, std::nullopt};
    auto add = [&](const std::string& name, const BoundedReal& v) {
        t.rows.push_back(Json{{"name", name},
                              {"value", real_text(v.value, c.precision)},
                              {"digits", c.precision},
                              {"radius", radius_text(v.radius)},
                              {"prime_limit", c.prime_limit}});
    };
    for (const auto& [name, v] : cs.entries()) add(name, v);
    add("zeta(alpha+1)", cs.zeta_alpha_plus_1);
    render(t, c.format, c.timestamp, out);
    return kOk;
}

int cmd_summatory(const RunConfig& c, std::ostream& out, std::ostream&) {
    const Range xs = c.x_range({1, 100});
    const int alpha = c.alpha_value(1);
    const int beta = c.beta.value_or(0);
    to_u64(xs.lo);
    ArithContext ctx(to_u64(xs.hi));
    Table t{{"x", "alpha", "beta", "exact", "routes", "leading_prediction", "residual", "digits"}, {}, std::nullopt};
    const auto count = static_cast<std::size_t>(xs.hi - xs.lo + 1);
    t.rows = ordered_map<Json>(count, c.jobs, [&](std::size_t i) {
        const SummatoryReport r = summatory_report(alpha, beta, static_cast<std::uint64_t>(xs.lo) + i, ctx);
        std::string routes;
        for (const auto& [name, v] : r.routes) routes += (routes.empty() ? "" : " ") + name;
        return Json{{"x", r.x},
                    {"alpha", alpha},
                    {"beta", beta},
                    {"exact", to_string(r.exact)},
                    {"routes", routes},
                    {"leading_prediction", real_text(r.leading_prediction, c.precision)},
                    {"residual", real_text(r.residual, c.precision)},
                    {"digits", c.precision}};
    });
    render(t, c.format, c.timestamp, out);
    return kOk;
}

int cmd_partitions(const RunConfig& c, std::ostream& out, std::ostream&) {
    const int alpha = c.alpha_value(0);
    const std::uint64_t n = c.n.value_or(20);
    const PartitionTable p = planar_partitions(alpha, n);
    Table t{{"n", "PL"}, {}, std::make_pair(std::string("n"), std::string("PL"))};
    for (std::uint64_t k = 0; k < p.values.size(); ++k) t.rows.push_back(Json{{"n", k}, {"PL", p.values[k].get_str()}});
    render(t, c.format, c.timestamp, out);
    return kOk;
}

int cmd_perfect(const RunConfig& c, std::ostream& out, std::ostream&) {
    if (c.exponents) {
        const Range ps = parse_range(*c.exponents);
        if (ps.lo < 2) throw UsageError("--exponents must start at 2 or above");
        Table t{{"p", "P", "sigma_P", "is_perfect", "sigma_display_matches", "condition_rhs", "condition_matches"},
                {},
                std::nullopt};
        for (std::int64_t p = ps.lo; p <= ps.hi; ++p) {
            const PerfectReport r = perfect_condition(static_cast<int>(p));
            t.rows.push_back(Json{{"p", r.p},
                                  {"P", r.P},
                                  {"sigma_P", r.sigma_P.get_str()},
                                  {"is_perfect", r.is_perfect},
                                  {"sigma_display_matches", r.sigma_display_matches},
                                  {"condition_rhs", r.condition_rhs ? Json(to_string(*r.condition_rhs)) : Json()},
                                  {"condition_matches", r.condition_matches}});
        }
        render(t, c.format, c.timestamp, out);
        return kOk;
    }
    const auto found = perfect_search(c.limit.value_or(10000));
    Table t{{"index", "n"}, {}, std::make_pair(std::string("index"), std::string("n"))};
    for (std::size_t i = 0; i < found.size(); ++i) t.rows.push_back(Json{{"index", i + 1}, {"n", found[i]}});
    render(t, c.format, c.timestamp, out);
    return kOk;
}

int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const Range xs = c.x_range({1, 2000});
    const int alpha = c.alpha_value(1);
    if (alpha < 0) throw UsageError("bench takes --alpha >= 0");
    const std::uint64_t lo = to_u64(xs.lo), hi = to_u64(xs.hi);
    using Clock = std::chrono::steady_clock;
    auto seconds = [](Clock::time_point a) { return std::chrono::duration<double>(Clock::now() - a).count(); };

    auto t0 = Clock::now();
    ArithContext ctx(hi);
    const auto per_x = ordered_map<Rational>(static_cast<std::size_t>(hi - lo + 1), c.jobs, [&](std::size_t i) {
        return sigma_exact(alpha, lo + i, ctx).total;
    });
    Rational exact_sum = 0;
    for (const auto& v : per_x) exact_sum += v;
    const double t_exact = seconds(t0);

    t0 = Clock::now();
    const auto sieve = sigma_sieve(alpha, hi);
    Rational sieve_sum = 0;
    for (std::uint64_t x = lo; x <= hi; ++x) sieve_sum += sieve[x];
    const double t_sieve = seconds(t0);

    t0 = Clock::now();
    ArithContext ctx2(hi);
    const Rational identity_sum =
        summatory_identity(alpha, 0, hi, ctx2) - (lo > 1 ? summatory_identity(alpha, 0, lo - 1, ctx2) : Rational{0});
    const double t_identity = seconds(t0);

    const bool agree = exact_sum == sieve_sum && sieve_sum == identity_sum;
    Table t{{"method", "alpha", "x_lo", "x_hi", "seconds", "sum"}, {}, std::nullopt};
    auto row = [&](const char* m, double s, const Rational& v) {
        t.rows.push_back(Json{{"method", m}, {"alpha", alpha}, {"x_lo", lo}, {"x_hi", hi}, {"seconds", s}, {"sum", to_string(v)}});
    };
    row("four-part per x", t_exact, exact_sum);
    row("sieve", t_sieve, sieve_sum);
    row("summatory identity", t_identity, identity_sum);
    render(t, c.format, c.timestamp, out);
    if (!agree) err << "bench: methods disagree\n";
    return agree ? kOk : kFailure;
}

int cmd_lambert_terms(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const Range ns = c.x_range({2, 16});
    PrimeTable table(64);
    Table t{{"n", "decomposition", "lambert_term", "identity_holds", "reduced_holds"}, {}, std::nullopt};
    bool ok = true;
    for (std::int64_t n = ns.lo; n <= ns.hi; ++n) {
        const Table1Row row = table1_row(static_cast<std::uint64_t>(n), table);
        std::string decomposition;
        for (const auto& term : row.terms) {
            if (!decomposition.empty()) decomposition += " + ";
            if (term.exponent > 1) decomposition += std::to_string(term.exponent) + " ";
            decomposition += "PhiTilde_" + std::to_string(term.base);
            decomposition += term.exponent > 1 ? "(q^" + std::to_string(term.exponent) + ")" : "(q)";
        }
        ok = ok && row.identity_holds && row.reduced_holds;
        t.rows.push_back(Json{{"n", n},
                              {"decomposition", decomposition},
                              {"lambert_term", row.lambert_term.to_string()},
                              {"identity_holds", row.identity_holds},
                              {"reduced_holds", row.reduced_holds}});
    }
    render(t, c.format, c.timestamp, out);
    if (!ok) err << "lambert-terms: a decomposition failed\n";
    return ok ? kOk : kFailure;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        const std::string& s = config.subcommand;
        if (s == "sigma") return cmd_sigma(config, out, err);
        if (s == "verify") return cmd_verify(config, out, err);
        if (s == "constants") return cmd_constants(config, out, err);
        if (s == "summatory") return cmd_summatory(config, out, err);
        if (s == "partitions") return cmd_partitions(config, out, err);
        if (s == "perfect") return cmd_perfect(config, out, err);
        if (s == "bench") return cmd_bench(config, out, err);
        if (s == "lambert-terms") return cmd_lambert_terms(config, out, err);
        throw UsageError("unknown subcommand '" + s + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact divisor-sum computations and verification sweeps"};
    app.require_subcommand(1);
    RunConfig config;

    std::string alpha, range, format = "json", ledger = config.ledger_path, exponents;
    int beta = 0;
    std::int64_t x = 0;
    std::uint64_t n = 0, limit = 0;
    bool no_timestamp = false;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"sigma", "sigma_alpha(x) by the four-part formula, checked against divisor sums"},
        {"verify", "run verification suites"},
        {"constants", "asymptotic constants with tail radii"},
        {"summatory", "summatory functions by every exact route"},
        {"partitions", "generalized planar partition numbers"},
        {"perfect", "perfect-number search and the Mersenne condition"},
        {"bench", "timing of the per-x, sieve and summatory routes"},
        {"lambert-terms", "Lambert-term decompositions for n in 2..16"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--alpha", alpha, "integer or lo:hi");
        sub->add_option("--beta", beta);
        sub->add_option("--x", x);
        sub->add_option("--range", range, "lo:hi");
        sub->add_option("--prime-limit", config.prime_limit);
        sub->add_option("--precision", config.precision, "significant digits for reals");
        sub->add_option("--format", format, "json, csv, markdown or bfile");
        sub->add_option("--jobs", config.jobs);
        sub->add_option("--suite", config.suites, "suite name (repeatable)");
        sub->add_flag("--update-ledger", config.update_ledger);
        sub->add_option("--ledger", ledger, "errata ledger path");
        sub->add_flag("--no-timestamp", no_timestamp);
        sub->add_option("--n", n);
        sub->add_option("--limit", limit);
        sub->add_option("--exponents", exponents, "lo:hi");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    CLI::App* sub = nullptr;
    for (CLI::App* s : subs)
        if (s->parsed()) sub = s;
    config.subcommand = sub->get_name();
    auto given = [&](const char* flag) { return sub->get_option(flag)->count() > 0; };
    if (given("--alpha")) config.alpha = alpha;
    if (given("--beta")) config.beta = beta;
    if (given("--x")) config.x = x;
    if (given("--range")) config.range = range;
    if (given("--n")) config.n = n;
    if (given("--limit")) config.limit = limit;
    if (given("--exponents")) config.exponents = exponents;
    config.ledger_path = ledger;
    config.timestamp = !no_timestamp;
    try {
        config.format = parse_format(format);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return run(config, out, err);
}

}  // namespace divsigma::cli
