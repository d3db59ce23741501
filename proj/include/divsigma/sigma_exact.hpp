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

#ifndef DIVSIGMA_SIGMA_EXACT_HPP
#define DIVSIGMA_SIGMA_EXACT_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "arith_core.hpp"
#include "cyclotomic.hpp"
#include "ramanujan.hpp"

namespace divsigma {

/// Collects sum_i coeff_i * H_{index_i}^(order). Coefficients sharing an index
/// are merged first, so the big harmonic values are touched once per distinct
/// floor quotient.
class HarmonicAccumulator {
public:
    explicit HarmonicAccumulator(int order) : order_(order) {}

    void add(std::uint64_t index, const Rational& coeff) {
        if (index == 0 || coeff == 0) return;
        auto [it, inserted] = coeff_.try_emplace(index, coeff);
        if (!inserted) it->second += coeff;
    }

    Rational total(const ArithContext& ctx) const {
        Rational sum = 0;
        for (const auto& [index, c] : coeff_)
            if (c != 0) sum += c * ctx.H(index, order_);
        return sum;
    }

private:
    int order_;
    std::map<std::uint64_t, Rational> coeff_;
};

enum class RamanujanRoute { DivisorSum, ClosedForm };

inline std::int64_t ramanujan(std::uint64_t q, std::uint64_t n, const PrimeTable& table, RamanujanRoute route) {
    return route == RamanujanRoute::DivisorSum ? ramanujan_sum(q, n, table)
                                               : ramanujan_sum_closed_form(q, n, table);
}

inline void require_positive(std::uint64_t x, const char* what) {
    if (x == 0) throw DomainError(std::string(what) + ": x must be >= 1");
}

/// sigma_alpha(x) = sum_{d|x} d^alpha, exact for negative alpha too.
inline Rational sigma_bruteforce(int alpha, std::uint64_t x, const PrimeTable& table) {
    require_positive(x, "sigma_bruteforce");
    Rational s = 0;
    for (std::uint64_t d : table.divisors(x)) s += rational_pow(static_cast<std::int64_t>(d), alpha);
    return s;
}

/// tau_alpha(x): sum over generic 2 <= d <= x of H_{x/d}^(1-alpha) d^(alpha-1) c_d(x).
inline Rational s_hat_0(int alpha, std::uint64_t x, const ArithContext& ctx,
                        RamanujanRoute route = RamanujanRoute::ClosedForm) {
    require_positive(x, "s_hat_0");
    HarmonicAccumulator acc(1 - alpha);
    // x/d is non-increasing in d, so equal indices arrive in runs; each run is
    // summed locally (in Z when alpha >= 1) before touching the accumulator.
    std::uint64_t run_index = 0;
    BigInt run_int = 0, power;
    Rational run_rat = 0;
    auto flush = [&] {
        if (alpha >= 1) {
            acc.add(run_index, Rational{run_int});
            run_int = 0;
        } else {
            acc.add(run_index, run_rat);
            run_rat = 0;
        }
    };
    for (std::uint64_t d = 2; d <= x; ++d) {
        if (!chi_generic(d, ctx.primes)) continue;
        const std::int64_t c = ramanujan(d, x, ctx.primes, route);
        if (c == 0) continue;
        const std::uint64_t index = x / d;
        if (index != run_index) {
            flush();
            run_index = index;
        }
        if (alpha >= 1) {
            mpz_ui_pow_ui(power.get_mpz_t(), d, static_cast<unsigned long>(alpha - 1));
            power *= static_cast<long>(c);
            run_int += power;
        } else {
            run_rat += rational_pow(static_cast<std::int64_t>(d), alpha - 1) * Rational{static_cast<long>(c)};
        }
    }
    flush();
    return acc.total(ctx);
}

namespace detail {

/// The floor bracket p floor(x/p^k) - p floor(x/p^k - 1/p) - 1, evaluated with
/// x/p^k - 1/p = (x - p^(k-1)) / p^k.
inline std::int64_t prime_power_bracket(std::uint64_t p, std::uint64_t pk_minus_1, std::uint64_t x) {
    const std::uint64_t pk = pk_minus_1 * p;
    const auto ip = static_cast<std::int64_t>(p);
    return ip * static_cast<std::int64_t>(x / pk) -
           ip * floor_div(static_cast<std::int64_t>(x) - static_cast<std::int64_t>(pk_minus_1),
                          static_cast<std::int64_t>(pk)) -
           1;
}

}  // namespace detail

/// Prime-power component: sum_{p<=x} sum_{k=1}^{nu_p(x)+1} p^(alpha k - 1) H_{x/p^k}^(1-alpha) * bracket.
inline Rational s_hat_1(int alpha, std::uint64_t x, const ArithContext& ctx) {
    require_positive(x, "s_hat_1");
    HarmonicAccumulator acc(1 - alpha);
    for (std::uint64_t p : ctx.primes.primes_in(2, x)) {
        const int v = valuation(p, x);
        std::uint64_t pk1 = 1;
        for (int k = 1; k <= v + 1; ++k, pk1 *= p) {
            const std::uint64_t index = x / (pk1 * p);
            if (index == 0) break;
            const std::int64_t bracket = detail::prime_power_bracket(p, pk1, x);
            acc.add(index, rational_pow(static_cast<std::int64_t>(p), alpha * k - 1) * Rational{static_cast<long>(bracket)});
        }
    }
    return acc.total(ctx);
}

/// Twice-odd-prime-power component: odd p only, harmonic index floor(x/(2p^k)),
/// factor 2^(alpha-1) and sign (-1)^floor(x/p^(k-1)).
inline Rational s_hat_2(int alpha, std::uint64_t x, const ArithContext& ctx) {
    require_positive(x, "s_hat_2");
    HarmonicAccumulator acc(1 - alpha);
    const Rational two_power = rational_pow(2, alpha - 1);
    for (std::uint64_t p : ctx.primes.primes_in(3, x)) {
        const int v = valuation(p, x);
        std::uint64_t pk1 = 1;
        for (int k = 1; k <= v + 1; ++k, pk1 *= p) {
            const std::uint64_t index = x / (2 * pk1 * p);
            if (index == 0) break;
            const std::int64_t bracket = detail::prime_power_bracket(p, pk1, x);
            const long sign = (x / pk1) % 2 == 0 ? 1 : -1;
            acc.add(index, rational_pow(static_cast<std::int64_t>(p), alpha * k - 1) * two_power *
                               Rational{sign * bracket});
        }
    }
    return acc.total(ctx);
}

struct SigmaBreakdown {
    std::uint64_t x = 0;
    int alpha = 0;
    Rational harmonic_term;  // H_x^(1-alpha)
    Rational s0;
    Rational s1;
    Rational s2;
    Rational total;
};

/// sigma_alpha(x) = H_x^(1-alpha) + s0 + s1 + s2.
inline SigmaBreakdown sigma_exact(int alpha, std::uint64_t x, const ArithContext& ctx) {
    require_positive(x, "sigma_exact");
    SigmaBreakdown b;
    b.x = x;
    b.alpha = alpha;
    b.harmonic_term = ctx.H(x, 1 - alpha);
    b.s0 = s_hat_0(alpha, x, ctx);
    b.s1 = s_hat_1(alpha, x, ctx);
    b.s2 = s_hat_2(alpha, x, ctx);
    b.total = b.harmonic_term + b.s0 + b.s1 + b.s2;
    if (b.total != b.harmonic_term + b.s0 + b.s1 + b.s2) throw std::logic_error("sigma_exact: breakdown not additive");
    return b;
}

enum class SymmetricPrimeRange { OddPrimes, AllPrimes };

/// Where the sign of the twice-prime-power sum sits: one global (-1)^x, or
/// (-1)^floor(x/p^(k-1)) on each term.
enum class SymmetricSign { Global, PerTerm };

struct SymmetricBreakdown {
    std::uint64_t x = 0;
    int alpha = 0;
    Rational harmonic_term;  // H_x^(alpha+1)
    Rational s0_neg;
    Rational s1_neg;
    Rational s2_neg;
    Rational total;  // x^alpha * (harmonic_term + s0_neg + s1_neg + s2_neg)
};

/// Negative-order component sums assembled with the x^alpha prefactor. Only
/// the odd-prime range reproduces sigma_alpha; AllPrimes is kept for comparison.
inline SymmetricBreakdown sigma_symmetric(int alpha, std::uint64_t x, const ArithContext& ctx,
                                          SymmetricPrimeRange range = SymmetricPrimeRange::OddPrimes,
                                          SymmetricSign sign = SymmetricSign::Global) {
    if (alpha < 0) throw DomainError("sigma_symmetric: alpha must be >= 0");
    require_positive(x, "sigma_symmetric");
    const int order = alpha + 1;
    SymmetricBreakdown b;
    b.x = x;
    b.alpha = alpha;
    b.harmonic_term = ctx.H(x, order);

    HarmonicAccumulator s0(order);
    for (std::uint64_t d = 2; d <= x; ++d) {
        if (!chi_generic(d, ctx.primes)) continue;
        const std::int64_t c = ramanujan_sum_closed_form(d, x, ctx.primes);
        if (c != 0) s0.add(x / d, Rational{static_cast<long>(c)} * rational_pow(static_cast<std::int64_t>(d), -order));
    }
    b.s0_neg = s0.total(ctx);

    // Exact-division terms k = 1..nu_p(x), then the k = nu_p(x)+1 remainder term.
    auto prime_sum = [&](std::uint64_t p, std::uint64_t scale, HarmonicAccumulator& acc, bool per_term_sign) {
        const int v = valuation(p, x);
        const auto ip = static_cast<std::int64_t>(p);
        auto signed_term = [&](std::uint64_t pk_minus_1, Rational c) {
            if (per_term_sign && (x / pk_minus_1) % 2 != 0) c = -c;
            return c;
        };
        std::uint64_t pk = 1;
        for (int k = 1; k <= v; ++k) {
            const std::uint64_t prev = pk;
            pk *= p;
            acc.add(x / (scale * pk), signed_term(prev, Rational{ip - 1} * rational_pow(ip, -(alpha * k + 1))));
        }
        acc.add(x / (scale * pk * p), signed_term(pk, -rational_pow(ip, -(alpha * v + alpha + 1))));
    };

    HarmonicAccumulator s1(order);
    for (std::uint64_t p : ctx.primes.primes_in(2, x)) prime_sum(p, 1, s1, false);
    b.s1_neg = s1.total(ctx);

    const bool per_term = sign == SymmetricSign::PerTerm;
    HarmonicAccumulator s2(order);
    const std::uint64_t lowest = range == SymmetricPrimeRange::OddPrimes ? 3 : 2;
    for (std::uint64_t p : ctx.primes.primes_in(lowest, x)) prime_sum(p, 2, s2, per_term);
    b.s2_neg = s2.total(ctx) * rational_pow(2, -order);
    if (!per_term && x % 2 != 0) b.s2_neg = -b.s2_neg;

    b.total = Rational{big_pow(static_cast<std::int64_t>(x), static_cast<unsigned long>(alpha))} *
              (b.harmonic_term + b.s0_neg + b.s1_neg + b.s2_neg);
    return b;
}

/// sum_{d=1}^x H_{x/d}^(1-alpha) d^(alpha-1) c_d(x), the d = 1 term included.
inline Rational sigma_corollary(int alpha, std::uint64_t x, const ArithContext& ctx,
                                RamanujanRoute route = RamanujanRoute::DivisorSum) {
    require_positive(x, "sigma_corollary");
    HarmonicAccumulator acc(1 - alpha);
    for (std::uint64_t d = 1; d <= x; ++d) {
        const std::int64_t c = ramanujan(d, x, ctx.primes, route);
        if (c != 0) acc.add(x / d, rational_pow(static_cast<std::int64_t>(d), alpha - 1) * Rational{static_cast<long>(c)});
    }
    return acc.total(ctx);
}

/// Component sums by literal power-series extraction of the rational
/// generating functions, [q^x] sum_{n<=x} S_{i,n}(q) n^(alpha-1). Independent
/// of the closed forms above; quadratic in x, meant for x up to a few hundred.
struct SeriesComponents {
    Rational s0;
    Rational s1;
    Rational s2;
};

inline SeriesComponents component_sums_by_series(int alpha, std::uint64_t x, const ArithContext& ctx) {
    require_positive(x, "component_sums_by_series");
    const auto& t = ctx.primes;
    std::map<std::uint64_t, Rational> phi_coeff;   // [q^x] phi_tilde(d)
    std::map<std::pair<std::uint64_t, bool>, Rational> pi_coeff;  // [q^x] Pi_m(+-q)
    auto phi_at = [&](std::uint64_t d) -> const Rational& {
        auto it = phi_coeff.find(d);
        if (it == phi_coeff.end()) it = phi_coeff.emplace(d, series_coefficients(phi_tilde(d, t), x)[x]).first;
        return it->second;
    };
    auto pi_at = [&](std::uint64_t m, bool negate) -> const Rational& {
        auto key = std::make_pair(m, negate);
        auto it = pi_coeff.find(key);
        if (it == pi_coeff.end()) {
            const RatFunc f = negate ? pi_n(m).substitute(1, true) : pi_n(m);
            it = pi_coeff.emplace(key, series_coefficients(f, x)[x]).first;
        }
        return it->second;
    };

    SeriesComponents out;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const Rational weight = rational_pow(static_cast<std::int64_t>(n), alpha - 1);
        Rational c0 = 0, c1 = 0, c2 = 0;
        for (std::uint64_t d : t.divisors(n))
            if (d > 1 && chi_generic(d, t)) c0 += phi_at(d);
        for (const auto& [p, e] : t.factorize(n).factors) {
            std::uint64_t pe = 1;
            for (int i = 0; i < e; ++i) pe *= p;
            c1 += pi_at(pe, false);
            if (p > 2 && n % 2 == 0) c2 += pi_at(pe, true);
        }
        out.s0 += weight * c0;
        out.s1 += weight * c1;
        out.s2 += weight * c2;
    }
    return out;
}

struct ConjectureCheck {
    Rational lhs;
    Rational rhs;
    bool match = false;
};

/// sigma_{alpha+1}(x) against sum_{d|x} d^(alpha+1) sum_{k<=x/d} mu(k) k^alpha H_{(x/d)/k}^(-alpha).
inline ConjectureCheck conjecture_check(int alpha, std::uint64_t x, const ArithContext& ctx) {
    if (alpha < 0) throw DomainError("conjecture_check: alpha must be >= 0");
    require_positive(x, "conjecture_check");
    ConjectureCheck out;
    out.lhs = sigma_bruteforce(alpha + 1, x, ctx.primes);
    for (std::uint64_t d : ctx.primes.divisors(x)) {
        const std::uint64_t m = x / d;
        HarmonicAccumulator inner(-alpha);
        for (std::uint64_t k = 1; k <= m; ++k) {
            const int mu = ctx.primes.mobius(k);
            if (mu != 0) inner.add(m / k, Rational{mu} * rational_pow(static_cast<std::int64_t>(k), alpha));
        }
        out.rhs += rational_pow(static_cast<std::int64_t>(d), alpha + 1) * inner.total(ctx);
    }
    out.match = out.lhs == out.rhs;
    return out;
}

/// M_alpha(x) = sum_{n<=x} mu(n) / n^alpha.
inline Rational mertens(int alpha, std::uint64_t x, const PrimeTable& table) {
    require_positive(x, "mertens");
    Rational s = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const int mu = table.mobius(n);
        if (mu != 0) s += Rational{mu} * rational_pow(static_cast<std::int64_t>(n), -alpha);
    }
    return s;
}

/// Floating-point evaluation of the four-part formula for complex alpha.
/// Smoke-test mode only; exact acceptance is impossible off the integers.
struct ComplexSigma {
    std::complex<double> formula;
    std::complex<double> direct;
};

inline ComplexSigma sigma_complex(std::complex<double> alpha, std::uint64_t x, const PrimeTable& table) {
    require_positive(x, "sigma_complex");
    using C = std::complex<double>;
    auto pw = [](double b, C e) { return std::pow(C{b, 0.0}, e); };
    auto H = [&](std::uint64_t n) {
        C s = 0;
        for (std::uint64_t k = 1; k <= n; ++k) s += pw(static_cast<double>(k), alpha - 1.0);
        return s;
    };
    ComplexSigma out;
    for (std::uint64_t d : table.divisors(x)) out.direct += pw(static_cast<double>(d), alpha);

    C total = H(x);
    for (std::uint64_t d = 2; d <= x; ++d)
        if (chi_generic(d, table))
            total += H(x / d) * pw(static_cast<double>(d), alpha - 1.0) *
                     static_cast<double>(ramanujan_sum_closed_form(d, x, table));
    for (std::uint64_t p : table.primes_in(2, x)) {
        const int v = valuation(p, x);
        std::uint64_t pk1 = 1;
        for (int k = 1; k <= v + 1; ++k, pk1 *= p) {
            const auto bracket = static_cast<double>(detail::prime_power_bracket(p, pk1, x));
            const C weight = pw(static_cast<double>(p), alpha * static_cast<double>(k) - 1.0) * bracket;
            total += weight * H(x / (pk1 * p));
            if (p > 2) {
                const double sign = (x / pk1) % 2 == 0 ? 1.0 : -1.0;
                total += weight * pw(2.0, alpha - 1.0) * sign * H(x / (2 * pk1 * p));
            }
        }
    }
    out.formula = total;
    return out;
}

}  // namespace divsigma

#endif  // DIVSIGMA_SIGMA_EXACT_HPP
