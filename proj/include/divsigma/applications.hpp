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

#ifndef DIVSIGMA_APPLICATIONS_HPP
#define DIVSIGMA_APPLICATIONS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arith_core.hpp"
#include "ramanujan.hpp"
#include "sigma_exact.hpp"
#include "summatory.hpp"

namespace divsigma {

// ---- Generalized planar partitions ---------------------------------------

enum class PartitionRoute { Recurrence, Product };

struct PartitionTable {
    int alpha = 0;
    PartitionRoute route = PartitionRoute::Recurrence;
    std::vector<BigInt> values;  // PL_alpha(0..N)
};

/// n PL(n) = sum_{k=1}^n sigma_{alpha+1}(k) PL(n-k).
inline PartitionTable planar_partitions(int alpha, std::uint64_t n_max) {
    if (alpha < 0) throw DomainError("planar_partitions: alpha must be >= 0");
    PartitionTable t;
    t.alpha = alpha;
    t.values.assign(n_max + 1, BigInt{0});
    t.values[0] = 1;
    const auto sigma = sigma_sieve(alpha + 1, n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        BigInt acc = 0;
        for (std::uint64_t k = 1; k <= n; ++k) acc += sigma[k] * t.values[n - k];
        const BigInt nn{static_cast<unsigned long>(n)};
        if (acc % nn != 0) throw std::logic_error("planar_partitions: recurrence left a remainder");
        t.values[n] = acc / nn;
    }
    return t;
}

/// Coefficients of prod_{n=1}^N (1-q^n)^(-n^alpha) through q^N, each factor
/// expanded as sum_j C(e+j-1, j) q^(nj) with e = n^alpha.
inline PartitionTable planar_partitions_product(int alpha, std::uint64_t n_max) {
    if (alpha < 0) throw DomainError("planar_partitions: alpha must be >= 0");
    PartitionTable t;
    t.alpha = alpha;
    t.route = PartitionRoute::Product;
    std::vector<BigInt> series(n_max + 1, BigInt{0});
    series[0] = 1;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const BigInt e = big_pow(static_cast<std::int64_t>(n), static_cast<unsigned long>(alpha));
        std::vector<BigInt> factor(n_max / n + 1);
        for (std::uint64_t j = 0; j < factor.size(); ++j) {
            BigInt top = e + static_cast<unsigned long>(j) - 1;
            BigInt c;
            mpz_bin_ui(c.get_mpz_t(), top.get_mpz_t(), j);
            factor[j] = c;
        }
        std::vector<BigInt> next(n_max + 1, BigInt{0});
        for (std::uint64_t i = 0; i <= n_max; ++i) {
            if (series[i] == 0) continue;
            for (std::uint64_t j = 0; i + n * j <= n_max; ++j) next[i + n * j] += series[i] * factor[j];
        }
        series.swap(next);
    }
    t.values = std::move(series);
    return t;
}

/// The symbolic rows n = 0..6 of the planar-partition table, evaluated at alpha.
inline Rational table2_row_value(unsigned n, int alpha) {
    if (alpha < 0) throw DomainError("table2_row_value: alpha must be >= 0");
    auto pw = [&](std::int64_t b) { return Rational{big_pow(b, static_cast<unsigned long>(alpha))}; };
    switch (n) {
        case 0:
        case 1: return 1;
        case 2: return 1 + pw(2);
        case 3: return 1 + pw(2) + pw(3);
        case 4: return 1 + pw(3) + Rational{3} * pw(2) / 2 * (1 + pw(2));
        case 5: return 1 + pw(3) + pw(5) + pw(6) + Rational{3} * pw(2) / 2 * (1 + pw(2));
        case 6:
            return 1 + pw(5) + 2 * pw(2) * (pw(2) + pw(3)) + pw(3) / 2 * (3 + pw(3)) +
                   pw(2) / 6 * (11 + 7 * pw(4));
        default: throw DomainError("table2_row_value: rows exist for n = 0..6 only");
    }
}

struct PartitionConvolutionCheck {
    bool sigma_convolution = false;  // n p(n) = sum_{k=1}^n sigma(k) p(n-k)
    bool pentagonal = false;
    bool index_swapped_form = false;  // sum_{k=1}^n sigma(n-k) p(k) with sigma(0) = 0
    bool holds() const { return sigma_convolution && pentagonal; }
};

inline PartitionConvolutionCheck partition_convolution_detail(std::uint64_t n_max) {
    if (n_max < 1) throw DomainError("partition_convolution_check: N must be >= 1");
    const auto p = planar_partitions(0, n_max).values;
    const auto sigma = sigma_sieve(1, n_max);
    PartitionConvolutionCheck out{true, true, true};
    auto p_at = [&](std::int64_t m) { return m < 0 ? BigInt{0} : p[static_cast<std::size_t>(m)]; };
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const BigInt lhs = BigInt{static_cast<unsigned long>(n)} * p[n];
        BigInt standard = 0, swapped = 0;
        for (std::uint64_t k = 1; k <= n; ++k) {
            standard += sigma[k] * p[n - k];
            if (k < n) swapped += sigma[n - k] * p[k];
        }
        if (standard != lhs) out.sigma_convolution = false;
        if (swapped != lhs) out.index_swapped_form = false;

        // k from floor(-(sqrt(24n+1)+1)/6) to floor((sqrt(24n+1)-1)/6), k != 0.
        const std::uint64_t m = 24 * n + 1;
        std::int64_t k_hi = 0;
        while ((6 * (k_hi + 1) + 1) * (6 * (k_hi + 1) + 1) <= static_cast<std::int64_t>(m)) ++k_hi;
        std::int64_t j = 0;  // smallest j with 6j - 1 >= sqrt(m)
        while (6 * j - 1 < 0 || (6 * j - 1) * (6 * j - 1) < static_cast<std::int64_t>(m)) ++j;
        const std::int64_t k_lo = -j;
        BigInt pent = 0;
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            if (k == 0) continue;
            const BigInt term = p_at(static_cast<std::int64_t>(n) - k * (3 * k + 1) / 2);
            pent += (k % 2 != 0) ? term : BigInt{-term};
        }
        if (pent != p[n]) out.pentagonal = false;
    }
    return out;
}

inline bool partition_convolution_check(std::uint64_t n_max) { return partition_convolution_detail(n_max).holds(); }

// ---- Perfect numbers -----------------------------------------------------

/// All n <= limit with sigma_1(n) = 2n, sigma evaluated by the four-part formula.
inline std::vector<std::uint64_t> perfect_search(std::uint64_t limit, const ArithContext& ctx) {
    if (limit == 0) throw DomainError("perfect_search: limit must be >= 1");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (sigma_exact(1, n, ctx).total == Rational{2 * static_cast<unsigned long>(n)}) out.push_back(n);
    return out;
}

inline std::vector<std::uint64_t> perfect_search(std::uint64_t limit) {
    ArithContext ctx(limit);
    return perfect_search(limit, ctx);
}

struct PerfectReport {
    int p = 0;
    std::uint64_t P = 0;
    BigInt sigma_P;
    bool is_perfect = false;
    Rational sigma_display;  // the expanded sigma(P) expression
    bool sigma_display_matches = false;
    std::optional<Rational> condition_rhs;  // empty if the denominator vanishes
    bool condition_matches = false;
};

inline constexpr std::uint64_t kPerfectConditionCap = 100000;

/// Candidate P = 2^(p-1)(2^p-1): sigma(P) through the four-part formula, then the
/// expanded sigma(P) display and the solved-for-P condition, both as printed.
inline PerfectReport perfect_condition(int p, std::uint64_t cap = kPerfectConditionCap) {
    if (p < 2) throw DomainError("perfect_condition: p must be >= 2");
    if (p > 40) throw CapacityError("perfect_condition: p too large");
    const std::uint64_t R = (std::uint64_t{1} << p) - 1;
    const std::uint64_t P = (std::uint64_t{1} << (p - 1)) * R;
    if (P > cap) throw CapacityError("perfect_condition: P = " + std::to_string(P) + " exceeds the cap");
    ArithContext ctx(P);
    PerfectReport r;
    r.p = p;
    r.P = P;
    const Rational sigma = sigma_exact(1, P, ctx).total;
    r.sigma_P = sigma.get_num();
    r.is_perfect = r.sigma_P == BigInt{2 * static_cast<unsigned long>(P)};

    const Rational tau = s_hat_0(1, P, ctx);
    const auto iR = static_cast<std::int64_t>(R);
    const std::int64_t half = iR / 2;
    const std::int64_t r_bracket = 2 * half - 2 * ((iR - 1) / 2) - 1;
    const BigInt two_p1 = big_pow(2, static_cast<unsigned long>(p - 1));
    const BigInt two_p2 = big_pow(2, static_cast<unsigned long>(p - 2));

    Rational odd_sum = 0;     // the s^nu (A + B)(sA - s floor(...) - 1) sum
    Rational nu_weights = 0;  // sum 3(s-1)/(2s) nu_s(R)
    for (std::uint64_t s : ctx.primes.primes_in(3, P)) {
        const int v = valuation(s, R);
        std::uint64_t sv = 1;
        for (int i = 0; i < v; ++i) sv *= s;
        const BigInt Rs{static_cast<unsigned long>(R / sv)};
        const BigInt bs{static_cast<unsigned long>(s)};
        auto fl = [](const BigInt& a, const BigInt& b) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            return q;
        };
        const BigInt A = fl(two_p1 * Rs, bs);
        const BigInt B = fl(two_p2 * Rs, bs);
        const BigInt bracket = bs * A - bs * fl(two_p1 * Rs - 1, bs) - 1;
        odd_sum += Rational{BigInt{static_cast<unsigned long>(sv)} * (A + B) * bracket};
        nu_weights += ratio(static_cast<std::int64_t>(3 * (s - 1)) * v, static_cast<std::int64_t>(2 * s));
    }
    const Rational rP{static_cast<unsigned long>(P)};
    r.sigma_display = ratio(p + 1, 2) * rP + rP / Rational{iR} * Rational{half * r_bracket} + tau +
                      nu_weights * rP + odd_sum;
    r.sigma_display_matches = r.sigma_display == sigma;

    const Rational den = ratio(p - 3, 2) + Rational{half * r_bracket} / Rational{iR} + nu_weights;
    if (den != 0) {
        r.condition_rhs = -(tau + odd_sum) / den;
        r.condition_matches = *r.condition_rhs == rP;
    }
    return r;
}

// ---- Generic Lambert divisor-sum expansion -------------------------------

/// Registered arithmetic functions: "one", "mu", "phi", "n^k" for integer k.
/// mu and phi are computed by trial division so they stay total beyond any table.
inline ArithFn arith_function(const std::string& name) {
    if (name == "one") return [](std::uint64_t) { return Rational{1}; };
    auto factor = [](std::uint64_t n) {
        std::vector<std::pair<std::uint64_t, int>> f;
        for (std::uint64_t q = 2; q * q <= n; ++q)
            if (n % q == 0) {
                int e = 0;
                while (n % q == 0) { n /= q; ++e; }
                f.emplace_back(q, e);
            }
        if (n > 1) f.emplace_back(n, 1);
        return f;
    };
    if (name == "mu")
        return [factor](std::uint64_t n) {
            int mu = 1;
            for (const auto& [q, e] : factor(n)) {
                if (e > 1) return Rational{0};
                mu = -mu;
            }
            return Rational{mu};
        };
    if (name == "phi")
        return [factor](std::uint64_t n) {
            std::uint64_t phi = n;
            for (const auto& [q, e] : factor(n)) phi = phi / q * (q - 1);
            return Rational{static_cast<unsigned long>(phi)};
        };
    if (name.rfind("n^", 0) == 0) {
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(name.substr(2), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != name.size() - 2) throw DomainError("unknown arithmetic function '" + name + "'");
        return [k](std::uint64_t n) { return rational_pow(static_cast<std::int64_t>(n), k); };
    }
    throw DomainError("unknown arithmetic function '" + name + "'");
}

struct LambertGenericResult {
    Rational expansion;
    Rational oracle;
    bool match = false;
    std::array<Rational, 4> parts;  // harmonic, prime-power, twice-prime-power, generic
};

namespace detail {

/// sum_{r=1}^{n} f(m r) / r
inline Rational scaled_harmonic(const ArithFn& f, std::uint64_t m, std::uint64_t n) {
    Rational s = 0;
    for (std::uint64_t r = 1; r <= n; ++r) s += f(m * r) / Rational{static_cast<unsigned long>(r)};
    return s;
}

inline Rational lambert_oracle(const ArithFn& f, std::uint64_t x, const PrimeTable& table) {
    Rational s = 0;
    for (std::uint64_t d : table.divisors(x)) s += f(d);
    return s;
}

inline Rational lambert_harmonic_and_generic(const ArithFn& f, std::uint64_t x, const PrimeTable& table,
                                             Rational& generic) {
    Rational harmonic = 0;
    for (std::uint64_t k = 1; k <= x; ++k) harmonic += f(k) / Rational{static_cast<unsigned long>(k)};
    generic = 0;
    for (std::uint64_t d = 2; d <= x; ++d) {
        if (!chi_generic(d, table)) continue;
        const std::int64_t c = ramanujan_sum_closed_form(d, x, table);
        if (c != 0)
            generic += ratio(c, static_cast<std::int64_t>(d)) * scaled_harmonic(f, d, x / d);
    }
    return harmonic;
}

}  // namespace detail

/// The four-part expansion of sum_{d|x} f(d) exactly as displayed: unweighted
/// prime-power part, sign (-1)^floor(2p/p^k) and argument (2p)^k r in the third
/// part over all primes.
inline LambertGenericResult lambert_generic(const ArithFn& f, std::uint64_t x, const PrimeTable& table) {
    if (x == 0) throw DomainError("lambert_generic: x must be >= 1");
    LambertGenericResult out;
    out.oracle = detail::lambert_oracle(f, x, table);
    out.parts[0] = detail::lambert_harmonic_and_generic(f, x, table, out.parts[3]);
    for (std::uint64_t p : table.primes_in(2, x)) {
        const int v = valuation(p, x);
        std::uint64_t pk = 1;
        std::uint64_t two_p_k = 1;
        for (int k = 1; k <= v + 1; ++k) {
            pk *= p;
            two_p_k *= 2 * p;
            out.parts[1] += detail::scaled_harmonic(f, pk, x / pk);
            const Rational sign{((2 * p) / pk) % 2 == 0 ? 1 : -1};
            out.parts[2] += sign * detail::scaled_harmonic(f, two_p_k, x / (2 * pk));
        }
    }
    out.expansion = out.parts[0] + out.parts[1] + out.parts[2] + out.parts[3];
    out.match = out.expansion == out.oracle;
    return out;
}

/// The expansion with the floor-bracket weights carried over from the
/// sigma_alpha component sums: bracket/p on the prime-power part, and
/// (-1)^floor(x/p^(k-1)) bracket/(2p) with argument 2p^k r over odd p.
inline LambertGenericResult lambert_generic_corrected(const ArithFn& f, std::uint64_t x, const PrimeTable& table) {
    if (x == 0) throw DomainError("lambert_generic: x must be >= 1");
    LambertGenericResult out;
    out.oracle = detail::lambert_oracle(f, x, table);
    out.parts[0] = detail::lambert_harmonic_and_generic(f, x, table, out.parts[3]);
    for (std::uint64_t p : table.primes_in(2, x)) {
        const int v = valuation(p, x);
        std::uint64_t pk1 = 1;
        for (int k = 1; k <= v + 1; ++k, pk1 *= p) {
            const std::uint64_t pk = pk1 * p;
            const Rational bracket{static_cast<long>(detail::prime_power_bracket(p, pk1, x))};
            if (bracket == 0) continue;
            out.parts[1] += bracket / Rational{static_cast<unsigned long>(p)} * detail::scaled_harmonic(f, pk, x / pk);
            if (p > 2) {
                const Rational sign{(x / pk1) % 2 == 0 ? 1 : -1};
                out.parts[2] += sign * bracket / Rational{static_cast<unsigned long>(2 * p)} *
                                detail::scaled_harmonic(f, 2 * pk, x / (2 * pk));
            }
        }
    }
    out.expansion = out.parts[0] + out.parts[1] + out.parts[2] + out.parts[3];
    out.match = out.expansion == out.oracle;
    return out;
}

}  // namespace divsigma

#endif  // DIVSIGMA_APPLICATIONS_HPP
