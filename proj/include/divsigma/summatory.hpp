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

#ifndef DIVSIGMA_SUMMATORY_HPP
#define DIVSIGMA_SUMMATORY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith_core.hpp"

namespace divsigma {

using ArithFn = std::function<Rational(std::uint64_t)>;

/// sigma_alpha(n) for n in [0, x] (index 0 unused), alpha >= 0, by divisor iteration.
inline std::vector<BigInt> sigma_sieve(int alpha, std::uint64_t x) {
    if (alpha < 0) throw DomainError("sigma_sieve: alpha must be >= 0");
    std::vector<BigInt> s(x + 1, BigInt{0});
    for (std::uint64_t d = 1; d <= x; ++d) {
        const BigInt dp = big_pow(static_cast<std::int64_t>(d), static_cast<unsigned long>(alpha));
        for (std::uint64_t m = d; m <= x; m += d) s[m] += dp;
    }
    return s;
}

namespace detail {

struct Fraction {
    BigInt num;
    BigInt den;
};

/// Exact sum of num[i]/den[i] over [lo, hi) without intermediate gcds.
inline Fraction split_sum(const std::vector<Fraction>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return terms[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    Fraction a = split_sum(terms, lo, mid);
    Fraction b = split_sum(terms, mid, hi);
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

/// Writes sigma_alpha(n) / n^beta as num / n^e, handling negative alpha via
/// sigma_{-a}(n) = sigma_a(n) / n^a.
struct SummandShape {
    std::vector<BigInt> sigma;
    int exponent;  // of n in the denominator; may be negative
};

inline SummandShape summand_shape(int alpha, int beta, std::uint64_t x) {
    if (alpha >= 0) return {sigma_sieve(alpha, x), beta};
    return {sigma_sieve(-alpha, x), beta - alpha};
}

}  // namespace detail

/// Sigma^(alpha,beta)(x) = sum_{n<=x} sigma_alpha(n) / n^beta from a sieve,
/// summed by binary splitting.
inline Rational summatory_direct(int alpha, int beta, std::uint64_t x) {
    if (x == 0) throw DomainError("summatory_direct: x must be >= 1");
    auto shape = detail::summand_shape(alpha, beta, x);
    const int e = shape.exponent;
    std::vector<detail::Fraction> terms;
    terms.reserve(x);
    for (std::uint64_t n = 1; n <= x; ++n) {
        const auto in = static_cast<std::int64_t>(n);
        if (e >= 0)
            terms.push_back({shape.sigma[n], big_pow(in, static_cast<unsigned long>(e))});
        else
            terms.push_back({shape.sigma[n] * big_pow(in, static_cast<unsigned long>(-e)), BigInt{1}});
    }
    const auto f = detail::split_sum(terms, 0, terms.size());
    Rational out{f.num, f.den};
    out.canonicalize();
    return out;
}

/// All prefix values Sigma^(alpha,beta)(n), n = 0..x, in one pass.
inline std::vector<Rational> summatory_prefix(int alpha, int beta, std::uint64_t x) {
    auto shape = detail::summand_shape(alpha, beta, x);
    std::vector<Rational> out(x + 1, Rational{0});
    for (std::uint64_t n = 1; n <= x; ++n)
        out[n] = out[n - 1] + Rational{shape.sigma[n]} * rational_pow(static_cast<std::int64_t>(n), -shape.exponent);
    return out;
}

namespace detail {

/// sum_{d=a}^{b} d^s as a difference of harmonic numbers of order -s.
inline Rational power_run(std::uint64_t a, std::uint64_t b, int s, const ArithContext& ctx) {
    return ctx.H(b, -s) - ctx.H(a - 1, -s);
}

}  // namespace detail

/// sum_{d<=x} d^(alpha-beta) H_{x/d}^(beta), with d grouped into runs of equal x/d.
inline Rational summatory_identity(int alpha, int beta, std::uint64_t x, const ArithContext& ctx) {
    if (x == 0) throw DomainError("summatory_identity: x must be >= 1");
    Rational total = 0;
    for (std::uint64_t d = 1; d <= x;) {
        const std::uint64_t v = x / d;
        const std::uint64_t last = x / v;
        total += detail::power_run(d, last, alpha - beta, ctx) * ctx.H(v, beta);
        d = last + 1;
    }
    return total;
}

/// sum_{d<=x} floor(x/d) d^alpha; the weighted form
/// sum_{m<=x} m^(-beta) sum_{d <= x/m} d^(alpha-beta) is used when beta != 0.
inline Rational summatory_floor(int alpha, std::uint64_t x, const ArithContext& ctx, int beta = 0) {
    if (x == 0) throw DomainError("summatory_floor: x must be >= 1");
    if (beta == 0) {
        if (alpha >= 0) {
            BigInt total = 0;
            for (std::uint64_t d = 1; d <= x; ++d)
                total += BigInt{static_cast<unsigned long>(x / d)} *
                         big_pow(static_cast<std::int64_t>(d), static_cast<unsigned long>(alpha));
            return Rational{total};
        }
        Rational total = 0;
        for (std::uint64_t d = 1; d <= x; ++d)
            total += Rational{static_cast<unsigned long>(x / d)} * rational_pow(static_cast<std::int64_t>(d), alpha);
        return total;
    }
    Rational total = 0;
    for (std::uint64_t m = 1; m <= x;) {
        const std::uint64_t v = x / m;
        const std::uint64_t last = x / v;
        total += detail::power_run(m, last, -beta, ctx) * ctx.H(v, beta - alpha);
        m = last + 1;
    }
    return total;
}

/// floor(log x / log p) in integer arithmetic.
inline unsigned integer_log(std::uint64_t x, std::uint64_t p) {
    unsigned m = 0;
    for (std::uint64_t q = 1; q <= x / p; q *= p) ++m;
    return m;
}

/// The p-ary split: sum_{m=0}^{log_p x} sum_{d=1}^{x/p^m - x/p^(m+1)} w(d + floor(x/p^(m+1)))
/// with w(e) = floor(x/e) e^alpha. For beta != 0 the same block re-indexing is
/// applied to w(e) = e^(alpha-beta) H_{x/e}^(beta).
inline Rational summatory_floor_split(int alpha, std::uint64_t x, std::uint64_t p, const ArithContext& ctx,
                                      int beta = 0) {
    if (x == 0) throw DomainError("summatory_floor_split: x must be >= 1");
    if (p < 2) throw DomainError("summatory_floor_split: p must be >= 2");
    const unsigned top = integer_log(x, p);
    std::uint64_t pm = 1;  // p^m, saturating once past x
    if (beta == 0 && alpha >= 0) {
        BigInt total = 0;
        for (unsigned m = 0; m <= top; ++m) {
            const std::uint64_t hi = x / pm;
            const std::uint64_t shift = pm > x / p ? 0 : x / (pm * p);
            for (std::uint64_t d = 1; d <= hi - shift; ++d) {
                const std::uint64_t e = d + shift;
                total += BigInt{static_cast<unsigned long>(x / e)} *
                         big_pow(static_cast<std::int64_t>(e), static_cast<unsigned long>(alpha));
            }
            pm = pm > x / p ? x + 1 : pm * p;
        }
        return Rational{total};
    }
    Rational total = 0;
    for (unsigned m = 0; m <= top; ++m) {
        const std::uint64_t hi = x / pm;
        const std::uint64_t shift = pm > x / p ? 0 : x / (pm * p);
        // Inside a block e = d + shift runs over (shift, hi]; group equal x/e.
        for (std::uint64_t e = shift + 1; e <= hi;) {
            const std::uint64_t v = x / e;
            const std::uint64_t last = std::min(hi, x / v);
            total += detail::power_run(e, last, alpha - beta, ctx) * ctx.H(v, beta);
            e = last + 1;
        }
        pm = pm > x / p ? x + 1 : pm * p;
    }
    return total;
}

struct ClassicalAsymptotics {
    Real sigma0;   // x log x + (2 gamma - 1) x
    Real sigma01;  // (log x)^2 / 2 + 2 gamma log x
    Real sigma1;   // (pi^2 / 12) x^2
};

inline ClassicalAsymptotics classical_asymptotics(std::uint64_t x) {
    if (x < 2) throw DomainError("classical_asymptotics: x must be >= 2");
    const Real xr{x};
    const Real lx = boost::multiprecision::log(xr);
    const Real g = euler_gamma_constant();
    const Real pi = pi_constant();
    return {xr * lx + (2 * g - 1) * xr, lx * lx / 2 + 2 * g * lx, pi * pi / 12 * xr * xr};
}

// ---- Prime-sum constants -------------------------------------------------

/// Tail bound K * sum_{n>L} n^(-s) <= K L^(1-s) / (s-1), plus a working-precision slack.
inline Real prime_tail_radius(const Real& k, int s, std::uint64_t limit) {
    if (s <= 1) throw DivergenceError("prime_tail_radius: exponent " + std::to_string(s) + " does not converge");
    static const Real slack = boost::multiprecision::pow(Real{10}, -45);
    return k * boost::multiprecision::pow(Real{limit}, 1 - s) / Real{s - 1} + slack;
}

namespace detail {

template <class Term>
BoundedReal prime_sum(std::uint64_t lo, std::uint64_t limit, Term term, const Real& k, int s) {
    if (limit < 100) throw DomainError("prime_limit must be >= 100");
    const Real radius = prime_tail_radius(k, s, limit);
    PrimeTable table(limit);
    Real sum = 0;
    for (std::uint64_t p : table.primes())
        if (p >= lo) sum += term(Real{p});
    return {sum, radius};
}

inline Real ipow(const Real& b, int e) { return boost::multiprecision::pow(b, e); }

/// (p-2)/(p(p-1)(p^(a+1)-1)) * [(p-1)/(p(p^a-1)) - 1/p^a]
inline Real c1_term(const Real& p, int alpha) {
    const Real pa = ipow(p, alpha);
    return (p - 2) / (p * (p - 1) * (pa * p - 1)) * ((p - 1) / (p * (pa - 1)) - 1 / pa);
}

}  // namespace detail

inline BoundedReal constant_c1(int alpha, std::uint64_t limit) {
    if (alpha < 1) throw DivergenceError("C1: alpha must be >= 1");
    return detail::prime_sum(2, limit, [&](const Real& p) { return detail::c1_term(p, alpha); }, Real{2}, 2 * alpha + 3);
}

inline BoundedReal constant_c2(int alpha, int m, std::uint64_t limit) {
    if (alpha < 1) throw DivergenceError("C2: alpha must be >= 1");
    const int s = 2 * alpha + 1 - m;
    if (s <= 1) throw DivergenceError("C2," + std::to_string(m) + ": prime sum diverges for alpha = " + std::to_string(alpha));
    return detail::prime_sum(2, limit, [&](const Real& p) {
        return (p - 1) / (detail::ipow(p, alpha + 2 - m) * (detail::ipow(p, alpha) - 1));
    }, Real{2}, s);
}

inline BoundedReal constant_c3(int alpha, std::uint64_t limit) {
    if (alpha < 1) throw DivergenceError("C3: alpha must be >= 1");
    const Real scale = detail::ipow(Real{2}, -(alpha + 1));
    return detail::prime_sum(3, limit, [&](const Real& p) { return scale * detail::c1_term(p, alpha); },
                             2 * scale, 2 * alpha + 3);
}

inline BoundedReal constant_c4(int alpha, int beta, int m, std::uint64_t limit) {
    if (alpha < 1 || beta < 0 || beta > alpha) throw DomainError("C4: need alpha >= 1, 0 <= beta <= alpha");
    const int s = alpha + beta + m;
    if (s <= 1) throw DivergenceError("C4: prime sum diverges");
    const int ab = alpha - beta;
    Real weight = 0;      // sum_k binom binom (-1)^(k+m) E_k
    Real abs_weight = 0;  // sum_k binom binom |E_k|
    for (int k = 0; k <= ab; ++k) {
        if (ab - k < m) continue;
        const BigInt c = binomial(ab, k) * binomial(ab - k, m) * euler_number(k);
        const Real cr = to_real(c);
        weight += ((k + m) % 2 == 0 ? cr : Real{-cr});
        abs_weight += boost::multiprecision::abs(cr);
    }
    const Real scale = detail::ipow(Real{2}, -(2 * alpha + 2 - beta - m));
    return detail::prime_sum(2, limit, [&](const Real& p) {
        return weight * scale * (p - 1) / (detail::ipow(p, beta + 1 + m) * (detail::ipow(p, alpha) - 1));
    }, 2 * abs_weight * scale, s);
}

inline BoundedReal constant_c5(int alpha, int beta, std::uint64_t limit) {
    if (alpha < 1) throw DivergenceError("C5: alpha must be >= 1");
    if (alpha + beta <= 1) throw DivergenceError("C5: prime sum diverges");
    return detail::prime_sum(2, limit, [&](const Real& p) {
        return (p - 1) / (detail::ipow(p, beta + 1) * (detail::ipow(p, alpha) - 1));
    }, Real{2}, alpha + beta);
}

inline BoundedReal constant_c6(int beta, std::uint64_t limit) {
    if (beta + 2 <= 1) throw DivergenceError("C6: prime sum diverges");
    return detail::prime_sum(2, limit, [&](const Real& p) {
        return (p - 2) / (p * (p - 1) * (detail::ipow(p, beta + 1) - 1));
    }, Real{2}, beta + 2);
}

/// C_{7,m}(alpha) = -sum_p p^-(alpha+1-m); rejected when alpha+1-m <= 1.
inline BoundedReal constant_c7(int alpha, int m, std::uint64_t limit) {
    const int s = alpha + 1 - m;
    if (s <= 1)
        throw DivergenceError("C7," + std::to_string(m) + ": sum of p^-" + std::to_string(s) + " diverges");
    return detail::prime_sum(2, limit, [&](const Real& p) { return -detail::ipow(p, -s); }, Real{1}, s);
}

struct ConstantSet {
    int alpha = 0;
    int beta = 0;
    std::uint64_t prime_limit = 0;
    BoundedReal c1, c3, c5, c6;
    std::map<int, BoundedReal> c2, c4, c7;
    BoundedReal zeta_alpha_plus_1;

    /// Every constant as (name, value) in a fixed order.
    std::vector<std::pair<std::string, BoundedReal>> entries() const {
        std::vector<std::pair<std::string, BoundedReal>> out{{"C1", c1}};
        for (const auto& [m, v] : c2) out.emplace_back("C2," + std::to_string(m), v);
        out.emplace_back("C3", c3);
        for (const auto& [m, v] : c4) out.emplace_back("C4," + std::to_string(m), v);
        out.emplace_back("C5", c5);
        out.emplace_back("C6", c6);
        for (const auto& [m, v] : c7) out.emplace_back("C7," + std::to_string(m), v);
        return out;
    }
};

inline void require_theorem4_domain(int alpha, int beta) {
    if (alpha <= 1 || beta < 2 || beta > alpha)
        throw DomainError("asymptotic constants need integers alpha > 1 and 2 <= beta <= alpha");
}

inline ConstantSet constants(int alpha, int beta, std::uint64_t prime_limit) {
    require_theorem4_domain(alpha, beta);
    if (prime_limit < 100) throw DomainError("constants: prime_limit must be >= 100");
    ConstantSet cs;
    cs.alpha = alpha;
    cs.beta = beta;
    cs.prime_limit = prime_limit;
    cs.c1 = constant_c1(alpha, prime_limit);
    cs.c3 = constant_c3(alpha, prime_limit);
    cs.c5 = constant_c5(alpha, beta, prime_limit);
    cs.c6 = constant_c6(beta, prime_limit);
    for (int m = 0; m <= alpha - beta; ++m) {
        cs.c2[m] = constant_c2(alpha, m, prime_limit);
        cs.c4[m] = constant_c4(alpha, beta, m, prime_limit);
        cs.c7[m] = constant_c7(alpha, m, prime_limit);
    }
    cs.zeta_alpha_plus_1 = zeta_value(alpha + 1, 40);
    return cs;
}

// ---- Asymptotic expansion ------------------------------------------------

struct Theorem4Blocks {
    Real leading;    // zeta x^a / a * (1 - C1 + C2,0 + C3 + C6 + C7,0), a = alpha+1-beta
    Real bernoulli;  // j-sum with (1 + C2,j + C7,j)
    Real c4;         // sum C4,j zeta x^j
    Real euler;      // sum binom C5 (-1)^(alpha-beta-j) E_j / 2^(2 alpha+2-beta)
};

struct Theorem4Report {
    int alpha = 0;
    int beta = 0;
    std::uint64_t x = 0;
    Theorem4Blocks blocks;
    Real classical_leading;  // zeta(alpha+1) x^a / a
    Real prediction;         // sum of all blocks
    Rational exact;
    Real residual;             // exact - prediction
    Real normalized_residual;  // residual / x^a
    Real classical_residual;   // (exact - classical_leading) / x^a
    Real leading_ratio;        // exact / classical_leading
};

inline Theorem4Report theorem4_eval(int alpha, int beta, std::uint64_t x, const ConstantSet& cs, const Rational& exact) {
    require_theorem4_domain(alpha, beta);
    if (cs.alpha != alpha || cs.beta != beta) throw DomainError("theorem4_eval: constant set built for other parameters");
    if (x < 2) throw DomainError("theorem4_eval: x must be >= 2");
    const int a = alpha + 1 - beta;
    const int ab = alpha - beta;
    const Real xr{x};
    const Real zeta = cs.zeta_alpha_plus_1.value;
    auto xp = [&](int e) { return boost::multiprecision::pow(xr, e); };

    Theorem4Report r;
    r.alpha = alpha;
    r.beta = beta;
    r.x = x;
    r.exact = exact;
    r.classical_leading = zeta * xp(a) / a;
    r.blocks.leading = r.classical_leading *
                       (1 - cs.c1.value + cs.c2.at(0).value + cs.c3.value + cs.c6.value + cs.c7.at(0).value);
    r.blocks.bernoulli = 0;
    for (int j = 1; j <= ab; ++j)
        r.blocks.bernoulli += to_real(Rational{binomial(a, j)} * bernoulli(j)) * xp(a - j) / a *
                              (1 + cs.c2.at(j).value + cs.c7.at(j).value);
    r.blocks.c4 = 0;
    for (int j = 0; j <= ab; ++j) r.blocks.c4 += cs.c4.at(j).value * zeta * xp(j);
    r.blocks.euler = 0;
    for (int j = 0; j <= ab; ++j) {
        const Real term = to_real(BigInt{binomial(ab, j) * euler_number(j)}) * cs.c5.value /
                          boost::multiprecision::pow(Real{2}, 2 * alpha + 2 - beta);
        r.blocks.euler += (ab - j) % 2 == 0 ? term : Real{-term};
    }
    r.prediction = r.blocks.leading + r.blocks.bernoulli + r.blocks.c4 + r.blocks.euler;
    const Real ex = to_real(exact);
    r.residual = ex - r.prediction;
    r.normalized_residual = r.residual / xp(a);
    r.classical_residual = (ex - r.classical_leading) / xp(a);
    r.leading_ratio = ex / r.classical_leading;
    return r;
}

inline Theorem4Report theorem4_eval(int alpha, int beta, std::uint64_t x, const ConstantSet& cs) {
    return theorem4_eval(alpha, beta, x, cs, summatory_direct(alpha, beta, x));
}

// ---- Reports -------------------------------------------------------------

/// Main term of Sigma^(alpha,beta)(x); negative alpha is folded into (-alpha, beta-alpha).
inline Real leading_prediction(int alpha, int beta, std::uint64_t x) {
    if (alpha < 0) return leading_prediction(-alpha, beta - alpha, x);
    if (x < 2) return Real{1};
    const Real xr{x};
    const Real lx = boost::multiprecision::log(xr);
    const Real g = euler_gamma_constant();
    if (alpha == 0 && beta == 0) return xr * lx + (2 * g - 1) * xr;
    if (alpha == 0 && beta == 1) return lx * lx / 2 + 2 * g * lx;
    if (alpha == 0) return boost::multiprecision::pow(zeta_value(beta, 40).value, 2);
    const int a = alpha + 1 - beta;
    const Real zeta = zeta_value(alpha + 1, 40).value;
    if (a > 0) return zeta * boost::multiprecision::pow(xr, a) / a;
    if (a == 0) return zeta * lx;
    return zeta_value(beta, 40).value * zeta_value(beta - alpha, 40).value;
}

struct SummatoryReport {
    int alpha = 0;
    int beta = 0;
    std::uint64_t x = 0;
    Rational exact;
    std::map<std::string, Rational> routes;
    Real leading_prediction;
    Real residual;
};

/// Evaluates every exact route; the split routes are skipped above 20000 to
/// keep the report linear-time. Throws if any two routes disagree.
inline SummatoryReport summatory_report(int alpha, int beta, std::uint64_t x, const ArithContext& ctx) {
    if (x == 0) throw DomainError("summatory_report: x must be >= 1");
    SummatoryReport r;
    r.alpha = alpha;
    r.beta = beta;
    r.x = x;
    r.routes["direct"] = summatory_direct(alpha, beta, x);
    r.routes["identity"] = summatory_identity(alpha, beta, x, ctx);
    r.routes["floor"] = summatory_floor(alpha, x, ctx, beta);
    if (x <= 20000)
        for (std::uint64_t p : {2, 3, 5})
            r.routes["floor_split_" + std::to_string(p)] = summatory_floor_split(alpha, x, p, ctx, beta);
    r.exact = r.routes["direct"];
    for (const auto& [name, value] : r.routes)
        if (value != r.exact) throw std::logic_error("summatory_report: route '" + name + "' disagrees with direct sum");
    r.leading_prediction = leading_prediction(alpha, beta, x);
    r.residual = to_real(r.exact) - r.leading_prediction;
    return r;
}

// ---- Divisor-sum interchange identities ----------------------------------

struct DivsumIdentityCheck {
    bool first = false;   // sum_n f(n) sum_{d|n} g(d) h(n/d) = sum_d g(d) sum_{n<=x/d} h(n) f(dn)
    bool second = false;  // sum_d f(d) sum_{r|(d,x)} g(r) h(d/r) = sum_{r|x} g(r) sum_{d<=x/r} h(d) f(rd)
    bool holds() const { return first && second; }
};

inline DivsumIdentityCheck divsum_identity_detail(const ArithFn& f, const ArithFn& g, const ArithFn& h, std::uint64_t x,
                                                  const PrimeTable& table) {
    if (x == 0) throw DomainError("divsum_identity_check: x must be >= 1");
    DivsumIdentityCheck out;
    Rational lhs = 0, rhs = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        Rational inner = 0;
        for (std::uint64_t d : table.divisors(n)) inner += g(d) * h(n / d);
        lhs += f(n) * inner;
    }
    for (std::uint64_t d = 1; d <= x; ++d) {
        Rational inner = 0;
        for (std::uint64_t n = 1; n <= x / d; ++n) inner += h(n) * f(d * n);
        rhs += g(d) * inner;
    }
    out.first = lhs == rhs;

    lhs = 0;
    rhs = 0;
    for (std::uint64_t d = 1; d <= x; ++d) {
        Rational inner = 0;
        for (std::uint64_t r : table.divisors(std::gcd(d, x))) inner += g(r) * h(d / r);
        lhs += f(d) * inner;
    }
    for (std::uint64_t r : table.divisors(x)) {
        Rational inner = 0;
        for (std::uint64_t d = 1; d <= x / r; ++d) inner += h(d) * f(r * d);
        rhs += g(r) * inner;
    }
    out.second = lhs == rhs;
    return out;
}

inline bool divsum_identity_check(const ArithFn& f, const ArithFn& g, const ArithFn& h, std::uint64_t x,
                                  const PrimeTable& table) {
    return divsum_identity_detail(f, g, h, x, table).holds();
}

}  // namespace divsigma

#endif  // DIVSIGMA_SUMMATORY_HPP
