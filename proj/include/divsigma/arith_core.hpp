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

#ifndef DIVSIGMA_ARITH_CORE_HPP
#define DIVSIGMA_ARITH_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

namespace divsigma {

using BigInt = mpz_class;
using Rational = mpq_class;  // always canonical: den > 0, gcd(num, den) = 1
using Real = boost::multiprecision::mpfr_float_50;

// Error kinds surfaced by the library. The CLI maps all of them to a nonzero
// exit status.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A high-precision value together with a rigorous error radius.
struct BoundedReal {
    Real value;
    Real radius;
};

namespace detail {

inline Rational canonical(Rational q) {
    q.canonicalize();
    return q;
}

}  // namespace detail

/// num / den in lowest terms.
inline Rational ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("ratio: zero denominator");
    return detail::canonical(Rational{BigInt{static_cast<long>(num)}, BigInt{static_cast<long>(den)}});
}

inline BigInt big_pow(std::int64_t base, unsigned long exponent) {
    BigInt result;
    BigInt b{static_cast<long>(base)};
    mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
    return result;
}

/// base^exponent as an exact rational; negative exponents give 1/base^|e|.
inline Rational rational_pow(std::int64_t base, int exponent) {
    if (exponent >= 0) return Rational{big_pow(base, static_cast<unsigned long>(exponent))};
    if (base == 0) throw DomainError("rational_pow: zero to a negative power");
    return detail::canonical(Rational{BigInt{1}, big_pow(base, static_cast<unsigned long>(-exponent))});
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

/// Floor division for signed integers.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Canonical "p/q" or "p" rendering used by every serializer.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Real to_real(const BigInt& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

// 60-digit decimal expansions (OEIS A000796 and A001620). They only enter
// asymptotic comparisons.
inline Real pi_constant() {
    return Real{"3.14159265358979323846264338327950288419716939937510582097494459"};
}
inline Real euler_gamma_constant() {
    return Real{"0.577215664901532860606512090082402431042159335939923598805767235"};
}

/// Deterministic trial-division primality test (desk-scale inputs).
constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t f = 5; f * f <= n; f += 6) {
        if (n % f == 0 || n % (f + 2) == 0) return false;
    }
    return true;
}

/// Unchecked p-adic valuation; callers guarantee p >= 2.
constexpr int valuation(std::uint64_t p, std::uint64_t n) {
    int v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// nu_p(n): exponent of the prime p in n.
inline int nu(std::uint64_t p, std::uint64_t n) {
    if (!is_prime(p)) throw DomainError("nu: " + std::to_string(p) + " is not prime");
    if (n == 0) throw DomainError("nu: n must be positive");
    return valuation(p, n);
}

struct PrimePower {
    std::uint64_t prime;
    int exponent;

    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;  // strictly increasing primes

    std::uint64_t reassemble() const {
        std::uint64_t m = 1;
        for (const auto& f : factors)
            for (int i = 0; i < f.exponent; ++i) m *= f.prime;
        return m;
    }

    int nu(std::uint64_t p) const {
        for (const auto& f : factors)
            if (f.prime == p) return f.exponent;
        return 0;
    }

    bool squarefree() const {
        return std::all_of(factors.begin(), factors.end(),
                           [](const PrimePower& f) { return f.exponent == 1; });
    }

    std::uint64_t radical() const {
        std::uint64_t r = 1;
        for (const auto& f : factors) r *= f.prime;
        return r;
    }
};

/// Primes, smallest prime factors, Mobius and totient values on [1, limit],
/// built once by a linear sieve and immutable afterwards.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit) : limit_(limit) {
        if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
        spf_.assign(limit + 1, 0);
        mu_.assign(limit + 1, 0);
        phi_.assign(limit + 1, 0);
        mu_[1] = 1;
        phi_[1] = 1;
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes_.push_back(i);
                mu_[i] = -1;
                phi_[i] = i - 1;
            }
            for (std::uint64_t p : primes_) {
                if (p > spf_[i] || i * p > limit) break;
                spf_[i * p] = static_cast<std::uint32_t>(p);
                if (p == spf_[i]) {
                    mu_[i * p] = 0;
                    phi_[i * p] = phi_[i] * p;
                } else {
                    mu_[i * p] = static_cast<std::int8_t>(-mu_[i]);
                    phi_[i * p] = phi_[i] * (p - 1);
                }
            }
        }
    }

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    std::uint64_t smallest_prime_factor(std::uint64_t n) const {
        check(n);
        return spf_[n];
    }

    bool contains_prime(std::uint64_t n) const {
        check(n);
        return n >= 2 && spf_[n] == n;
    }

    int mobius(std::uint64_t n) const {
        check(n);
        return mu_[n];
    }

    std::uint64_t totient(std::uint64_t n) const {
        check(n);
        return phi_[n];
    }

    Factorization factorize(std::uint64_t n) const {
        check(n);
        Factorization f;
        f.n = n;
        while (n > 1) {
            std::uint64_t p = spf_[n];
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.push_back({p, e});
        }
        return f;
    }

    /// Ascending list of the divisors of n.
    std::vector<std::uint64_t> divisors(std::uint64_t n) const {
        std::vector<std::uint64_t> out{1};
        for (const auto& [p, e] : factorize(n).factors) {
            const std::size_t base = out.size();
            std::uint64_t pk = 1;
            for (int i = 1; i <= e; ++i) {
                pk *= p;
                for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Primes in [lo, hi], hi clamped to the table limit.
    std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) const {
        auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
        auto last = std::upper_bound(primes_.begin(), primes_.end(), hi);
        if (first >= last) return {};
        return {first, last};
    }

private:
    void check(std::uint64_t n) const {
        if (n == 0) throw DomainError("prime table: argument must be positive");
        if (n > limit_)
            throw CapacityError("prime table: " + std::to_string(n) + " exceeds limit " +
                                std::to_string(limit_));
    }

    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint64_t> phi_;
};

inline PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

inline Factorization factorize(std::uint64_t n, const PrimeTable& table) { return table.factorize(n); }

/// Mobius function from the factorization (independent of the sieve's mu table).
inline int mobius(std::uint64_t n, const PrimeTable& table) {
    const auto f = table.factorize(n);
    if (!f.squarefree()) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

inline std::uint64_t totient(std::uint64_t n, const PrimeTable& table) {
    std::uint64_t result = n;
    for (const auto& [p, e] : table.factorize(n).factors) result = result / p * (p - 1);
    return result;
}

/// Generalized harmonic number H_n^(r) = sum_{k<=n} k^(-r); r <= 0 gives power sums.
inline Rational harmonic(std::uint64_t n, int r) {
    Rational sum = 0;
    if (r <= 0) {
        BigInt total = 0;
        for (std::uint64_t k = 1; k <= n; ++k) total += big_pow(static_cast<std::int64_t>(k), -r);
        return Rational{total};
    }
    for (std::uint64_t k = 1; k <= n; ++k) sum += rational_pow(static_cast<std::int64_t>(k), -r);
    return sum;
}

/// Incrementally extended table of H_n^(r) for a fixed order r. Readers
/// proceed concurrently; extension takes the writer lock. Entries beyond the
/// cap are computed on demand from the last cached value and not stored.
class HarmonicCache {
public:
    static constexpr std::size_t kDefaultCap = 1'000'000;

    explicit HarmonicCache(int order, std::size_t cap = kDefaultCap) : order_(order), cap_(cap) {
        values_.emplace_back(0);
    }

    int order() const { return order_; }
    std::size_t cap() const { return cap_; }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return values_.size();
    }

    /// H_n^(order). Element references stay valid: std::deque never moves
    /// existing elements on push_back.
    Rational get(std::uint64_t n) const {
        {
            std::shared_lock lock(mutex_);
            if (n < values_.size()) return values_[n];
        }
        std::unique_lock lock(mutex_);
        while (values_.size() <= n && values_.size() < cap_) {
            const auto k = static_cast<std::int64_t>(values_.size());
            values_.push_back(values_.back() + rational_pow(k, -order_));
        }
        if (n < values_.size()) return values_[n];
        Rational h = values_.back();
        for (std::uint64_t k = values_.size(); k <= n; ++k) h += rational_pow(static_cast<std::int64_t>(k), -order_);
        return h;
    }

    const Rational& ref(std::uint64_t n) const {
        if (n >= cap_) throw CapacityError("harmonic cache: index beyond cap");
        get(n);
        std::shared_lock lock(mutex_);
        return values_[n];
    }

private:
    int order_;
    std::size_t cap_;
    mutable std::shared_mutex mutex_;
    mutable std::deque<Rational> values_;
};

/// One HarmonicCache per order, created on first use.
class HarmonicCaches {
public:
    explicit HarmonicCaches(std::size_t cap = HarmonicCache::kDefaultCap) : cap_(cap) {}

    const HarmonicCache& order(int r) const {
        {
            std::shared_lock lock(mutex_);
            auto it = caches_.find(r);
            if (it != caches_.end()) return *it->second;
        }
        std::unique_lock lock(mutex_);
        auto& slot = caches_[r];
        if (!slot) slot = std::make_unique<HarmonicCache>(r, cap_);
        return *slot;
    }

    const Rational& operator()(std::uint64_t n, int r) const { return order(r).ref(n); }

private:
    std::size_t cap_;
    mutable std::shared_mutex mutex_;
    mutable std::map<int, std::unique_ptr<HarmonicCache>> caches_;
};

/// Shared evaluation state: a prime table sized to the sweep maximum and the
/// harmonic caches. Safe to share between threads.
struct ArithContext {
    explicit ArithContext(std::uint64_t limit, std::size_t harmonic_cap = HarmonicCache::kDefaultCap)
        : primes(std::max<std::uint64_t>(limit, 2)), harmonics(harmonic_cap) {}

    PrimeTable primes;
    HarmonicCaches harmonics;

    const Rational& H(std::uint64_t n, int r) const { return harmonics(n, r); }
};

/// Bernoulli numbers with B_1 = +1/2, from sum_{k<=m} C(m+1,k) B_k = m+1.
inline Rational bernoulli(unsigned j) {
    static std::mutex mutex;
    static std::vector<Rational> cache{Rational{1}};
    std::lock_guard lock(mutex);
    while (cache.size() <= j) {
        const unsigned m = static_cast<unsigned>(cache.size());
        Rational acc = 0;
        for (unsigned k = 0; k < m; ++k) acc += Rational{binomial(m + 1, k)} * cache[k];
        Rational b = (Rational{m + 1} - acc) / Rational{binomial(m + 1, m)};
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[j];
}

/// Euler (secant) numbers: E_0 = 1, E_n = -sum_{k<n/2} C(n,2k) E_2k for even n.
inline BigInt euler_number(unsigned k) {
    static std::mutex mutex;
    static std::vector<BigInt> even{BigInt{1}};  // even[i] = E_{2i}
    if (k % 2 == 1) return 0;
    std::lock_guard lock(mutex);
    while (even.size() <= k / 2) {
        const unsigned n = 2 * static_cast<unsigned>(even.size());
        BigInt acc = 0;
        for (unsigned i = 0; 2 * i < n; ++i) acc += binomial(n, 2 * i) * even[i];
        even.push_back(-acc);
    }
    return even[k / 2];
}

/// sum_{m=1}^n m^a through the Bernoulli expansion.
inline Rational faulhaber(std::uint64_t n, unsigned a) {
    Rational acc = 0;
    for (unsigned j = 0; j <= a; ++j)
        acc += Rational{binomial(a + 1, j)} * bernoulli(j) *
               Rational{big_pow(static_cast<std::int64_t>(n), a + 1 - j)};
    acc /= Rational{a + 1};
    acc.canonicalize();
    return acc;
}

/// zeta(s) for integer s >= 2: H_N^(s) plus an Euler-Maclaurin tail with the
/// remainder bound |R_M| <= 4 (s)_2M / (2 pi)^2M * N^(1-s-2M) / (s+2M-1).
inline BoundedReal zeta_value(int s, int target_digits) {
    if (s < 2) throw DomainError("zeta_value: s must be >= 2");
    constexpr int kWorkingDigits = 50;
    constexpr int kMaxTerms = 120;
    if (target_digits > kWorkingDigits - 5)
        throw PrecisionError("zeta_value: requested " + std::to_string(target_digits) +
                             " digits exceeds the working precision");
    const Real target = boost::multiprecision::pow(Real{10}, -std::max(target_digits, 0));
    const Real rounding = boost::multiprecision::pow(Real{10}, -(kWorkingDigits - 3));
    const std::int64_t N = 32;
    const Real n{N};
    const Real two_pi = 2 * pi_constant();
    const Real sr{s};

    Real sum = 0;
    for (std::int64_t k = 1; k <= N; ++k) sum += boost::multiprecision::pow(Real{k}, -s);
    sum += boost::multiprecision::pow(n, 1 - s) / (sr - 1) - boost::multiprecision::pow(n, -s) / 2;

    Real rising = sr;  // (s)_{2k-1}
    Real factorial = 2;  // (2k)!
    for (int k = 1; k <= kMaxTerms; ++k) {
        sum += to_real(bernoulli(2 * k)) / factorial * rising * boost::multiprecision::pow(n, -s - 2 * k + 1);
        const Real rising_2k = rising * (sr + 2 * k - 1);
        const Real bound = 4 * rising_2k / boost::multiprecision::pow(two_pi, 2 * k) *
                           boost::multiprecision::pow(n, 1 - s - 2 * k) / (sr + 2 * k - 1);
        if (bound + rounding <= target) return {sum, bound + rounding};
        rising = rising_2k * (sr + 2 * k);
        factorial *= Real{(2 * k + 1) * (2 * k + 2)};
    }
    throw PrecisionError("zeta_value: precision not reached within term cap");
}

}  // namespace divsigma

#endif  // DIVSIGMA_ARITH_CORE_HPP
