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

#ifndef DIVSIGMA_RAMANUJAN_HPP
#define DIVSIGMA_RAMANUJAN_HPP

#include <cstdint>
#include <numeric>
#include <string_view>

#include "arith_core.hpp"

namespace divsigma {

/// Ramanujan sum c_q(n) = sum_{d | gcd(q,n)} d mu(q/d).
inline std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t n, const PrimeTable& table) {
    if (q == 0 || n == 0) throw DomainError("ramanujan_sum: arguments must be positive");
    const std::uint64_t g = std::gcd(q, n);
    std::int64_t total = 0;
    for (std::uint64_t d : table.divisors(g)) total += static_cast<std::int64_t>(d) * table.mobius(q / d);
    return total;
}

/// c_q(n) = mu(q/g) phi(q) / phi(q/g), g = gcd(q, n).
inline std::int64_t ramanujan_sum_closed_form(std::uint64_t q, std::uint64_t n, const PrimeTable& table) {
    if (q == 0 || n == 0) throw DomainError("ramanujan_sum: arguments must be positive");
    const std::uint64_t g = std::gcd(q, n);
    const std::uint64_t r = q / g;
    return static_cast<std::int64_t>(table.mobius(r)) *
           static_cast<std::int64_t>(table.totient(q) / table.totient(r));
}

/// Real part of sum over k coprime to q of exp(2 pi i k n / q), in 50-digit
/// arithmetic. Returns the raw (unrounded) value.
inline Real ramanujan_sum_exponential(std::uint64_t q, std::uint64_t n) {
    if (q == 0 || n == 0) throw DomainError("ramanujan_sum: arguments must be positive");
    const Real step = 2 * pi_constant() / Real{q};
    Real total = 0;
    for (std::uint64_t k = 1; k <= q; ++k) {
        if (std::gcd(k, q) != 1) continue;
        total += boost::multiprecision::cos(step * Real{(k * n) % q});
    }
    return total;
}

/// c_{p^k}(n): 0 if p^(k-1) does not divide n, -p^(k-1) if p^(k-1) | n but
/// p^k does not, and phi(p^k) if p^k | n.
inline std::int64_t ramanujan_prime_power(std::uint64_t p, int k, std::uint64_t n) {
    if (!is_prime(p)) throw DomainError("ramanujan_prime_power: p must be prime");
    if (k < 1 || n == 0) throw DomainError("ramanujan_prime_power: need k >= 1, n >= 1");
    std::uint64_t pk1 = 1;
    for (int i = 1; i < k; ++i) pk1 *= p;
    const std::uint64_t pk = pk1 * p;
    if (n % pk1 != 0) return 0;
    if (n % pk != 0) return -static_cast<std::int64_t>(pk1);
    return static_cast<std::int64_t>(pk - pk1);
}

/// True iff |c_q(n)| <= gcd(q, n) on [1, q_max] x [1, n_max].
inline bool ramanujan_bound_check(std::uint64_t q_max, std::uint64_t n_max, const PrimeTable& table) {
    for (std::uint64_t q = 1; q <= q_max; ++q)
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            const std::int64_t c = ramanujan_sum(q, n, table);
            if (static_cast<std::uint64_t>(c < 0 ? -c : c) > std::gcd(q, n)) return false;
        }
    return true;
}

enum class IndexClass { Unit, PrimePower, TwiceOddPrimePower, Generic };

inline std::string_view to_string(IndexClass c) {
    switch (c) {
        case IndexClass::Unit: return "UNIT";
        case IndexClass::PrimePower: return "PRIME_POWER";
        case IndexClass::TwiceOddPrimePower: return "TWICE_ODD_PRIME_POWER";
        case IndexClass::Generic: return "GENERIC";
    }
    return "?";
}

/// 1, p^k, 2p^k (p odd) or everything else. 2 * 2^k is already a prime power.
inline IndexClass classify_index(std::uint64_t d, const PrimeTable& table) {
    if (d == 0) throw DomainError("classify_index: d must be positive");
    if (d == 1) return IndexClass::Unit;
    auto strip = [&](std::uint64_t n) {
        const std::uint64_t p = table.smallest_prime_factor(n);
        while (n % p == 0) n /= p;
        return n;
    };
    const std::uint64_t rest = strip(d);
    if (rest == 1) return IndexClass::PrimePower;
    if (d / rest == 2 && strip(rest) == 1) return IndexClass::TwiceOddPrimePower;
    return IndexClass::Generic;
}

/// Indicator of the generic indices; zero at d = 1.
inline bool chi_generic(std::uint64_t d, const PrimeTable& table) {
    return classify_index(d, table) == IndexClass::Generic;
}

}  // namespace divsigma

#endif  // DIVSIGMA_RAMANUJAN_HPP
