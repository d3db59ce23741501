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

#include <random>
#include <thread>

#include <boost/multiprecision/mpfr.hpp>
#include <gtest/gtest.h>

#include <divsigma/arith_core.hpp>

using namespace divsigma;

namespace {

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int naive_mobius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    return n > 1 ? -mu : mu;
}

std::uint64_t naive_totient(std::uint64_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

}  // namespace

TEST(ArithCore, SievePrimesExamples) {
    EXPECT_EQ(sieve_primes(10).primes(), (std::vector<std::uint64_t>{2, 3, 5, 7}));
    EXPECT_EQ(sieve_primes(2).primes(), (std::vector<std::uint64_t>{2}));
    const auto hundred = sieve_primes(100).primes();
    EXPECT_EQ(hundred.size(), 25u);
    for (auto p : hundred) EXPECT_TRUE(trial_prime(p)) << p;
    EXPECT_THROW(sieve_primes(1), DomainError);
}

TEST(ArithCore, SieveMatchesTrialDivision) {
    const PrimeTable t(20000);
    std::size_t count = 0;
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        const bool prime = trial_prime(n);
        count += prime;
        ASSERT_EQ(t.contains_prime(n), prime) << n;
        ASSERT_EQ(is_prime(n), prime) << n;
    }
    EXPECT_EQ(t.primes().size(), count);
}

TEST(ArithCore, FactorizeExamples) {
    const PrimeTable t(10000);
    EXPECT_EQ(factorize(12, t).factors, (std::vector<PrimePower>{{2, 2}, {3, 1}}));
    EXPECT_TRUE(factorize(1, t).factors.empty());
    EXPECT_EQ(factorize(9973, t).factors, (std::vector<PrimePower>{{9973, 1}}));
    EXPECT_TRUE(trial_prime(9973));
    EXPECT_THROW(factorize(10001, t), CapacityError);
}

TEST(ArithCore, FactorizeReassemblesEverywhere) {
    const PrimeTable t(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const Factorization f = t.factorize(n);
        ASSERT_EQ(f.reassemble(), n);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            ASSERT_TRUE(trial_prime(f.factors[i].prime));
            if (i) ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
        }
    }
}

TEST(ArithCore, NuExamples) {
    EXPECT_EQ(nu(2, 12), 2);
    EXPECT_EQ(nu(5, 12), 0);
    EXPECT_EQ(nu(3, 81), 4);
    EXPECT_THROW(nu(4, 12), DomainError);
}

TEST(ArithCore, MobiusTotientExamples) {
    const PrimeTable t(100);
    EXPECT_EQ(mobius(6, t), 1);
    EXPECT_EQ(mobius(12, t), 0);
    EXPECT_EQ(mobius(30, t), -1);
    EXPECT_EQ(totient(12, t), 4u);
    int sum = 0;
    for (auto d : t.divisors(12)) sum += mobius(d, t);
    EXPECT_EQ(sum, 0);
}

TEST(ArithCore, MobiusTotientMatchNaive) {
    const PrimeTable t(5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        ASSERT_EQ(t.mobius(n), naive_mobius(n)) << n;
        ASSERT_EQ(t.totient(n), naive_totient(n)) << n;
    }
}

TEST(ArithCore, DivisorsMatchTrialDivision) {
    const PrimeTable t(3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        std::vector<std::uint64_t> naive;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) naive.push_back(d);
        ASSERT_EQ(t.divisors(n), naive) << n;
    }
}

TEST(ArithCore, HarmonicExamples) {
    EXPECT_EQ(harmonic(3, 1), ratio(11, 6));
    EXPECT_EQ(harmonic(4, 2), ratio(205, 144));
    EXPECT_EQ(harmonic(3, -2), Rational{14});
    EXPECT_EQ(harmonic(0, 3), Rational{0});
}

TEST(ArithCore, HarmonicDifferenceProperty) {
    for (int r = -3; r <= 3; ++r) {
        HarmonicCache cache(r);
        for (std::uint64_t n = 1; n <= 10000; ++n)
            ASSERT_EQ(cache.get(n) - cache.get(n - 1), rational_pow(static_cast<std::int64_t>(n), -r)) << n << ' ' << r;
    }
}

TEST(ArithCore, HarmonicCacheBeyondCap) {
    HarmonicCache small(2, 10);
    EXPECT_EQ(small.get(25), harmonic(25, 2));
    EXPECT_EQ(small.size(), 10u);
    EXPECT_THROW(small.ref(25), CapacityError);
}

TEST(ArithCore, HarmonicCacheConcurrentReaders) {
    const ArithContext ctx(100);
    std::vector<std::thread> pool;
    std::vector<Rational> seen(8);
    for (int w = 0; w < 8; ++w)
        pool.emplace_back([&, w] {
            Rational acc = 0;
            for (std::uint64_t n = 1; n <= 3000; n += 1 + static_cast<std::uint64_t>(w)) acc += ctx.H(n, 1 + w % 3);
            seen[static_cast<std::size_t>(w)] = acc;
        });
    for (auto& t : pool) t.join();
    for (int w = 0; w < 8; ++w) {
        Rational acc = 0;
        for (std::uint64_t n = 1; n <= 3000; n += 1 + static_cast<std::uint64_t>(w)) acc += harmonic(n, 1 + w % 3);
        EXPECT_EQ(seen[static_cast<std::size_t>(w)], acc);
    }
}

TEST(ArithCore, BernoulliValues) {
    EXPECT_EQ(bernoulli(0), Rational{1});
    EXPECT_EQ(bernoulli(1), ratio(1, 2));
    EXPECT_EQ(bernoulli(2), ratio(1, 6));
    EXPECT_EQ(bernoulli(3), Rational{0});
    EXPECT_EQ(bernoulli(12), ratio(-691, 2730));
    // Defining recurrence with B1 = +1/2: sum_{k<=m} C(m+1,k) B_k = m+1.
    for (unsigned m = 1; m <= 30; ++m) {
        Rational s = 0;
        for (unsigned k = 0; k <= m; ++k) s += Rational{binomial(m + 1, k)} * bernoulli(k);
        ASSERT_EQ(s, Rational{m + 1}) << m;
    }
}

TEST(ArithCore, EulerNumbers) {
    EXPECT_EQ(euler_number(0), 1);
    EXPECT_EQ(euler_number(2), -1);
    EXPECT_EQ(euler_number(4), 5);
    EXPECT_EQ(euler_number(3), 0);
    EXPECT_EQ(euler_number(10), -50521);
    // sum_{k} C(2n, 2k) E_{2k} = 0 for n >= 1.
    for (unsigned n = 1; n <= 15; ++n) {
        BigInt s = 0;
        for (unsigned k = 0; k <= n; ++k) s += binomial(2 * n, 2 * k) * euler_number(2 * k);
        ASSERT_EQ(s, 0) << n;
    }
}

TEST(ArithCore, FaulhaberExamples) {
    EXPECT_EQ(faulhaber(2, 1), Rational{3});
    EXPECT_EQ(faulhaber(10, 2), Rational{385});
    EXPECT_EQ(faulhaber(0, 5), Rational{0});
}

TEST(ArithCore, FaulhaberMatchesDirectPowerSums) {
    for (std::uint64_t n = 0; n <= 200; ++n)
        for (unsigned a = 0; a <= 8; ++a) ASSERT_EQ(faulhaber(n, a), harmonic(n, -static_cast<int>(a))) << n << ' ' << a;
}

TEST(ArithCore, RatioIsCanonical) {
    EXPECT_EQ(ratio(4, 6), ratio(2, 3));
    EXPECT_EQ(ratio(3, -6).get_num(), -1);
    EXPECT_EQ(ratio(3, -6).get_den(), 2);
    EXPECT_THROW(ratio(1, 0), DomainError);
}

TEST(ArithCore, ConstantsMatchMpfr) {
    using boost::multiprecision::abs;
    const Real pi = boost::multiprecision::mpfr_float_50(boost::math::constants::pi<boost::multiprecision::mpfr_float_50>());
    const Real gamma = boost::math::constants::euler<boost::multiprecision::mpfr_float_50>();
    EXPECT_LT(abs(pi_constant() - pi), Real{"1e-48"});
    EXPECT_LT(abs(euler_gamma_constant() - gamma), Real{"1e-48"});
}

TEST(ArithCore, ZetaExamples) {
    using boost::multiprecision::abs;
    const BoundedReal z2 = zeta_value(2, 30);
    const Real pi = pi_constant();
    EXPECT_LE(abs(z2.value - pi * pi / 6), z2.radius);
    EXPECT_LE(z2.radius, Real{"1e-30"});
    const BoundedReal z3 = zeta_value(3, 30);
    EXPECT_LT(abs(z3.value - Real{"1.2020569031595942853997381615114499907649862923405"}), Real{"1e-30"});
    const BoundedReal coarse = zeta_value(2, 3);
    EXPECT_LE(coarse.radius, Real{"1e-3"});
    const BoundedReal z4 = zeta_value(4, 40);
    EXPECT_LE(abs(z4.value - pi * pi * pi * pi / 90), z4.radius);
    EXPECT_THROW(zeta_value(1, 10), DomainError);
    EXPECT_THROW(zeta_value(2, 49), PrecisionError);
}

TEST(ArithCore, ZetaBracketedByPartialSums) {
    for (int s = 2; s <= 8; ++s) {
        const BoundedReal z = zeta_value(s, 40);
        for (std::uint64_t n : {10u, 100u, 1000u}) {
            const Real partial = to_real(harmonic(n, s));
            const Real tail = boost::multiprecision::pow(Real{n}, 1 - s) / (s - 1);
            EXPECT_LE(partial, z.value + z.radius);
            EXPECT_LE(z.value - z.radius, partial + tail);
        }
    }
}

TEST(ArithCore, RandomizedMultiplicativity) {
    // Hand-rolled generator: coprime pairs keep mu and phi multiplicative.
    const PrimeTable t(1'000'000);
    std::mt19937_64 rng(20260415);
    std::uniform_int_distribution<std::uint64_t> pick(1, 1000);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint64_t a = pick(rng), b = pick(rng);
        if (std::gcd(a, b) != 1) continue;
        ASSERT_EQ(t.mobius(a * b), t.mobius(a) * t.mobius(b));
        ASSERT_EQ(t.totient(a * b), t.totient(a) * t.totient(b));
    }
}
