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

#include <map>

#include <gtest/gtest.h>

#include <divsigma/cyclotomic.hpp>

using namespace divsigma;

namespace {

const PrimeTable& table() {
    static const PrimeTable t(1000);
    return t;
}

RatFunc frac(IntPoly num, IntPoly den) { return RatFunc(std::move(num), std::move(den)); }

// Dense series of a rational function by naive long division, independent of
// series_coefficients' recurrence.
std::vector<Rational> naive_series(const IntPoly& num, const IntPoly& den, std::size_t order) {
    std::vector<Rational> rem(order + 1, Rational{0});
    for (std::size_t i = 0; i <= order; ++i) rem[i] = Rational{num[i]};
    std::vector<Rational> out(order + 1);
    const Rational d0{den[0]};
    for (std::size_t k = 0; k <= order; ++k) {
        out[k] = rem[k] / d0;
        for (std::size_t j = 0; j + k <= order && j <= static_cast<std::size_t>(den.degree()); ++j)
            rem[k + j] -= out[k] * Rational{den[j]};
    }
    return out;
}

}  // namespace

TEST(Cyclotomic, PolynomialExamples) {
    EXPECT_EQ(cyclotomic_poly(1, table()), (IntPoly{-1, 1}));
    EXPECT_EQ(cyclotomic_poly(6, table()), (IntPoly{1, -1, 1}));
    EXPECT_EQ(cyclotomic_poly(15, table()), (IntPoly{1, -1, 0, 1, -1, 1, 0, -1, 1}));
    EXPECT_EQ(cyclotomic_poly(16, table()), (IntPoly{1, 0, 0, 0, 0, 0, 0, 0, 1}));
    // Phi_6 = (q^6-1)(q-1) / ((q^2-1)(q^3-1)) by exact division.
    const IntPoly num = IntPoly::q_power_minus_one(6) * IntPoly::q_power_minus_one(1);
    const IntPoly den = IntPoly::q_power_minus_one(2) * IntPoly::q_power_minus_one(3);
    EXPECT_EQ(num.divide_exact(den), cyclotomic_poly(6, table()));
}

TEST(Cyclotomic, ProductOverDivisorsIsQnMinusOne) {
    for (std::uint64_t n = 1; n <= 200; ++n) {
        IntPoly prod{1};
        for (auto d : table().divisors(n)) prod = prod * cyclotomic_poly(d, table());
        ASSERT_EQ(prod, IntPoly::q_power_minus_one(n)) << n;
    }
}

TEST(Cyclotomic, DegreeIsTotient) {
    for (std::uint64_t n = 1; n <= 500; ++n)
        ASSERT_EQ(static_cast<std::uint64_t>(cyclotomic_poly(n, table()).degree()), table().totient(n)) << n;
}

TEST(Cyclotomic, ReduceIndexExamples) {
    EXPECT_EQ(reduce_index(12, table()), (IndexReduction{6, 2, false}));
    EXPECT_EQ(apply_reduction(reduce_index(12, table()), table()), (IntPoly{1, 0, -1, 0, 1}));
    EXPECT_EQ(reduce_index(10, table()), (IndexReduction{5, 1, true}));
    EXPECT_EQ(apply_reduction(reduce_index(16, table()), table()), (IntPoly{1, 0, 0, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(reduce_index(15, table()), (IndexReduction{15, 1, false}));
}

TEST(Cyclotomic, ReduceIndexRoundTrip) {
    for (std::uint64_t n = 2; n <= 500; ++n)
        ASSERT_EQ(apply_reduction(reduce_index(n, table()), table()), cyclotomic_poly(n, table())) << n;
}

TEST(Cyclotomic, PhiTildeExamples) {
    EXPECT_EQ(phi_tilde(2, table()), frac({1}, {1, 1}));
    EXPECT_EQ(phi_tilde(3, table()), frac({2, 1}, {1, 1, 1}));
    EXPECT_EQ(phi_tilde(15, table()), frac({8, -7, 0, 5, -4, 3, 0, -1}, {1, -1, 0, 1, -1, 1, 0, -1, 1}));
    EXPECT_THROW(phi_tilde(1, table()), DomainError);
}

TEST(Cyclotomic, WorkedExampleCoefficientwise) {
    const RatFunc f = phi_tilde(15, table());
    EXPECT_EQ(f.numerator().coefficients(),
              (IntPoly{8, -7, 0, 5, -4, 3, 0, -1}).coefficients());
    EXPECT_EQ(f.denominator().coefficients(), (IntPoly{1, -1, 0, 1, -1, 1, 0, -1, 1}).coefficients());
}

TEST(Cyclotomic, WorkedExampleIntermediateSigns) {
    const RatFunc f = phi_tilde(15, table());
    // Intermediate partial-fraction line as printed: 3/(1-q^3) + 5/(1-q^5) - 1/(1-q) - 15/(1-q^15).
    const RatFunc partial = BigInt{3} * frac({1}, IntPoly::one_minus_q_power(3)) +
                            BigInt{5} * frac({1}, IntPoly::one_minus_q_power(5)) -
                            frac({1}, IntPoly::one_minus_q_power(1)) -
                            BigInt{15} * frac({1}, IntPoly::one_minus_q_power(15));
    EXPECT_FALSE(partial == f);
    EXPECT_EQ(BigInt{-1} * partial, f);
}

TEST(Cyclotomic, PhiTildeMatchesLogDerivative) {
    for (std::uint64_t n = 2; n <= 100; ++n)
        ASSERT_EQ(phi_tilde(n, table()), phi_tilde_log_derivative(n, table())) << n;
}

TEST(Cyclotomic, PiExamples) {
    EXPECT_EQ(pi_n(2), frac({1}, {1, 1}));
    EXPECT_EQ(pi_n(3), frac({2, 1}, {1, 1, 1}));
    // (4 - 5q + q^5)/(1-q)^2 = 4 + 3q + 2q^2 + q^3
    const IntPoly num = IntPoly{4, -5, 0, 0, 0, 1};
    EXPECT_EQ(num.divide_exact(IntPoly{1, -2, 1}), (IntPoly{4, 3, 2, 1}));
}

TEST(Cyclotomic, PiClosedFormSign) {
    for (std::uint64_t n = 2; n <= 60; ++n) {
        ASSERT_EQ(pi_n_closed_form(n, +1), pi_n(n)) << n;
        ASSERT_FALSE(pi_n_closed_form(n, -1) == pi_n(n)) << n;
    }
}

TEST(Cyclotomic, SeriesExamples) {
    EXPECT_EQ(series_coefficients(frac({1}, {1, -1}), 3), (std::vector<Rational>{1, 1, 1, 1}));
    EXPECT_EQ(series_coefficients(frac({0, 1}, {1, 0, -1}), 4), (std::vector<Rational>{0, 1, 0, 1, 0}));
    EXPECT_EQ(series_coefficients(phi_tilde(2, table()), 3), (std::vector<Rational>{1, -1, 1, -1}));
    EXPECT_THROW(series_coefficients(frac({1}, {0, 1}), 3), PoleAtOriginError);
}

TEST(Cyclotomic, SeriesMatchesLongDivision) {
    for (std::uint64_t n = 2; n <= 40; ++n) {
        const RatFunc f = phi_tilde(n, table());
        ASSERT_EQ(series_coefficients(f, 80), naive_series(f.numerator(), f.denominator(), 80)) << n;
    }
}

TEST(Cyclotomic, LambertTermCheck) {
    EXPECT_TRUE(lambert_term_check(2, 10, table()).holds);
    EXPECT_TRUE(lambert_term_check(12, 24, table()).holds);
    EXPECT_TRUE(lambert_term_check(15, 30, table()).holds);
    for (std::uint64_t n = 2; n <= 64; ++n) ASSERT_TRUE(lambert_term_check(n, 4 * n, table()).holds) << n;
}

TEST(Cyclotomic, RatFuncNormalization) {
    const RatFunc f = frac({2, -2}, {-4, 0, 4});  // (2-2q)/(4q^2-4) = -1/(2(1+q))
    EXPECT_EQ(f, frac({-1}, {2, 2}));
    EXPECT_GT(f.denominator().leading(), 0);
    EXPECT_THROW(frac({1}, IntPoly{}), DomainError);
}

// Second column of the Lambert-term table, one fraction per divisor d > 1.
TEST(Cyclotomic, Table1PrintedFractions) {
    const std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, RatFunc>>> printed{
        {2, {{2, frac({1}, {1, 1})}}},
        {3, {{3, frac({2, 1}, {1, 1, 1})}}},
        {4, {{2, frac({1}, {1, 1})}, {4, frac({2}, {1, 0, 1})}}},
        {5, {{5, frac({4, 3, 2, 1}, {1, 1, 1, 1, 1})}}},
        {6, {{2, frac({1}, {1, 1})}, {6, frac({2, -1}, {1, -1, 1})}, {3, frac({2, 1}, {1, 1, 1})}}},
        {7, {{7, frac({6, 5, 4, 3, 2, 1}, {1, 1, 1, 1, 1, 1, 1})}}},
        {8, {{2, frac({1}, {1, 1})}, {4, frac({2}, {1, 0, 1})}, {8, frac({4}, {1, 0, 0, 0, 1})}}},
        {9, {{3, frac({2, 1}, {1, 1, 1})}, {9, BigInt{3} * frac({2, 0, 0, 1}, {1, 0, 0, 1, 0, 0, 1})}}},
        {10, {{2, frac({1}, {1, 1})}, {10, frac({4, -3, 2, -1}, {1, -1, 1, -1, 1})}, {5, frac({4, 3, 2, 1}, {1, 1, 1, 1, 1})}}},
        {11, {{11, frac({10, 9, 8, 7, 6, 5, 4, 3, 2, 1}, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1})}}},
        {12, {{2, frac({1}, {1, 1})}, {4, frac({2}, {1, 0, 1})}, {6, frac({2, -1}, {1, -1, 1})},
              {3, frac({2, 1}, {1, 1, 1})}, {12, BigInt{-2} * frac({-2, 0, 1}, {1, 0, -1, 0, 1})}}},
        {13, {{13, frac({12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1}, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1})}}},
        {14, {{2, frac({1}, {1, 1})}, {14, frac({6, -5, 4, -3, 2, -1}, {1, -1, 1, -1, 1, -1, 1})},
              {7, frac({6, 5, 4, 3, 2, 1}, {1, 1, 1, 1, 1, 1, 1})}}},
        {15, {{3, frac({2, 1}, {1, 1, 1})}, {5, frac({4, 3, 2, 1}, {1, 1, 1, 1, 1})},
              {15, frac({8, -7, 0, 5, -4, 3, 0, -1}, {1, -1, 0, 1, -1, 1, 0, -1, 1})}}},
        {16, {{2, frac({1}, {1, 1})}, {4, frac({2}, {1, 0, 1})}, {8, frac({4}, {1, 0, 0, 0, 1})},
              {16, frac({8}, {1, 0, 0, 0, 0, 0, 0, 0, 1})}}},
    };
    for (const auto& [n, parts] : printed) {
        const Table1Row row = table1_row(n, table());
        RatFunc sum;
        for (const auto& [d, f] : parts) {
            EXPECT_EQ(phi_tilde(d, table()), f) << "n=" << n << " d=" << d;
            sum = sum + f;
        }
        EXPECT_EQ(sum, row.lambert_term) << n;
        EXPECT_TRUE(row.identity_holds) << n;
    }
}

TEST(Cyclotomic, Table1ReducedColumn) {
    using Terms = std::vector<Table1Term>;
    EXPECT_EQ(table1_row(4, table()).terms, (Terms{{2, 2, 1}, {4, 2, 2}}));
    EXPECT_EQ(table1_row(8, table()).terms, (Terms{{2, 2, 1}, {4, 2, 2}, {8, 2, 4}}));
    EXPECT_EQ(table1_row(16, table()).terms, (Terms{{2, 2, 1}, {4, 2, 2}, {8, 2, 4}, {16, 2, 8}}));
    EXPECT_EQ(table1_row(9, table()).terms, (Terms{{3, 3, 1}, {9, 3, 3}}));
    EXPECT_EQ(table1_row(12, table()).terms, (Terms{{2, 2, 1}, {3, 3, 1}, {4, 2, 2}, {6, 6, 1}, {12, 6, 2}}));

    // Row 9 as printed uses q^2 in the second summand; only q^3 reproduces the row.
    const RatFunc printed9 = phi_tilde(3, table()) + BigInt{3} * phi_tilde(3, table()).substitute(2);
    const RatFunc tested9 = phi_tilde(3, table()) + BigInt{3} * phi_tilde(3, table()).substitute(3);
    EXPECT_FALSE(printed9 == table1_row(9, table()).lambert_term);
    EXPECT_EQ(tested9, table1_row(9, table()).lambert_term);

    // Row 12 as printed ends in 2 PhiTilde_6(q); the reduction of d = 12 is 2 PhiTilde_6(q^2).
    const RatFunc base12 = phi_tilde(2, table()) + BigInt{2} * phi_tilde(2, table()).substitute(2) +
                           phi_tilde(3, table()) + phi_tilde(6, table());
    EXPECT_FALSE(base12 + BigInt{2} * phi_tilde(6, table()) == table1_row(12, table()).lambert_term);
    EXPECT_EQ(base12 + BigInt{2} * phi_tilde(6, table()).substitute(2), table1_row(12, table()).lambert_term);

    for (std::uint64_t n = 2; n <= 16; ++n) EXPECT_TRUE(table1_row(n, table()).reduced_holds) << n;
    EXPECT_THROW(table1_row(17, table()), DomainError);
}
