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

#ifndef DIVSIGMA_CYCLOTOMIC_HPP
#define DIVSIGMA_CYCLOTOMIC_HPP

#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arith_core.hpp"

namespace divsigma {

struct PoleAtOriginError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Dense polynomial in q with big-integer coefficients; index = power of q.
/// The stored form never has trailing zeros, so the zero polynomial is empty.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long> coeffs) {
        for (long c : coeffs) c_.emplace_back(c);
        trim();
    }
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly monomial(const BigInt& coeff, std::size_t power) {
        std::vector<BigInt> c(power + 1, BigInt{0});
        c[power] = coeff;
        return IntPoly(std::move(c));
    }

    /// q^n - 1
    static IntPoly q_power_minus_one(std::size_t n) {
        std::vector<BigInt> c(n + 1, BigInt{0});
        c[0] = -1;
        c[n] += 1;
        return IntPoly(std::move(c));
    }

    /// 1 - q^n
    static IntPoly one_minus_q_power(std::size_t n) { return -q_power_minus_one(n); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return c_; }

    BigInt operator[](std::size_t i) const { return i < c_.size() ? c_[i] : BigInt{0}; }
    BigInt leading() const { return is_zero() ? BigInt{0} : c_.back(); }

    bool operator==(const IntPoly& other) const { return c_ == other.c_; }

    IntPoly operator-() const {
        IntPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt{0});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    IntPoly& operator-=(const IntPoly& o) { return *this += -o; }

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt{0});
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const BigInt& k, IntPoly p) {
        for (auto& c : p.c_) c *= k;
        p.trim();
        return p;
    }

    /// Quotient and remainder when every quotient coefficient is integral;
    /// throws DomainError otherwise.
    std::pair<IntPoly, IntPoly> divmod(const IntPoly& divisor) const {
        if (divisor.is_zero()) throw DomainError("IntPoly: division by zero polynomial");
        IntPoly rem = *this;
        const int db = divisor.degree();
        if (degree() < db) return {IntPoly{}, rem};
        std::vector<BigInt> quot(static_cast<std::size_t>(degree() - db + 1), BigInt{0});
        const BigInt lead = divisor.leading();
        while (!rem.is_zero() && rem.degree() >= db) {
            const int shift = rem.degree() - db;
            if (!mpz_divisible_p(rem.leading().get_mpz_t(), lead.get_mpz_t()))
                throw DomainError("IntPoly: quotient is not integral");
            const BigInt factor = rem.leading() / lead;
            quot[static_cast<std::size_t>(shift)] = factor;
            for (int i = 0; i <= db; ++i) rem.c_[static_cast<std::size_t>(i + shift)] -= factor * divisor.c_[static_cast<std::size_t>(i)];
            rem.trim();
        }
        return {IntPoly(std::move(quot)), rem};
    }

    IntPoly divide_exact(const IntPoly& divisor) const {
        auto [q, r] = divmod(divisor);
        if (!r.is_zero()) throw DomainError("IntPoly: inexact division");
        return q;
    }

    /// lc(b)^(deg a - deg b + 1) * a mod b, always integral.
    IntPoly pseudo_remainder(const IntPoly& b) const {
        IntPoly r = *this;
        const int db = b.degree();
        const BigInt lead = b.leading();
        while (!r.is_zero() && r.degree() >= db) {
            const BigInt lr = r.leading();
            const std::size_t shift = static_cast<std::size_t>(r.degree() - db);
            r = lead * r - monomial(lr, shift) * b;
        }
        return r;
    }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        return g;
    }

    /// Divide out the content and make the leading coefficient positive.
    IntPoly primitive_part() const {
        if (is_zero()) return {};
        BigInt g = content();
        if (leading() < 0) g = -g;
        IntPoly r = *this;
        for (auto& c : r.c_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        return r;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<BigInt> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return IntPoly(std::move(d));
    }

    /// q^n * p(1/q); n must be at least the degree.
    IntPoly reversed(std::size_t n) const {
        std::vector<BigInt> r(n + 1, BigInt{0});
        for (std::size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
        return IntPoly(std::move(r));
    }

    /// p(+-q^e)
    IntPoly substitute(std::size_t exponent, bool negate = false) const {
        if (is_zero()) return {};
        std::vector<BigInt> r(static_cast<std::size_t>(degree()) * exponent + 1, BigInt{0});
        for (std::size_t i = 0; i < c_.size(); ++i) {
            BigInt c = c_[i];
            if (negate && i % 2 == 1) c = -c;
            r[i * exponent] = c;
        }
        return IntPoly(std::move(r));
    }

    std::string to_string(char var = 'q') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const BigInt& c = c_[i];
            if (c == 0) continue;
            BigInt mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) os << mag.get_str();
            if (i > 0) {
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

/// Primitive polynomial GCD over Z by the primitive remainder sequence.
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = a.pseudo_remainder(b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Ratio of two integer polynomials, stored reduced: no common polynomial
/// factor, no common integer content, denominator leading coefficient > 0.
class RatFunc {
public:
    RatFunc() : num_{}, den_{1} {}
    RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("RatFunc: zero denominator");
        normalize();
    }
    explicit RatFunc(IntPoly p) : RatFunc(std::move(p), IntPoly{1}) {}

    const IntPoly& numerator() const { return num_; }
    const IntPoly& denominator() const { return den_; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RatFunc operator*(const BigInt& k, const RatFunc& a) { return {k * a.num_, a.den_}; }

    RatFunc substitute(std::size_t exponent, bool negate = false) const {
        return {num_.substitute(exponent, negate), den_.substitute(exponent, negate)};
    }

    std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = IntPoly{1};
            return;
        }
        const IntPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
        BigInt c;
        const BigInt cn = num_.content(), cd = den_.content();
        mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
        if (den_.leading() < 0) c = -c;
        if (c != 1) {
            num_ = num_.divide_exact(IntPoly(std::vector<BigInt>{c}));
            den_ = den_.divide_exact(IntPoly(std::vector<BigInt>{c}));
        }
    }

    IntPoly num_;
    IntPoly den_;
};

/// Phi_n(q) = prod_{d|n} (q^d - 1)^mu(n/d), by exact products and one exact division.
inline IntPoly cyclotomic_poly(std::uint64_t n, const PrimeTable& table) {
    if (n == 0) throw DomainError("cyclotomic_poly: n must be positive");
    IntPoly up{1}, down{1};
    for (std::uint64_t d : table.divisors(n)) {
        const int m = table.mobius(n / d);
        if (m == 1) up = up * IntPoly::q_power_minus_one(d);
        if (m == -1) down = down * IntPoly::q_power_minus_one(d);
    }
    return up.divide_exact(down);
}

inline IntPoly cyclotomic_poly(std::uint64_t n) { return cyclotomic_poly(n, PrimeTable(std::max<std::uint64_t>(n, 2))); }

/// Phi_n(q) = Phi_base(+-q^exponent).
struct IndexReduction {
    std::uint64_t base;
    std::uint64_t exponent;
    bool negate;

    bool operator==(const IndexReduction&) const = default;
};

/// Non-squarefree n collapses to its radical with a power substitution;
/// squarefree n = 2m with m odd > 1 becomes Phi_m(-q); anything else is fixed.
inline IndexReduction reduce_index(std::uint64_t n, const PrimeTable& table) {
    if (n < 2) throw DomainError("reduce_index: n must be >= 2");
    const auto f = table.factorize(n);
    const std::uint64_t rad = f.radical();
    if (rad != n) return {rad, n / rad, false};
    if (n % 2 == 0 && n > 2) return {n / 2, 1, true};
    return {n, 1, false};
}

inline IntPoly apply_reduction(const IndexReduction& r, const PrimeTable& table) {
    return cyclotomic_poly(r.base, table).substitute(r.exponent, r.negate);
}

/// sum_{d|n} d mu(n/d) / (1 - q^d), over the common denominator 1 - q^n.
inline RatFunc phi_tilde(std::uint64_t n, const PrimeTable& table) {
    if (n < 2) throw DomainError("phi_tilde: n must be >= 2");
    std::vector<BigInt> num(n, BigInt{0});
    for (std::uint64_t d : table.divisors(n)) {
        const int m = table.mobius(n / d);
        if (m == 0) continue;
        // d/(1-q^d) = d (1 + q^d + ... + q^(n-d)) / (1-q^n)
        for (std::uint64_t j = 0; j < n; j += d) num[j] += static_cast<long>(d) * m;
    }
    return {IntPoly(std::move(num)), IntPoly::one_minus_q_power(n)};
}

/// (1/q) Phi_n'(w)/Phi_n(w) at w = 1/q, which is rev(Phi_n') / rev(Phi_n).
inline RatFunc phi_tilde_log_derivative(std::uint64_t n, const PrimeTable& table) {
    if (n < 2) throw DomainError("phi_tilde: n must be >= 2");
    const IntPoly phi = cyclotomic_poly(n, table);
    const auto deg = static_cast<std::size_t>(phi.degree());
    return {phi.derivative().reversed(deg - 1), phi.reversed(deg)};
}

/// Pi_n(q) from its defining sum over j = 0..n-2 of (n-1-j) q^j (1-q) / (1-q^n).
inline RatFunc pi_n(std::uint64_t n) {
    if (n < 2) throw DomainError("pi_n: n must be >= 2");
    std::vector<BigInt> poly(n - 1);
    for (std::uint64_t j = 0; j + 2 <= n; ++j) poly[j] = static_cast<long>(n - 1 - j);
    return {IntPoly(std::move(poly)) * IntPoly{1, -1}, IntPoly::one_minus_q_power(n)};
}

/// Closed form ((n-1) - n q + sign*q^n) / ((1-q)(1-q^n)); sign = +1 is the
/// form that agrees with pi_n.
inline RatFunc pi_n_closed_form(std::uint64_t n, int q_power_sign = +1) {
    if (n < 2) throw DomainError("pi_n: n must be >= 2");
    IntPoly num = IntPoly{static_cast<long>(n - 1), -static_cast<long>(n)} +
                  IntPoly::monomial(BigInt{q_power_sign}, n);
    return {num, IntPoly{1, -1} * IntPoly::one_minus_q_power(n)};
}

/// Taylor coefficients at q = 0 through q^order, by the linear recurrence
/// den_0 c_k = num_k - sum_{j>=1} den_j c_{k-j}.
inline std::vector<Rational> series_coefficients(const RatFunc& f, std::size_t order) {
    const IntPoly& num = f.numerator();
    const IntPoly& den = f.denominator();
    if (den[0] == 0) throw PoleAtOriginError("series_coefficients: denominator vanishes at q = 0");
    const Rational d0{den[0]};
    std::vector<Rational> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
        Rational acc{num[k]};
        const std::size_t top = std::min<std::size_t>(k, static_cast<std::size_t>(std::max(den.degree(), 0)));
        for (std::size_t j = 1; j <= top; ++j) acc -= Rational{den[j]} * c[k - j];
        c[k] = acc / d0;
        c[k].canonicalize();
    }
    return c;
}

struct LambertTermCheck {
    bool holds = false;
    Rational max_discrepancy = 0;
    std::size_t order = 0;
};

/// q^n/(1-q^n) against -1 + 1/(n(1-q)) + (1/n) sum_{d|n,d>1} phi_tilde(d), coefficientwise.
inline LambertTermCheck lambert_term_check(std::uint64_t n, std::size_t order, const PrimeTable& table) {
    if (n < 2) throw DomainError("lambert_term_check: n must be >= 2");
    const auto lhs = series_coefficients(RatFunc(IntPoly::monomial(1, n), IntPoly::one_minus_q_power(n)), order);
    std::vector<Rational> rhs(order + 1, Rational{1, static_cast<unsigned long>(n)});
    rhs[0] -= 1;
    for (std::uint64_t d : table.divisors(n)) {
        if (d == 1) continue;
        const auto s = series_coefficients(phi_tilde(d, table), order);
        for (std::size_t k = 0; k <= order; ++k) rhs[k] += s[k] / Rational{static_cast<unsigned long>(n)};
    }
    LambertTermCheck out;
    out.order = order;
    out.holds = true;
    for (std::size_t k = 0; k <= order; ++k) {
        Rational diff = abs(lhs[k] - rhs[k]);
        if (diff != 0) out.holds = false;
        if (diff > out.max_discrepancy) out.max_discrepancy = diff;
    }
    return out;
}

/// One summand of a Lambert-term row: phi_tilde(d) = multiplier * phi_tilde(base)(q^exponent).
struct Table1Term {
    std::uint64_t d;
    std::uint64_t base;
    std::uint64_t exponent;  // the multiplier equals the exponent

    bool operator==(const Table1Term&) const = default;
};

struct Table1Row {
    std::uint64_t n;
    std::vector<Table1Term> terms;
    RatFunc lambert_term;     // n q^n/(1-q^n) + n - 1/(1-q)
    RatFunc divisor_sum;      // sum of phi_tilde(d) over d | n, d > 1
    RatFunc reduced_sum;      // sum of exponent * phi_tilde(base)(q^exponent)
    bool identity_holds = false;
    bool reduced_holds = false;
};

/// Decomposition of the n-th Lambert term into logarithmic-derivative
/// primitives, with the prime-power index reductions applied per summand.
inline Table1Row table1_row(std::uint64_t n, const PrimeTable& table) {
    if (n < 2 || n > 16) throw DomainError("table1_row: n must lie in 2..16");
    Table1Row row;
    row.n = n;
    const BigInt nn{static_cast<unsigned long>(n)};
    row.lambert_term = nn * RatFunc(IntPoly::monomial(1, n), IntPoly::one_minus_q_power(n)) +
                       RatFunc(IntPoly(std::vector<BigInt>{nn})) -
                       RatFunc(IntPoly{1}, IntPoly{1, -1});
    for (std::uint64_t d : table.divisors(n)) {
        if (d == 1) continue;
        const std::uint64_t rad = table.factorize(d).radical();
        row.terms.push_back({d, rad, d / rad});
        row.divisor_sum = row.divisor_sum + phi_tilde(d, table);
        row.reduced_sum = row.reduced_sum + BigInt{static_cast<unsigned long>(d / rad)} *
                                                phi_tilde(rad, table).substitute(d / rad);
    }
    row.identity_holds = row.divisor_sum == row.lambert_term;
    row.reduced_holds = row.reduced_sum == row.lambert_term;
    return row;
}

}  // namespace divsigma

#endif  // DIVSIGMA_CYCLOTOMIC_HPP
