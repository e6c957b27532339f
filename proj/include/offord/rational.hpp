#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace offord {

using BigInt = mpz_class;

// Exact rational scalar. Always canonical: denominator > 0 and
// gcd(|numerator|, denominator) = 1. All arithmetic is exact; there is no
// floating-point anywhere in the core math.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(const BigInt& n) : v_(n) {}
    Rational(long num, long den);
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p/q", "p", optional leading '-'. Throws input_error otherwise.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return v_; }
    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    Rational abs() const;

    std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Exact binomial coefficient.
BigInt binomial(unsigned long n, unsigned long k);

// pow as exact integers / rationals.
BigInt int_pow(const BigInt& base, unsigned long e);
Rational rational_pow(const Rational& base, unsigned long e);

// floor(sqrt(x)), x >= 0.
BigInt isqrt(const BigInt& x);

// Rational upper bound on sqrt(x) within 1e-9 relative, used where an exact
// result would be irrational (Wilson radii, n'^{-r/2} report bounds). Rounded
// outward only, never inward.
Rational sqrt_upper(const Rational& x);

}  // namespace offord
