#include "offord/rational.hpp"

#include <ostream>

#include "offord/errors.hpp"

namespace offord {

Rational::Rational(long num, long den) {
    if (den == 0) throw input_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (sgn(den) == 0) throw input_error("rational with zero denominator");
    v_ = mpq_class(num) / mpq_class(den);
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw input_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(s));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw input_error("malformed rational literal: " + s);
        return Rational(BigInt(num), BigInt(den));
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational literal: " + s);
    }
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw input_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::abs() const {
    return sign() < 0 ? -(*this) : *this;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    if (k > n) return 0;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Rational rational_pow(const Rational& base, unsigned long e) {
    return Rational(int_pow(base.numerator(), e), int_pow(base.denominator(), e));
}

BigInt isqrt(const BigInt& x) {
    if (sgn(x) < 0) throw input_error("isqrt of negative integer");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

Rational sqrt_upper(const Rational& x) {
    if (x.sign() < 0) throw input_error("sqrt of negative rational");
    if (x.is_zero()) return Rational(0);
    const BigInt scale = int_pow(BigInt(10), 9);
    BigInt n = x.numerator() * x.denominator() * scale * scale;
    return Rational(isqrt(n) + 1, x.denominator() * scale);
}

}  // namespace offord
