#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace charcyc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "3", "-3/4", " 7 / 6 " all accepted.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);
bool is_integer(const Rational& r);
BigInt floor_div(const Rational& r);
BigInt ceil_div(const Rational& r);

class AffineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// constant + sum coeff[p] * p, over exact rationals.  Zero coefficients are
// never stored, so operator== is structural equality.
class AffineInt {
public:
    AffineInt() = default;
    AffineInt(long long v) : constant_(v) {}
    AffineInt(const Rational& v) : constant_(v) {}

    static AffineInt param(const std::string& name, const Rational& coeff = 1);

    const Rational& constant() const { return constant_; }
    const std::map<std::string, Rational>& coeffs() const { return coeffs_; }
    Rational coeff(const std::string& name) const;

    bool is_constant() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
    bool is_integral() const;

    // throws AffineError if not a constant integer
    long long as_int() const;

    AffineInt substitute(const std::map<std::string, Rational>& values) const;
    AffineInt substitute(const std::string& name, const AffineInt& value) const;

    AffineInt operator-() const;
    AffineInt& operator+=(const AffineInt& o);
    AffineInt& operator-=(const AffineInt& o);
    AffineInt& operator*=(const Rational& k);

    friend AffineInt operator+(AffineInt a, const AffineInt& b) { return a += b; }
    friend AffineInt operator-(AffineInt a, const AffineInt& b) { return a -= b; }
    friend AffineInt operator*(AffineInt a, const Rational& k) { return a *= k; }
    friend AffineInt operator*(const Rational& k, AffineInt a) { return a *= k; }
    friend AffineInt operator*(AffineInt a, long long k) { return a *= Rational(k); }
    friend AffineInt operator*(long long k, AffineInt a) { return a *= Rational(k); }
    // product of two affine forms; one of them must be constant
    friend AffineInt operator*(const AffineInt& a, const AffineInt& b);

    friend bool operator==(const AffineInt& a, const AffineInt& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }

    // "c - 2", "-3c", "c + 1", "1/2c" ...
    std::string str() const;

private:
    void prune();
    Rational constant_ = 0;
    std::map<std::string, Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const AffineInt& a);

}  // namespace charcyc
