#include "charcyc/affine.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace charcyc {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

BigInt parse_int(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad integer '" + raw + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw std::invalid_argument("bad integer '" + raw + "'");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
}

std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

BigInt floor_div(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);  // truncates toward zero
    if (q * denominator(r) != numerator(r) && numerator(r) < 0) q -= 1;
    return q;
}

BigInt ceil_div(const Rational& r) { return -floor_div(-r); }

AffineInt AffineInt::param(const std::string& name, const Rational& coeff) {
    AffineInt a;
    a.coeffs_[name] = coeff;
    a.prune();
    return a;
}

Rational AffineInt::coeff(const std::string& name) const {
    auto it = coeffs_.find(name);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

bool AffineInt::is_integral() const {
    if (!is_integer(constant_)) return false;
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return is_integer(kv.second); });
}

long long AffineInt::as_int() const {
    if (!is_constant() || !is_integer(constant_))
        throw AffineError("not an integer constant: " + str());
    return numerator(constant_).convert_to<long long>();
}

AffineInt AffineInt::substitute(const std::map<std::string, Rational>& values) const {
    AffineInt out(constant_);
    for (const auto& [name, k] : coeffs_) {
        auto it = values.find(name);
        if (it != values.end())
            out.constant_ += k * it->second;
        else
            out.coeffs_[name] = k;
    }
    return out;
}

AffineInt AffineInt::substitute(const std::string& name, const AffineInt& value) const {
    auto it = coeffs_.find(name);
    if (it == coeffs_.end()) return *this;
    AffineInt out = *this;
    Rational k = it->second;
    out.coeffs_.erase(name);
    out += value * k;
    return out;
}

void AffineInt::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = it->second == 0 ? coeffs_.erase(it) : std::next(it);
}

AffineInt AffineInt::operator-() const {
    AffineInt out = *this;
    out *= Rational(-1);
    return out;
}

AffineInt& AffineInt::operator+=(const AffineInt& o) {
    constant_ += o.constant_;
    for (const auto& [name, k] : o.coeffs_) coeffs_[name] += k;
    prune();
    return *this;
}

AffineInt& AffineInt::operator-=(const AffineInt& o) { return *this += -o; }

AffineInt& AffineInt::operator*=(const Rational& k) {
    constant_ *= k;
    for (auto& kv : coeffs_) kv.second *= k;
    prune();
    return *this;
}

AffineInt operator*(const AffineInt& a, const AffineInt& b) {
    if (a.is_constant()) return b * a.constant();
    if (b.is_constant()) return a * b.constant();
    throw AffineError("product of non-constant affine forms: (" + a.str() + ")*(" + b.str() + ")");
}

std::string AffineInt::str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rational& k, const std::string& name) {
        Rational mag = k < 0 ? Rational(-k) : k;
        if (first)
            os << (k < 0 ? "-" : "");
        else
            os << (k < 0 ? " - " : " + ");
        first = false;
        if (name.empty())
            os << format_rational(mag);
        else if (mag != 1)
            os << format_rational(mag) << name;
        else
            os << name;
    };
    for (const auto& [name, k] : coeffs_) emit(k, name);
    if (constant_ != 0 || first) emit(constant_, "");
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const AffineInt& a) { return os << a.str(); }

}  // namespace charcyc
