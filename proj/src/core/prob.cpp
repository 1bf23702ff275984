#include "luce/prob.hpp"

#include "luce/errors.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace luce {

namespace {

bool is_integer_text(std::string_view s, bool allow_sign)
{
    if (allow_sign && !s.empty() && s.front() == '-') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    auto num = text.substr(0, slash);
    auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num, true) || !is_integer_text(den, false)) {
        throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

const char* to_string(Arithmetic mode) { return mode == Arithmetic::exact ? "exact" : "float"; }

Prob Prob::zero(Arithmetic mode) { return mode == Arithmetic::exact ? Prob(Rational(0)) : Prob(0.0); }

Prob Prob::one(Arithmetic mode) { return mode == Arithmetic::exact ? Prob(Rational(1)) : Prob(1.0); }

void Prob::canonicalize()
{
    if (auto* q = std::get_if<Rational>(&value_)) {
        q->canonicalize();
    }
}

const Rational& Prob::rational() const
{
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return *q;
    }
    throw std::logic_error("rational() called on a float-mode value");
}

double Prob::to_double() const
{
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return q->get_d();
    }
    return std::get<double>(value_);
}

std::string Prob::to_string() const
{
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return format_rational(*q);
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
    return std::string(buf, res.ptr);
}

int Prob::sign() const
{
    if (const auto* q = std::get_if<Rational>(&value_)) {
        return sgn(*q);
    }
    double x = std::get<double>(value_);
    return (x > 0) - (x < 0);
}

void Prob::require_same_mode(const Prob& rhs) const
{
    if (mode() != rhs.mode()) {
        throw std::logic_error("mixed exact and float arithmetic");
    }
}

Prob& Prob::operator+=(const Prob& rhs)
{
    require_same_mode(rhs);
    if (auto* q = std::get_if<Rational>(&value_)) {
        *q += std::get<Rational>(rhs.value_);
    } else {
        std::get<double>(value_) += std::get<double>(rhs.value_);
    }
    return *this;
}

Prob& Prob::operator-=(const Prob& rhs)
{
    require_same_mode(rhs);
    if (auto* q = std::get_if<Rational>(&value_)) {
        *q -= std::get<Rational>(rhs.value_);
    } else {
        std::get<double>(value_) -= std::get<double>(rhs.value_);
    }
    return *this;
}

Prob& Prob::operator*=(const Prob& rhs)
{
    require_same_mode(rhs);
    if (auto* q = std::get_if<Rational>(&value_)) {
        *q *= std::get<Rational>(rhs.value_);
    } else {
        std::get<double>(value_) *= std::get<double>(rhs.value_);
    }
    return *this;
}

Prob& Prob::operator/=(const Prob& rhs)
{
    require_same_mode(rhs);
    if (auto* q = std::get_if<Rational>(&value_)) {
        const auto& d = std::get<Rational>(rhs.value_);
        if (d == 0) {
            throw std::domain_error("exact division by zero");
        }
        *q /= d;
    } else {
        std::get<double>(value_) /= std::get<double>(rhs.value_);
    }
    return *this;
}

bool operator==(const Prob& lhs, const Prob& rhs)
{
    if (lhs.mode() != rhs.mode()) {
        return false;
    }
    if (lhs.is_exact()) {
        return lhs.rational() == rhs.rational();
    }
    // Bitwise identity so that serialization round trips compare exactly.
    double a = std::get<double>(lhs.value_);
    double b = std::get<double>(rhs.value_);
    return a == b && std::signbit(a) == std::signbit(b);
}

bool is_zero(const Prob& p, double eps)
{
    if (p.is_exact()) {
        return p.sign() == 0;
    }
    return std::abs(p.to_double()) <= eps;
}

bool approx_equal(const Prob& a, const Prob& b, double eps)
{
    if (a.is_exact() && b.is_exact()) {
        return a.rational() == b.rational();
    }
    if (a.mode() != b.mode()) {
        throw std::logic_error("mixed exact and float comparison");
    }
    double x = a.to_double();
    double y = b.to_double();
    return std::abs(x - y) <= eps * (1.0 + std::abs(x) + std::abs(y));
}

ExtendedRatio ExtendedRatio::of(const Prob& numerator, const Prob& denominator, double eps)
{
    const bool num_zero = is_zero(numerator, eps);
    const bool den_zero = is_zero(denominator, eps);
    if (den_zero) {
        return num_zero ? indeterminate() : infinite();
    }
    if (num_zero) {
        return finite(Prob::zero(numerator.mode()));
    }
    return finite(numerator / denominator);
}

const Prob& ExtendedRatio::value() const
{
    if (kind_ != Kind::finite) {
        throw std::logic_error("value() of a non-finite ratio");
    }
    return value_;
}

bool ExtendedRatio::matches(const ExtendedRatio& other, double eps) const
{
    if (kind_ == Kind::indeterminate || other.kind_ == Kind::indeterminate) {
        return false;
    }
    if (kind_ != other.kind_) {
        return false;
    }
    return kind_ == Kind::infinite || approx_equal(value_, other.value_, eps);
}

std::string ExtendedRatio::to_string() const
{
    switch (kind_) {
    case Kind::finite:
        return value_.to_string();
    case Kind::infinite:
        return "inf";
    case Kind::indeterminate:
        break;
    }
    return "0/0";
}

} // namespace luce
