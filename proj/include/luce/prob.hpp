#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace luce {

using Rational = mpq_class;

/// Parses "n", "n/d" or "-n/d"; throws InvalidArgument otherwise.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

enum class Arithmetic { exact, floating };

const char* to_string(Arithmetic mode);

/// Tolerance used by float-mode comparisons unless a rule carries its own.
inline constexpr double kDefaultTolerance = 1e-9;

/// A probability-like scalar: an exact rational or a double. The two modes
/// never mix; combining them throws std::logic_error.
class Prob {
public:
    Prob() : value_(Rational(0)) {}
    Prob(Rational q) : value_(std::move(q)) { canonicalize(); }
    explicit Prob(double x) : value_(x) {}

    static Prob zero(Arithmetic mode);
    static Prob one(Arithmetic mode);

    Arithmetic mode() const noexcept
    {
        return std::holds_alternative<Rational>(value_) ? Arithmetic::exact : Arithmetic::floating;
    }
    bool is_exact() const noexcept { return mode() == Arithmetic::exact; }

    const Rational& rational() const;
    double to_double() const;

    /// Exact text "n/d" or the shortest round-trip decimal.
    std::string to_string() const;

    int sign() const;

    Prob& operator+=(const Prob& rhs);
    Prob& operator-=(const Prob& rhs);
    Prob& operator*=(const Prob& rhs);
    Prob& operator/=(const Prob& rhs);

    friend Prob operator+(Prob lhs, const Prob& rhs) { return lhs += rhs; }
    friend Prob operator-(Prob lhs, const Prob& rhs) { return lhs -= rhs; }
    friend Prob operator*(Prob lhs, const Prob& rhs) { return lhs *= rhs; }
    friend Prob operator/(Prob lhs, const Prob& rhs) { return lhs /= rhs; }

    /// Same mode and identical value (bitwise for doubles).
    friend bool operator==(const Prob& lhs, const Prob& rhs);

private:
    void canonicalize();
    void require_same_mode(const Prob& rhs) const;

    std::variant<Rational, double> value_;
};

/// Exact mode: value == 0. Float mode: |value| <= eps.
bool is_zero(const Prob& p, double eps);
inline bool is_positive(const Prob& p, double eps) { return p.sign() > 0 && !is_zero(p, eps); }

/// Exact mode: equality. Float mode: |a-b| <= eps * (1 + |a| + |b|).
bool approx_equal(const Prob& a, const Prob& b, double eps);

/// Ratio of two nonnegative masses on the extended half line.
class ExtendedRatio {
public:
    enum class Kind { finite, infinite, indeterminate };

    /// numerator/denominator with zero tested through `eps`.
    static ExtendedRatio of(const Prob& numerator, const Prob& denominator, double eps);
    static ExtendedRatio finite(Prob value) { return ExtendedRatio(Kind::finite, std::move(value)); }
    static ExtendedRatio infinite() { return ExtendedRatio(Kind::infinite, Prob()); }
    static ExtendedRatio indeterminate() { return ExtendedRatio(Kind::indeterminate, Prob()); }

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::finite; }
    bool is_infinite() const noexcept { return kind_ == Kind::infinite; }
    bool is_indeterminate() const noexcept { return kind_ == Kind::indeterminate; }

    /// Only meaningful when finite.
    const Prob& value() const;

    /// Equality on the extended reals; indeterminate equals nothing.
    bool matches(const ExtendedRatio& other, double eps) const;

    /// "inf", "0/0", or the finite value's text.
    std::string to_string() const;

    friend bool operator==(const ExtendedRatio&, const ExtendedRatio&) = default;

private:
    ExtendedRatio(Kind kind, Prob value) : kind_(kind), value_(std::move(value)) {}

    Kind kind_ = Kind::indeterminate;
    Prob value_;
};

} // namespace luce
