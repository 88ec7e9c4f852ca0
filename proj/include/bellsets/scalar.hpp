#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace bellsets {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// Accepts "3", "-1/2", "0.25", "2.5e-3". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Dual-mode real scalar: exact rational or binary double.
///
/// Arithmetic stays exact while every operand is exact; any double operand
/// promotes the result to double. Plain comparisons are exact in exact mode
/// and bitwise-double otherwise; boundary-tolerant membership comparisons
/// live in Interval, not here.
class Scalar {
  public:
    Scalar() : rep_(Rational(0)) {}
    Scalar(int value) : rep_(Rational(value)) {}
    Scalar(long value) : rep_(Rational(value)) {}
    Scalar(long long value) : rep_(Rational(static_cast<long>(value))) {}
    Scalar(Rational value) : rep_(std::move(value)) {}
    Scalar(double value) : rep_(value) {}

    bool exact() const { return std::holds_alternative<Rational>(rep_); }
    bool finite() const;

    double to_double() const;

    /// The exact representation. Converts a double rep to its dyadic rational.
    Rational to_rational() const;

    /// Requires exact mode.
    const Rational& rational() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);

    /// Three-way comparison: negative, zero, positive. Exact when both exact.
    int compare(const Scalar& other) const;

    std::string str() const;

  private:
    std::variant<Rational, double> rep_;
};

Scalar operator+(Scalar lhs, const Scalar& rhs);
Scalar operator-(Scalar lhs, const Scalar& rhs);
Scalar operator*(Scalar lhs, const Scalar& rhs);
Scalar operator/(Scalar lhs, const Scalar& rhs);

inline bool operator==(const Scalar& a, const Scalar& b) { return a.compare(b) == 0; }
inline bool operator!=(const Scalar& a, const Scalar& b) { return a.compare(b) != 0; }
inline bool operator<(const Scalar& a, const Scalar& b) { return a.compare(b) < 0; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return a.compare(b) <= 0; }
inline bool operator>(const Scalar& a, const Scalar& b) { return a.compare(b) > 0; }
inline bool operator>=(const Scalar& a, const Scalar& b) { return a.compare(b) >= 0; }

Scalar abs(const Scalar& value);

}  // namespace bellsets
