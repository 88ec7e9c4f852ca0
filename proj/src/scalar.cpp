#include "bellsets/scalar.hpp"

#include "bellsets/errors.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace bellsets {

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw NonFiniteError("cannot convert non-finite double to rational");
    }
    // mpq_set_d is exact for finite doubles.
    Rational r(value);
    return r;
}

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) return false;
    BigInt acc = 0;
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
        acc = acc * 10 + (text[pos] - '0');
    }
    out = negative ? BigInt(-acc) : acc;
    return true;
}

BigInt pow10(unsigned exponent) {
    BigInt result = 1;
    for (unsigned i = 0; i < exponent; ++i) result *= 10;
    return result;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num, den;
        if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
        if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
        if (den == 0) return std::nullopt;
        return Rational(num, den);
    }

    // Decimal with optional exponent: [-]digits[.digits][e[-]digits]
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        BigInt exp_big;
        if (!parse_integer(text.substr(e + 1), exp_big)) return std::nullopt;
        if (exp_big > 9999 || exp_big < -9999) return std::nullopt;
        exponent = static_cast<long>(exp_big);
        mantissa = text.substr(0, e);
    }

    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        auto head = mantissa.substr(0, dot);
        auto tail = mantissa.substr(dot + 1);
        if (tail.empty() && head.empty()) return std::nullopt;
        digits.assign(head.begin(), head.end());
        digits.append(tail.begin(), tail.end());
        frac_digits = static_cast<long>(tail.size());
        if (head.empty() || head == "-" || head == "+") {
            // ".5" or "-.5"
            digits.insert(head.size(), "0");
        }
    } else {
        digits.assign(mantissa.begin(), mantissa.end());
    }

    BigInt mantissa_int;
    if (!parse_integer(digits, mantissa_int)) return std::nullopt;

    long net = exponent - frac_digits;
    if (net >= 0) return Rational(mantissa_int * pow10(static_cast<unsigned>(net)));
    return Rational(mantissa_int, pow10(static_cast<unsigned>(-net)));
}

std::string format_rational(const Rational& value) {
    std::ostringstream out;
    out << numerator(value);
    if (denominator(value) != 1) {
        out << '/' << denominator(value);
    }
    return out.str();
}

bool Scalar::finite() const {
    if (exact()) return true;
    return std::isfinite(std::get<double>(rep_));
}

double Scalar::to_double() const {
    if (exact()) return std::get<Rational>(rep_).convert_to<double>();
    return std::get<double>(rep_);
}

Rational Scalar::to_rational() const {
    if (exact()) return std::get<Rational>(rep_);
    return rational_from_double(std::get<double>(rep_));
}

const Rational& Scalar::rational() const {
    if (!exact()) throw Error("scalar is in float mode; no exact rational view");
    return std::get<Rational>(rep_);
}

Scalar Scalar::operator-() const {
    if (exact()) return Scalar(Rational(-std::get<Rational>(rep_)));
    return Scalar(-std::get<double>(rep_));
}

namespace {

template <typename ExactOp, typename FloatOp>
Scalar combine(const Scalar& a, const Scalar& b, ExactOp exact_op, FloatOp float_op) {
    if (a.exact() && b.exact()) return Scalar(exact_op(a.rational(), b.rational()));
    return Scalar(float_op(a.to_double(), b.to_double()));
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& other) {
    *this = combine(*this, other, [](const Rational& x, const Rational& y) { return Rational(x + y); },
                    [](double x, double y) { return x + y; });
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
    *this = combine(*this, other, [](const Rational& x, const Rational& y) { return Rational(x - y); },
                    [](double x, double y) { return x - y; });
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
    *this = combine(*this, other, [](const Rational& x, const Rational& y) { return Rational(x * y); },
                    [](double x, double y) { return x * y; });
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
    if (other.exact() && other.rational() == 0) throw Error("scalar division by exact zero");
    *this = combine(*this, other, [](const Rational& x, const Rational& y) { return Rational(x / y); },
                    [](double x, double y) { return x / y; });
    return *this;
}

int Scalar::compare(const Scalar& other) const {
    if (exact() && other.exact()) {
        const Rational& a = std::get<Rational>(rep_);
        const Rational& b = std::get<Rational>(other.rep_);
        if (a < b) return -1;
        if (b < a) return 1;
        return 0;
    }
    double a = to_double();
    double b = other.to_double();
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

std::string Scalar::str() const {
    if (exact()) return format_rational(std::get<Rational>(rep_));
    std::ostringstream out;
    out.precision(17);
    out << std::get<double>(rep_);
    return out.str();
}

Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

Scalar abs(const Scalar& value) {
    return value.compare(Scalar(0)) < 0 ? -value : value;
}

}  // namespace bellsets
