#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace nicelie {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Every operation reduces to lowest terms with a positive denominator, so
/// equal values always have equal representations. Intermediate products go
/// through 128-bit integers; a result that does not fit throws
/// std::overflow_error rather than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_{n} {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational inverse() const;
    /// Integer power; negative exponents invert.
    Rational pow(int e) const;

    /// "3", "-1/2".
    std::string str() const;
    /// Parses "3", "-7", "1/2". Throws std::invalid_argument.
    static Rational parse(const std::string& s);

private:
    static Rational from_wide(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace nicelie

template <>
struct std::hash<nicelie::Rational> {
    std::size_t operator()(const nicelie::Rational& q) const noexcept {
        return std::hash<std::int64_t>{}(q.num()) * 1000003u ^ std::hash<std::int64_t>{}(q.den());
    }
};
