#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nicelie/rational.hpp"

namespace nicelie {

/// A monomial packed into 64 bits: up to eight variable ids (1..255) in
/// non-decreasing order, one per byte starting from the low byte. The empty
/// monomial (constant term) is 0.
class Monomial {
public:
    static constexpr int max_degree = 8;
    static constexpr int max_variable = 255;

    constexpr Monomial() = default;
    static Monomial variable(int id);

    int degree() const;
    /// Variable ids, sorted, with repetition.
    std::vector<int> variables() const;
    int exponent(int id) const;
    bool contains(int id) const { return exponent(id) > 0; }

    Monomial operator*(const Monomial& o) const;
    /// Removes one occurrence of `id`; requires contains(id).
    Monomial without(int id) const;

    std::uint64_t bits() const { return bits_; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    explicit constexpr Monomial(std::uint64_t b) : bits_{b} {}
    std::uint64_t bits_ = 0;
};

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted by monomial with no zero coefficients, so the
/// representation is canonical and `==` is mathematical equality.
class Polynomial {
public:
    using Term = std::pair<Monomial, Rational>;

    Polynomial() = default;
    Polynomial(Rational c);  // NOLINT(implicit)
    Polynomial(std::int64_t c) : Polynomial(Rational{c}) {}  // NOLINT(implicit)
    static Polynomial variable(int id);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (0 when absent).
    Rational constant() const;
    int degree() const;
    /// Sorted ids of all variables appearing.
    std::vector<int> variables() const;
    bool contains(int id) const;

    /// Coefficient of the monomial consisting of the single variable `id`.
    Rational linear_coefficient(int id) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;
    friend auto operator<=>(const Polynomial& a, const Polynomial& b) {
        return a.terms_ <=> b.terms_;
    }

    /// Replaces every occurrence of variable `id` by `value`.
    Polynomial substitute(int id, const Polynomial& value) const;
    /// Simultaneous substitution; variables absent from the map are kept.
    Polynomial substitute(const std::map<int, Polynomial>& values) const;
    /// Full evaluation; throws if a variable has no value.
    Rational evaluate(const std::map<int, Rational>& values) const;

    /// Human-readable form with caller-provided variable names, e.g. "1-λ",
    /// "2λ₂+λ^2". Terms by ascending degree, then monomial order.
    std::string str(const std::function<std::string(int)>& name) const;
    std::string str() const;

private:
    void add_term(Monomial m, const Rational& c);
    std::vector<Term> terms_;
};

}  // namespace nicelie
