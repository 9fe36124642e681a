#pragma once

#include <optional>
#include <random>
#include <vector>

#include "nicelie/rational.hpp"

namespace nicelie {

/// a . x + b > 0 when strict, a . x + b >= 0 otherwise.
struct LinearInequality {
    std::vector<Rational> a;
    Rational b;
    bool strict = true;

    bool holds(const std::vector<Rational>& x) const;
    friend auto operator<=>(const LinearInequality&, const LinearInequality&) = default;
};

/// Fourier-Motzkin elimination over Q. Strict and non-strict inequalities
/// are tracked separately, so 0 > 0 counts as a contradiction but 0 >= 0
/// does not.
bool feasible(const std::vector<LinearInequality>& system, int vars);

/// A point satisfying the system, or nullopt when it is infeasible. Without
/// `rng` the simplest rational in each admissible interval is chosen (the
/// integer nearest zero when there is one); with `rng`, a random rational in
/// the interval.
std::optional<std::vector<Rational>> find_point(const std::vector<LinearInequality>& system, int vars,
                                                std::mt19937_64* rng = nullptr);

/// Simplest rational strictly (or, with the flags cleared, weakly) between
/// lo and hi. Requires lo < hi, or lo == hi with both bounds weak.
Rational simplest_between(const Rational& lo, bool lo_strict, const Rational& hi, bool hi_strict);

}  // namespace nicelie
