#include "nicelie/fourier_motzkin.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nicelie {

bool LinearInequality::holds(const std::vector<Rational>& x) const {
    Rational v = b;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) v += a[i] * x[i];
    return strict ? v.sign() > 0 : v.sign() >= 0;
}

namespace {

using System = std::vector<LinearInequality>;

LinearInequality normalized(LinearInequality q) {
    Rational lead;
    for (const auto& c : q.a)
        if (!c.is_zero()) {
            lead = c.abs();
            break;
        }
    if (lead.is_zero()) lead = q.b.is_zero() ? Rational{1} : q.b.abs();
    if (lead != Rational{1}) {
        Rational inv = lead.inverse();
        for (auto& c : q.a) c *= inv;
        q.b *= inv;
    }
    return q;
}

bool is_constant(const LinearInequality& q) {
    return std::all_of(q.a.begin(), q.a.end(), [](const Rational& c) { return c.is_zero(); });
}

/// Drops satisfied constant rows and duplicates; nullopt on a contradiction.
std::optional<System> tidy(const System& s) {
    std::set<LinearInequality> seen;
    for (const auto& q : s) {
        if (is_constant(q)) {
            if (q.strict ? q.b.sign() <= 0 : q.b.sign() < 0) return std::nullopt;
            continue;
        }
        auto n = normalized(q);
        // A strict copy makes the weak one redundant.
        LinearInequality other = n;
        other.strict = !n.strict;
        if (n.strict) seen.erase(other);
        else if (seen.count(other))
            continue;
        seen.insert(n);
    }
    return System(seen.begin(), seen.end());
}

System eliminate(const System& s, int k) {
    System pos, neg, out;
    for (const auto& q : s) {
        int sg = q.a[k].sign();
        if (sg > 0) pos.push_back(q);
        else if (sg < 0) neg.push_back(q);
        else out.push_back(q);
    }
    for (const auto& p : pos)
        for (const auto& n : neg) {
            Rational wp = -n.a[k], wn = p.a[k];
            LinearInequality c;
            c.a.resize(p.a.size());
            for (std::size_t i = 0; i < p.a.size(); ++i) c.a[i] = wp * p.a[i] + wn * n.a[i];
            c.a[k] = Rational{0};
            c.b = wp * p.b + wn * n.b;
            c.strict = p.strict || n.strict;
            out.push_back(std::move(c));
        }
    return out;
}

/// levels[k] involves only variables k..vars-1.
std::optional<std::vector<System>> elimination_levels(const System& system, int vars) {
    for (const auto& q : system)
        if (static_cast<int>(q.a.size()) != vars) throw std::invalid_argument("fourier-motzkin: coefficient count");
    std::vector<System> levels;
    auto cur = tidy(system);
    if (!cur) return std::nullopt;
    levels.push_back(*cur);
    for (int k = 0; k < vars; ++k) {
        cur = tidy(eliminate(levels.back(), k));
        if (!cur) return std::nullopt;
        levels.push_back(*cur);
    }
    return levels;
}

Rational floor_of(const Rational& q) {
    std::int64_t f = q.num() / q.den();
    if (q.num() % q.den() != 0 && q.num() < 0) --f;
    return Rational{f};
}

/// Integer nearest zero in (lo, inf), or [lo, inf) when weak.
Rational nearest_zero_above(const Rational& lo, bool strict) {
    if (strict ? lo.sign() < 0 : lo.sign() <= 0) return Rational{0};
    if (!strict && lo.is_integer()) return lo;
    return floor_of(lo) + Rational{1};
}

}  // namespace

bool feasible(const std::vector<LinearInequality>& system, int vars) {
    return elimination_levels(system, vars).has_value();
}

Rational simplest_between(const Rational& lo, bool lo_strict, const Rational& hi, bool hi_strict) {
    if (lo == hi) {
        if (lo_strict || hi_strict) throw std::invalid_argument("simplest_between: empty interval");
        return lo;
    }
    if (hi < lo) throw std::invalid_argument("simplest_between: empty interval");
    auto inside = [&](const Rational& x) {
        bool a = lo_strict ? lo < x : lo <= x;
        bool b = hi_strict ? x < hi : x <= hi;
        return a && b;
    };
    if (inside(Rational{0})) return Rational{0};
    if (hi.sign() <= 0 && lo.sign() < 0) return -simplest_between(-hi, hi_strict, -lo, lo_strict);
    // Now 0 <= lo < hi.
    Rational f = floor_of(lo);
    if (inside(f + Rational{1}) || inside(f)) return inside(f) ? f : f + Rational{1};
    // Stern-Brocot descent between f and f + 1.
    std::int64_t ln = 0, ld = 1, rn = 1, rd = 0;
    const Rational frac_lo = lo - f, frac_hi = hi - f;
    for (int guard = 0; guard < 4096; ++guard) {
        Rational m{ln + rn, ld + rd};
        bool above_lo = lo_strict ? frac_lo < m : frac_lo <= m;
        bool below_hi = hi_strict ? m < frac_hi : m <= frac_hi;
        if (above_lo && below_hi) return f + m;
        if (!above_lo) {
            ln += rn;
            ld += rd;
        } else {
            rn += ln;
            rd += ld;
        }
    }
    throw std::overflow_error("simplest_between: no convergence");
}

std::optional<std::vector<Rational>> find_point(const std::vector<LinearInequality>& system, int vars,
                                                std::mt19937_64* rng) {
    auto levels = elimination_levels(system, vars);
    if (!levels) return std::nullopt;
    std::vector<Rational> x(vars);
    for (int k = vars - 1; k >= 0; --k) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& q : (*levels)[k]) {
            int sg = q.a[k].sign();
            if (sg == 0) continue;
            Rational rest = q.b;
            for (int i = k + 1; i < vars; ++i)
                if (!q.a[i].is_zero()) rest += q.a[i] * x[i];
            Rational bound = -rest / q.a[k];
            if (sg > 0) {
                if (!lo || *lo < bound || (*lo == bound && q.strict)) {
                    lo_strict = (lo && *lo == bound) ? (lo_strict || q.strict) : q.strict;
                    lo = bound;
                }
            } else {
                if (!hi || bound < *hi || (*hi == bound && q.strict)) {
                    hi_strict = (hi && *hi == bound) ? (hi_strict || q.strict) : q.strict;
                    hi = bound;
                }
            }
        }
        if (!rng) {
            if (lo && hi) x[k] = simplest_between(*lo, lo_strict, *hi, hi_strict);
            else if (lo) x[k] = nearest_zero_above(*lo, lo_strict);
            else if (hi) x[k] = -nearest_zero_above(-*hi, hi_strict);
            else x[k] = Rational{0};
            continue;
        }
        std::uniform_int_distribution<int> step(1, 8);
        Rational r{step(*rng), 2};
        if (lo && hi) {
            if (*lo == *hi) x[k] = *lo;
            else x[k] = *lo + (*hi - *lo) * Rational{step(*rng) % 7 + 1, 8};
        } else if (lo) {
            x[k] = *lo + r;
        } else if (hi) {
            x[k] = *hi - r;
        } else {
            std::uniform_int_distribution<int> any(-8, 8);
            x[k] = Rational{any(*rng), 2};
        }
    }
    return x;
}

}  // namespace nicelie
