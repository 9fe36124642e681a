#include "support.hpp"

#include "nicelie/fourier_motzkin.hpp"

using namespace testing;

namespace {

LinearInequality ineq(std::vector<int> a, int b, bool strict = true) {
    LinearInequality q;
    for (int x : a) q.a.emplace_back(x);
    q.b = Rational{b};
    q.strict = strict;
    return q;
}

/// x with rows . x = rhs when the square system is regular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
    const int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(rhs[p], rhs[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rational f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (int r = 0; r < n; ++r) rhs[r] /= a[r][r];
    return rhs;
}

/// Vertex oracle for bounded systems: collect the vertices of the closed
/// relaxation; the system is feasible iff their centroid satisfies it.
bool vertex_feasible(const std::vector<LinearInequality>& sys, int vars) {
    const int m = static_cast<int>(sys.size());
    std::vector<std::vector<Rational>> vertices;
    std::vector<int> pick(vars);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == vars) {
            std::vector<std::vector<Rational>> a;
            std::vector<Rational> rhs;
            for (int i : pick) {
                a.push_back(sys[i].a);
                rhs.push_back(-sys[i].b);
            }
            auto x = solve_square(a, rhs);
            if (!x) return;
            for (const auto& q : sys) {
                LinearInequality weak = q;
                weak.strict = false;
                if (!weak.holds(*x)) return;
            }
            vertices.push_back(*x);
            return;
        }
        for (int i = start; i < m; ++i) {
            pick[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    if (vertices.empty()) return false;
    std::vector<Rational> centroid(vars);
    for (const auto& v : vertices)
        for (int k = 0; k < vars; ++k) centroid[k] += v[k];
    for (auto& x : centroid) x /= Rational{static_cast<std::int64_t>(vertices.size())};
    for (const auto& q : sys)
        if (!q.holds(centroid)) return false;
    return true;
}

/// Random system boxed by -3 <= x_k <= 3.
std::vector<LinearInequality> random_system(int vars, int count, int max_coef, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-max_coef, max_coef), cst(-3, 3);
    std::bernoulli_distribution strict(0.6);
    std::vector<LinearInequality> sys;
    for (int k = 0; k < count; ++k) {
        std::vector<int> a(vars);
        for (auto& x : a) x = coef(rng);
        sys.push_back(ineq(a, cst(rng), strict(rng)));
    }
    for (int v = 0; v < vars; ++v) {
        std::vector<int> e(vars, 0);
        e[v] = 1;
        sys.push_back(ineq(e, 3, false));
        e[v] = -1;
        sys.push_back(ineq(e, 3, false));
    }
    return sys;
}

}  // namespace

TEST_SUITE("fm") {
    TEST_CASE("simplest_between") {
        CHECK(simplest_between(Rational{0}, true, Rational{2}, true) == Rational{1});
        CHECK(simplest_between(Rational{-3}, true, Rational{5}, true) == Rational{0});
        CHECK(simplest_between(Rational{-5}, true, Rational{-2}, true) == Rational{-3});
        CHECK(simplest_between(Rational{1}, true, Rational{2}, true) == Rational{3, 2});
        CHECK(simplest_between(Rational{1}, false, Rational{2}, true) == Rational{1});
        CHECK(simplest_between(Rational{2}, false, Rational{2}, false) == Rational{2});
        auto q = simplest_between(Rational{1, 3}, true, Rational{1, 2}, true);
        CHECK(q > Rational{1, 3});
        CHECK(q < Rational{1, 2});
        CHECK(q == Rational{2, 5});
    }

    TEST_CASE("small systems") {
        // x > 1, x < 1
        CHECK_FALSE(feasible({ineq({1}, -1), ineq({-1}, 1)}, 1));
        // x >= 1, x <= 1
        CHECK(feasible({ineq({1}, -1, false), ineq({-1}, 1, false)}, 1));
        // x >= 1, x < 1
        CHECK_FALSE(feasible({ineq({1}, -1, false), ineq({-1}, 1)}, 1));
        // x > 0, y > 0, x + y < 1
        std::vector<LinearInequality> tri{ineq({1, 0}, 0), ineq({0, 1}, 0), ineq({-1, -1}, 1)};
        auto p = find_point(tri, 2);
        REQUIRE(p.has_value());
        for (const auto& q : tri) CHECK(q.holds(*p));
        CHECK(feasible({}, 3));
        CHECK_FALSE(feasible({ineq({0, 0}, -1, false)}, 2));
        CHECK(feasible({ineq({0, 0}, 0, false)}, 2));
        CHECK_FALSE(feasible({ineq({0, 0}, 0)}, 2));
    }

    TEST_CASE("feasibility agrees with the vertex oracle") {
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> vars_d(1, 5), count_d(1, 6);
        int feasible_count = 0, total = 0;
        for (int t = 0; t < 400; ++t) {
            int vars = vars_d(rng);
            auto sys = random_system(vars, count_d(rng), vars <= 3 ? 2 : 1, rng);
            bool fm = feasible(sys, vars);
            CHECK(fm == vertex_feasible(sys, vars));
            auto p = find_point(sys, vars);
            CHECK(p.has_value() == fm);
            ++total;
            if (p) {
                ++feasible_count;
                for (const auto& q : sys) CHECK(q.holds(*p));
                auto r = find_point(sys, vars, &rng);
                REQUIRE(r.has_value());
                for (const auto& q : sys) CHECK(q.holds(*r));
            }
        }
        CHECK(feasible_count > 50);
        CHECK(feasible_count < total);
    }
}
