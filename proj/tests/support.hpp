#pragma once

#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "nicelie/algebra_io.hpp"
#include "nicelie/classify.hpp"
#include "nicelie/driver.hpp"
#include "nicelie/enumerate.hpp"
#include "nicelie/report.hpp"

namespace testing {

using namespace nicelie;

inline StructureVector algebra(const std::string& text) {
    auto v = verify_nice(parse_equations(text));
    REQUIRE_MESSAGE(v.algebra.has_value(), text << ": " << v.message);
    return *v.algebra;
}

inline NiceDiagram diagram_of(const std::string& text) { return algebra(text).diagram(); }

struct TableRow {
    std::string name;
    std::string equations;
    std::string ucs;
};

inline std::vector<TableRow> table(int n) {
    std::ifstream f(std::string(NICELIE_TEST_DATA) + "/table" + std::to_string(n) + ".txt");
    REQUIRE(f.good());
    std::vector<TableRow> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto a = line.find(" | "), b = line.rfind(" | ");
        rows.push_back({line.substr(0, a), line.substr(a + 3, b - a - 3), line.substr(b + 3)});
    }
    return rows;
}

/// Acyclic diagram on n nodes with arrows only from lower to higher index,
/// each present with probability p.
inline Diagram random_dag(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    Diagram d(n);
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t)
            if (coin(rng)) d.add_arrow(s, t);
    return d;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    for (int v = 0; v < n; ++v) p[v] = v;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Every nice diagram with up to `max_n` nodes.
inline std::vector<NiceDiagram> all_nice_diagrams(int max_n) {
    std::vector<NiceDiagram> out;
    for (int n = 1; n <= max_n; ++n)
        for (auto& group : enumerate_nice_diagrams(n))
            for (auto& nd : group.diagrams) out.push_back(nd);
    return out;
}


/// Classification of dimension n, computed once per process.
inline const DimensionReport& report(int n) {
    static std::map<int, DimensionReport> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, classify_dimension(n)).first;
    return it->second;
}

/// Equations after relabeling node v as perm[v] and rescaling e_v by
/// scale[v]; the result is equivalent to the input.
inline StructureEquations transform(const StructureEquations& se, const std::vector<int>& perm,
                                    const std::vector<Rational>& scale) {
    StructureEquations out;
    out.d.resize(se.d.size());
    for (int k = 0; k < se.size(); ++k)
        for (const auto& t : se.d[k]) {
            EquationTerm u;
            u.i = perm[t.i];
            u.j = perm[t.j];
            u.coeff = t.coeff * (scale[t.i] * scale[t.j] / scale[k]);
            if (u.i > u.j) {
                std::swap(u.i, u.j);
                u.coeff = -u.coeff;
            }
            out.d[perm[k]].push_back(u);
        }
    for (auto& terms : out.d)
        std::sort(terms.begin(), terms.end(), [](const EquationTerm& a, const EquationTerm& b) {
            return std::pair{a.i, a.j} < std::pair{b.i, b.j};
        });
    return out;
}

inline std::vector<Rational> random_scale(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 5), den(1, 4);
    std::bernoulli_distribution negative(0.5);
    std::vector<Rational> s;
    for (int v = 0; v < n; ++v) s.push_back(Rational{negative(rng) ? -num(rng) : num(rng), den(rng)});
    return s;
}

/// Structure constants of a family member as a constant structure vector.
inline StructureVector instance(const LieAlgebraFamily& f, const std::vector<Rational>& params) {
    std::vector<Polynomial> c;
    for (const auto& q : f.instantiate(params)) c.emplace_back(q);
    return StructureVector(f.diagram, c);
}

}  // namespace testing
