#include "nicelie/classify.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <set>

#include "nicelie/isomorphism.hpp"

namespace nicelie {

FundamentalDomain fundamental_domain(const NiceDiagram& nd) {
    return fundamental_domain(nd, greedy_independent_rows(root_matrix(nd).gf2()));
}

FundamentalDomain fundamental_domain(const NiceDiagram& nd, std::vector<int> j2) {
    const RootMatrix m = root_matrix(nd);
    std::sort(j2.begin(), j2.end());
    FundamentalDomain fd;
    fd.j2 = std::move(j2);
    fd.j = greedy_independent_rows(m.rational(), fd.j2);
    for (int b = 0; b < nd.bracket_count(); ++b) {
        if (!std::binary_search(fd.j2.begin(), fd.j2.end(), b)) fd.free.push_back(b);
        if (!std::binary_search(fd.j.begin(), fd.j.end(), b)) fd.unknowns.push_back(b);
    }
    if (fd.free.size() > 62) throw std::length_error("fundamental_domain: too many sign coordinates");
    return fd;
}

bool lex_less(const SignComponent& a, const SignComponent& b, int free_count) {
    for (int p = 0; p < free_count; ++p) {
        int x = (a.negative >> p) & 1u, y = (b.negative >> p) & 1u;
        if (x != y) return x < y;
    }
    return false;
}

std::vector<Permutation> automorphisms(const NiceDiagram& nd) {
    std::vector<Permutation> out;
    Permutation id(nd.size());
    for (int v = 0; v < nd.size(); ++v) id[v] = v;
    out.push_back(id);
    for_each_isomorphism(nd.labeled(), nd.labeled(), true, [&](const std::vector<int>& f) {
        if (f != id) out.push_back(f);
        return true;
    });
    return out;
}

std::vector<Rational> permute_coefficients(const NiceDiagram& source, const NiceDiagram& target,
                                           const Permutation& sigma, const std::vector<Rational>& c) {
    std::vector<Rational> out(target.bracket_count());
    const auto& br = source.brackets();
    for (int b = 0; b < source.bracket_count(); ++b) {
        int i = sigma[br[b].i], j = sigma[br[b].j];
        int idx = target.bracket_of_pair(std::min(i, j), std::max(i, j));
        if (idx < 0 || target.brackets()[idx].k != sigma[br[b].k])
            throw std::invalid_argument("permute_coefficients: not a labeled isomorphism");
        out[idx] = i > j ? -c[b] : c[b];
    }
    return out;
}

std::vector<Rational> component_representative(const NiceDiagram& nd, const FundamentalDomain& fd,
                                               const SignComponent& eps) {
    std::vector<Rational> w(nd.bracket_count(), Rational{1});
    for (std::size_t p = 0; p < fd.free.size(); ++p) w[fd.free[p]] = Rational{eps.sign(static_cast<int>(p))};
    return w;
}

namespace {

GF2Matrix select_gf2_rows(const GF2Matrix& m, const std::vector<int>& rows) {
    GF2Matrix s{m.cols, {}};
    for (int r : rows) s.rows.push_back(m.rows[r]);
    return s;
}

/// Sign bits making `signs` agree with +1 on j2, applied through im M2.
std::vector<std::uint8_t> sign_correction(const GF2Matrix& m2, const std::vector<int>& j2,
                                          const std::vector<std::uint8_t>& signs) {
    std::vector<std::uint8_t> rhs;
    for (int r : j2) rhs.push_back(signs[r]);
    auto x = solve_gf2(select_gf2_rows(m2, j2), rhs);
    if (!x) throw InternalAlarm("sign normalization: rows of j2 are dependent");
    auto delta = apply_gf2(m2, *x);
    for (int r : j2)
        if (delta[r] != signs[r]) throw InternalAlarm("sign normalization: correction misses j2");
    return delta;
}

std::vector<std::uint8_t> sign_bits(const std::vector<Rational>& c) {
    std::vector<std::uint8_t> s;
    s.reserve(c.size());
    for (const auto& q : c) s.push_back(q.sign() < 0 ? 1 : 0);
    return s;
}

}  // namespace

SignComponent act_on_component(const NiceDiagram& nd, const FundamentalDomain& fd, const RootMatrix& m,
                               const Permutation& sigma, const SignComponent& eps) {
    auto w = permute_coefficients(nd, nd, sigma, component_representative(nd, fd, eps));
    auto s = sign_bits(w);
    auto delta = sign_correction(m.gf2(), fd.j2, s);
    SignComponent out;
    for (std::size_t p = 0; p < fd.free.size(); ++p)
        if (s[fd.free[p]] ^ delta[fd.free[p]]) out.negative |= std::uint64_t{1} << p;
    return out;
}

std::vector<ComponentOrbit> component_orbits(const NiceDiagram& nd, const FundamentalDomain& fd,
                                             const std::vector<Permutation>& group) {
    const int f = static_cast<int>(fd.free.size());
    if (f > 30) throw std::length_error("component_orbits: too many components");
    const RootMatrix m = root_matrix(nd);
    // Counting m upwards with position p stored at bit f-1-p visits
    // components in lexicographic order.
    auto from_counter = [f](std::uint64_t c) {
        SignComponent e;
        for (int p = 0; p < f; ++p)
            if ((c >> (f - 1 - p)) & 1u) e.negative |= std::uint64_t{1} << p;
        return e;
    };
    auto to_counter = [f](const SignComponent& e) {
        std::uint64_t c = 0;
        for (int p = 0; p < f; ++p)
            if ((e.negative >> p) & 1u) c |= std::uint64_t{1} << (f - 1 - p);
        return c;
    };
    std::vector<char> seen(fd.component_count(), 0);
    std::vector<ComponentOrbit> out;
    for (std::uint64_t c = 0; c < fd.component_count(); ++c) {
        if (seen[c]) continue;
        SignComponent rep = from_counter(c);
        std::size_t size = 0;
        for (const auto& sigma : group) {
            auto img = to_counter(act_on_component(nd, fd, m, sigma, rep));
            if (!seen[img]) {
                seen[img] = 1;
                ++size;
            }
        }
        out.push_back({rep, size});
    }
    return out;
}

bool LieAlgebraFamily::in_domain(const std::vector<Rational>& params) const {
    for (const auto& piece : pieces)
        if (std::all_of(piece.domain.begin(), piece.domain.end(),
                        [&](const LinearInequality& q) { return q.holds(params); }))
            return true;
    return false;
}

std::vector<Rational> LieAlgebraFamily::instantiate(const std::vector<Rational>& params) const {
    if (static_cast<int>(params.size()) != parameter_count)
        throw std::invalid_argument("instantiate: wrong number of parameters");
    std::map<int, Rational> values;
    for (int k = 0; k < parameter_count; ++k) values[k + 1] = params[k];
    std::vector<Rational> c;
    for (const auto& p : assignment) c.push_back(p.evaluate(values));
    return c;
}

std::optional<std::vector<Rational>> LieAlgebraFamily::sample(std::mt19937_64* rng) const {
    if (pieces.empty()) return std::nullopt;
    std::size_t start = 0;
    if (rng) start = std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(*rng);
    for (std::size_t t = 0; t < pieces.size(); ++t) {
        const auto& piece = pieces[(start + t) % pieces.size()];
        if (auto x = find_point(piece.domain, parameter_count, rng)) return x;
    }
    return std::nullopt;
}

namespace {

/// Solves the equations of degree <= 1 and substitutes, until none are left.
/// Returns false on an inconsistent linear system.
bool linear_fixpoint(std::vector<Polynomial>& eqs, std::vector<Polynomial>& assignment) {
    for (;;) {
        std::vector<const Polynomial*> linear;
        std::set<int> vars;
        for (const auto& e : eqs) {
            if (e.degree() > 1) continue;
            if (e.is_constant()) return false;  // nonzero constant
            linear.push_back(&e);
            for (int v : e.variables()) vars.insert(v);
        }
        if (linear.empty()) return true;
        std::vector<int> ids(vars.begin(), vars.end());
        const int cols = static_cast<int>(ids.size());
        RationalMatrix a(static_cast<int>(linear.size()), cols + 1);
        for (int r = 0; r < a.rows(); ++r) {
            for (int c = 0; c < cols; ++c) a(r, c) = linear[r]->linear_coefficient(ids[c]);
            a(r, cols) = -linear[r]->constant();
        }
        auto pivots = row_reduce(a);
        if (!pivots.empty() && pivots.back() == cols) return false;
        std::map<int, Polynomial> subst;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            Polynomial value{a(static_cast<int>(r), cols)};
            for (int c = pivots[r] + 1; c < cols; ++c)
                if (!a(static_cast<int>(r), c).is_zero())
                    value -= Polynomial::variable(ids[c]) * a(static_cast<int>(r), c);
            subst[ids[pivots[r]]] = value;
        }
        std::vector<Polynomial> next;
        for (const auto& e : eqs) {
            auto s = e.substitute(subst);
            if (!s.is_zero()) next.push_back(std::move(s));
        }
        eqs = std::move(next);
        for (auto& p : assignment) p = p.substitute(subst);
    }
}

/// Scales so the first coefficient is 1 and sorts.
std::vector<Polynomial> canonical_residuals(std::vector<Polynomial> rs) {
    for (auto& r : rs) r *= r.terms().front().second.inverse();
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
}

}  // namespace

ComponentReduction reduce_component(const NiceDiagram& nd, const FundamentalDomain& fd, const JacobiSystem& symbolic,
                                    const SignComponent& eps) {
    const int nb = nd.bracket_count();
    std::vector<Polynomial> assignment(nb);
    std::vector<int> eps_of(nb, 1);
    for (std::size_t p = 0; p < fd.free.size(); ++p) eps_of[fd.free[p]] = eps.sign(static_cast<int>(p));
    std::map<int, Polynomial> fixed;
    for (int b : fd.j) {
        assignment[b] = Polynomial{Rational{eps_of[b]}};
        fixed[bracket_variable(b)] = assignment[b];
    }
    for (int b : fd.unknowns) assignment[b] = Polynomial::variable(bracket_variable(b));

    std::vector<Polynomial> eqs;
    for (const auto& e : symbolic.equations) {
        auto s = e.lhs.substitute(fixed);
        if (!s.is_zero()) eqs.push_back(std::move(s));
    }
    ComponentReduction out;
    if (!linear_fixpoint(eqs, assignment)) return out;

    std::set<int> vars;
    for (const auto& p : assignment)
        for (int v : p.variables()) vars.insert(v);
    out.parameters.assign(vars.begin(), vars.end());
    out.residuals = eqs.empty() ? eqs : canonical_residuals(eqs);

    const int k = static_cast<int>(out.parameters.size());
    for (int b : fd.unknowns) {
        LinearInequality q;
        q.a.assign(k, Rational{0});
        Rational s{eps_of[b]};
        for (int c = 0; c < k; ++c) q.a[c] = s * assignment[b].linear_coefficient(out.parameters[c]);
        q.b = s * assignment[b].constant();
        out.domain.push_back(std::move(q));
    }
    out.assignment = std::move(assignment);
    out.feasible = feasible(out.domain, k);
    return out;
}

namespace {

LieAlgebraFamily make_family(const NiceDiagram& nd, const SignComponent& eps, const ComponentReduction& red) {
    // Renumber parameters 1..k by first appearance in bracket order.
    std::vector<int> order;
    for (const auto& p : red.assignment)
        for (int v : p.variables())
            if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    std::map<int, Polynomial> rename;
    for (std::size_t t = 0; t < order.size(); ++t) rename[order[t]] = Polynomial::variable(static_cast<int>(t) + 1);

    LieAlgebraFamily f;
    f.diagram = nd;
    f.parameter_count = static_cast<int>(order.size());
    for (const auto& p : red.assignment) f.assignment.push_back(p.substitute(rename));
    for (const auto& r : red.residuals) f.residuals.push_back(r.substitute(rename));
    if (!f.residuals.empty()) f.residuals = canonical_residuals(f.residuals);

    FamilyPiece piece{eps, {}};
    for (const auto& q : red.domain) {
        // Constant constraints hold on a feasible component.
        if (std::all_of(q.a.begin(), q.a.end(), [](const Rational& x) { return x.is_zero(); })) continue;
        LinearInequality r;
        r.a.assign(f.parameter_count, Rational{0});
        for (std::size_t c = 0; c < red.parameters.size(); ++c) {
            auto pos = std::find(order.begin(), order.end(), red.parameters[c]) - order.begin();
            r.a[pos] = q.a[c];
        }
        r.b = q.b;
        r.strict = q.strict;
        if (std::find(piece.domain.begin(), piece.domain.end(), r) == piece.domain.end())
            piece.domain.push_back(std::move(r));
    }
    f.pieces.push_back(std::move(piece));
    return f;
}

std::map<int, Polynomial> sign_flip(int k, std::uint32_t mask) {
    std::map<int, Polynomial> m;
    for (int t = 0; t < k; ++t)
        if ((mask >> t) & 1u) m[t + 1] = -Polynomial::variable(t + 1);
    return m;
}

/// Finds flips with g(flip(s)) == f(s) for every assignment entry.
std::optional<std::uint32_t> matching_flip(const LieAlgebraFamily& g, const LieAlgebraFamily& f) {
    if (g.parameter_count != f.parameter_count || g.parameter_count > 16) return std::nullopt;
    const int k = g.parameter_count;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
        auto flip = sign_flip(k, mask);
        bool same = true;
        for (std::size_t b = 0; b < g.assignment.size() && same; ++b)
            same = g.assignment[b].substitute(flip) == f.assignment[b];
        if (!same) continue;
        std::vector<Polynomial> gr;
        for (const auto& r : g.residuals) gr.push_back(r.substitute(flip));
        if (!gr.empty()) gr = canonical_residuals(gr);
        if (gr == f.residuals) return mask;
    }
    return std::nullopt;
}

}  // namespace

DiagramClassification classify_with_domain(const NiceDiagram& nd, const FundamentalDomain& fd) {
    DiagramClassification out;
    out.domain = fd;
    out.automorphisms = automorphisms(nd);
    out.orbits = component_orbits(nd, out.domain, out.automorphisms);
    const JacobiSystem symbolic = jacobi_system(StructureVector::symbolic(nd));
    for (const auto& orbit : out.orbits) {
        auto red = reduce_component(nd, out.domain, symbolic, orbit.representative);
        if (!red.feasible) continue;
        auto f = make_family(nd, orbit.representative, red);
        bool merged = false;
        for (auto& g : out.families) {
            auto mask = matching_flip(g, f);
            if (!mask) continue;
            // f(t) = g(flip t): f's constraints on t become constraints on s = flip t.
            for (auto piece : f.pieces) {
                for (auto& q : piece.domain)
                    for (int t = 0; t < g.parameter_count; ++t)
                        if ((*mask >> t) & 1u) q.a[t] = -q.a[t];
                g.pieces.push_back(std::move(piece));
            }
            merged = true;
            break;
        }
        if (!merged) out.families.push_back(std::move(f));
    }
    return out;
}

namespace {

bool has_residuals(const DiagramClassification& c) {
    return std::any_of(c.families.begin(), c.families.end(),
                       [](const LieAlgebraFamily& f) { return !f.residuals.empty(); });
}

/// Calls `visit` on GF(2) row bases in lexicographic order of their index
/// sets until it returns false or `limit` bases have been seen.
void for_each_gf2_basis(const GF2Matrix& m, int size, int limit, const std::function<bool(const std::vector<int>&)>& visit) {
    const int rows = m.row_count();
    std::vector<int> pick;
    std::vector<std::uint64_t> reduced;  // echelon rows of the current prefix
    int seen = 0;
    std::function<bool(int)> rec = [&](int from) {
        if (static_cast<int>(pick.size()) == size) {
            ++seen;
            return visit(pick) && seen < limit;
        }
        for (int r = from; r <= rows - (size - static_cast<int>(pick.size())); ++r) {
            std::uint64_t v = m.rows[r];
            for (auto e : reduced) v = std::min(v, v ^ e);
            if (v == 0) continue;
            pick.push_back(r);
            reduced.push_back(v);
            bool go = rec(r + 1);
            reduced.pop_back();
            pick.pop_back();
            if (!go) return false;
        }
        return true;
    };
    rec(0);
}

}  // namespace

DiagramClassification classify_diagram_detailed(const NiceDiagram& nd, int max_alternatives) {
    auto out = classify_with_domain(nd, fundamental_domain(nd));
    if (!has_residuals(out) || max_alternatives <= 0) return out;
    const GF2Matrix m2 = root_matrix(nd).gf2();
    const auto greedy = out.domain.j2;
    for_each_gf2_basis(m2, static_cast<int>(greedy.size()), max_alternatives, [&](const std::vector<int>& j2) {
        if (j2 == greedy) return true;
        auto alt = classify_with_domain(nd, fundamental_domain(nd, j2));
        if (has_residuals(alt)) return true;
        out = std::move(alt);
        out.alternative_domain = true;
        return false;
    });
    return out;
}

std::vector<LieAlgebraFamily> classify_diagram(const NiceDiagram& nd) {
    return classify_diagram_detailed(nd).families;
}

namespace {

/// Prime factorization of |q| as prime -> exponent (negative for the
/// denominator). Trial division; a cofactor left after 10^6 is kept whole.
std::map<std::int64_t, std::int64_t> factor(const Rational& q) {
    std::map<std::int64_t, std::int64_t> out;
    auto add = [&](std::int64_t x, std::int64_t sgn) {
        if (x < 0) x = -x;
        for (std::int64_t p = 2; p <= 1000000 && p * p <= x; ++p)
            while (x % p == 0) {
                out[p] += sgn;
                x /= p;
            }
        if (x > 1) out[x] += sgn;
    };
    if (q.is_zero()) throw std::domain_error("factor: zero");
    add(q.num(), 1);
    add(q.den(), -1);
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

std::vector<Rational> constants_of(const StructureVector& s) {
    std::vector<Rational> c;
    for (const auto& p : s.coefficients()) {
        if (!p.is_constant()) throw std::invalid_argument("equivalent: structure constants must be parameter-free");
        if (p.is_zero()) throw std::invalid_argument("equivalent: zero structure constant");
        c.push_back(p.constant());
    }
    return c;
}

}  // namespace

bool equivalent(const StructureVector& a, const StructureVector& b) {
    const auto ca = constants_of(a), cb = constants_of(b);
    const auto& da = a.diagram();
    const auto& db = b.diagram();
    if (da.size() != db.size() || da.bracket_count() != db.bracket_count()) return false;
    const RootMatrix m = root_matrix(db);
    const GF2Matrix m2 = m.gf2();
    const auto left = left_kernel_integer(m.rational());
    bool found = false;
    for_each_isomorphism(da.labeled(), db.labeled(), true, [&](const std::vector<int>& sigma) {
        auto sa = permute_coefficients(da, db, sigma, ca);
        std::vector<Rational> r(cb.size());
        for (std::size_t i = 0; i < cb.size(); ++i) r[i] = cb[i] / sa[i];
        if (!image_member_gf2(m2, sign_bits(r))) return true;
        std::vector<std::map<std::int64_t, std::int64_t>> fr;
        for (const auto& x : r) fr.push_back(factor(x));
        for (const auto& v : left) {
            std::map<std::int64_t, std::int64_t> total;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0)
                    for (auto [p, e] : fr[i]) total[p] += v[i] * e;
            for (auto [p, e] : total)
                if (e != 0) return true;
        }
        found = true;
        return false;
    });
    return found;
}

bool family_contains(const LieAlgebraFamily& family, const StructureVector& c) {
    const auto cc = constants_of(c);
    const auto& nd = family.diagram;
    if (c.diagram().size() != nd.size() || c.diagram().bracket_count() != nd.bracket_count()) return false;
    const FundamentalDomain fd = fundamental_domain(nd);
    const RootMatrix m = root_matrix(nd);
    const RationalMatrix mq = m.rational();
    const int nb = nd.bracket_count();

    // |c''_I| = |c_I| prod_K |c_K|^{-q_IK} over K in j.
    std::vector<std::vector<Rational>> q(nb);
    for (int b = 0; b < nb; ++b) {
        auto e = express_in_rows(mq, fd.j, mq.row(b));
        if (!e) throw InternalAlarm("family_contains: row outside the span of j");
        q[b] = *e;
    }
    const int k = family.parameter_count;
    RationalMatrix lin(nb, k);
    for (int b = 0; b < nb; ++b)
        for (int t = 0; t < k; ++t) lin(b, t) = family.assignment[b].linear_coefficient(t + 1);

    bool found = false, irrational = false;
    for_each_isomorphism(c.diagram().labeled(), nd.labeled(), true, [&](const std::vector<int>& sigma) {
        auto x = permute_coefficients(c.diagram(), nd, sigma, cc);
        std::vector<std::map<std::int64_t, std::int64_t>> fx;
        for (const auto& v : x) fx.push_back(factor(v));
        std::vector<Rational> point(nb);
        for (int b = 0; b < nb; ++b) {
            std::map<std::int64_t, Rational> e;
            for (auto [p, v] : fx[b]) e[p] += Rational{v};
            for (std::size_t t = 0; t < fd.j.size(); ++t)
                if (!q[b][t].is_zero())
                    for (auto [p, v] : fx[fd.j[t]]) e[p] -= q[b][t] * Rational{v};
            Rational mag{1};
            for (auto [p, v] : e) {
                if (v.is_zero()) continue;
                if (!v.is_integer()) {
                    irrational = true;
                    return true;
                }
                mag *= Rational{p}.pow(static_cast<int>(v.num()));
            }
            point[b] = mag;
        }
        auto s = sign_bits(x);
        auto delta = sign_correction(m.gf2(), fd.j2, s);
        for (int b = 0; b < nb; ++b)
            if (s[b] ^ delta[b]) point[b] = -point[b];

        std::vector<Rational> rhs(nb);
        for (int b = 0; b < nb; ++b) rhs[b] = point[b] - family.assignment[b].constant();
        auto params = solve_q(lin, rhs);
        if (!params) return true;
        if (family.instantiate(*params) != point) return true;
        if (!family.in_domain(*params)) return true;
        std::map<int, Rational> values;
        for (int t = 0; t < k; ++t) values[t + 1] = (*params)[t];
        for (const auto& r : family.residuals)
            if (!r.evaluate(values).is_zero()) return true;
        found = true;
        return false;
    });
    if (!found && irrational) throw std::domain_error("family_contains: normalization leaves irrational coordinates");
    return found;
}

DiagonalDerivations diagonal_derivations(const NiceDiagram& nd) {
    DiagonalDerivations d;
    const int n = nd.size();
    RationalMatrix m = root_matrix(nd).rational();
    if (m.rows() == 0) m = RationalMatrix(1, n);
    d.kernel = kernel_q(m);
    for (const auto& v : d.kernel) {
        Rational s;
        for (const auto& x : v) s += x;
        if (!s.is_zero()) d.has_nonzero_trace = true;
    }
    return d;
}

}  // namespace nicelie
