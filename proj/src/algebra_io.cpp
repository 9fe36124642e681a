#include "nicelie/algebra_io.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "nicelie/linalg.hpp"

namespace nicelie {

bool StructureEquations::has_parameters() const { return !parameters().empty(); }

std::vector<int> StructureEquations::parameters() const {
    std::set<int> ids;
    for (const auto& dk : d)
        for (const auto& t : dk)
            for (int v : t.coeff.variables()) ids.insert(v);
    return {ids.begin(), ids.end()};
}

StructureEquations StructureEquations::substitute(const std::map<int, Rational>& values) const {
    std::map<int, Polynomial> subs;
    for (const auto& [id, q] : values) subs[id] = Polynomial{q};
    StructureEquations out = *this;
    for (auto& dk : out.d)
        for (auto& t : dk) {
            t.coeff = t.coeff.substitute(subs);
            if (t.coeff.is_zero())
                throw std::domain_error("substitute: coefficient of e^{" + std::to_string(t.i + 1) +
                                        std::to_string(t.j + 1) + "} vanishes");
        }
    return out;
}

namespace {

constexpr std::string_view lambda_utf8 = "\xCE\xBB";
constexpr std::string_view lambda_tex = "\\lambda";

class Parser {
public:
    explicit Parser(std::string_view s) : s_{s} {}

    StructureEquations equations() {
        StructureEquations se;
        for (;;) {
            se.d.push_back(entry());
            skip_ws();
            if (at_end()) break;
            expect(',');
        }
        const int n = se.size();
        for (const auto& [k, i, j, pos] : indices_)
            if (i >= n || j >= n)
                throw ParseError("index " + std::to_string(std::max(i, j) + 1) + " exceeds dimension " +
                                     std::to_string(n) + " (in de^" + std::to_string(k + 1) + ")",
                                 pos);
        return se;
    }

private:
    struct Seen {
        int k, i, j;
        std::size_t pos;
    };

    bool at_end() const { return p_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[p_]; }
    bool starts_with(std::string_view t) const { return s_.substr(p_).starts_with(t); }

    void skip_ws() {
        while (!at_end() && (s_[p_] == ' ' || s_[p_] == '\t' || s_[p_] == '\r' || s_[p_] == '\n')) ++p_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, p_); }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++p_;
    }

    std::vector<EquationTerm> entry() {
        skip_ws();
        const int k = entry_index_++;
        std::size_t save = p_;
        if (peek() == '0') {
            ++p_;
            skip_ws();
            if (at_end() || peek() == ',') return {};
            p_ = save;
        }
        std::vector<EquationTerm> terms;
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++p_;
            } else if (!first) {
                break;
            }
            std::size_t at = p_;
            EquationTerm t = term();
            if (sign < 0) t.coeff = -t.coeff;
            for (const auto& o : terms)
                if (o.i == t.i && o.j == t.j)
                    throw ParseError("repeated pair e^{" + std::to_string(t.i + 1) + std::to_string(t.j + 1) +
                                         "} in de^" + std::to_string(k + 1),
                                     at);
            indices_.push_back({k, t.i, t.j, at});
            terms.push_back(std::move(t));
            first = false;
            skip_ws();
            if (peek() != '+' && peek() != '-') break;
        }
        std::sort(terms.begin(), terms.end(),
                  [](const EquationTerm& a, const EquationTerm& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
        return terms;
    }

    bool factor_ahead() {
        skip_ws();
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || starts_with(lambda_utf8) ||
               starts_with(lambda_tex);
    }

    EquationTerm term() {
        Polynomial coeff{1};
        bool any = false;
        while (factor_ahead()) {
            coeff = coeff * factor();
            any = true;
            skip_ws();
            if (peek() == '*') ++p_;
        }
        skip_ws();
        if (peek() != 'e') fail(any ? "expected 'e^{' after coefficient" : "expected a term");
        ++p_;
        if (peek() != '^') fail("expected '^'");
        ++p_;
        if (peek() != '{') fail("expected '{'");
        ++p_;
        skip_ws();
        int a = 0, b = 0;
        std::size_t digits_at = p_;
        std::string first = digits();
        skip_ws();
        if (peek() == ',') {
            ++p_;
            skip_ws();
            std::string second = digits();
            if (second.empty()) fail("expected an index after ','");
            a = std::stoi(first);
            b = std::stoi(second);
        } else {
            if (first.size() != 2) {
                p_ = digits_at;
                fail("expected two single-digit indices or a comma");
            }
            a = first[0] - '0';
            b = first[1] - '0';
        }
        expect('}');
        if (a < 1 || b < 1) fail("indices start at 1");
        if (a == b) fail("e^{ii} is zero");
        if (coeff.is_zero()) fail("zero coefficient");
        EquationTerm t;
        t.i = std::min(a, b) - 1;
        t.j = std::max(a, b) - 1;
        t.coeff = a < b ? coeff : -coeff;
        return t;
    }

    std::string digits() {
        std::string out;
        while (std::isdigit(static_cast<unsigned char>(peek()))) out += s_[p_++];
        return out;
    }

    Rational rational() {
        std::string num = digits();
        if (num.empty()) fail("expected a number");
        std::string den = "1";
        if (peek() == '/') {
            ++p_;
            den = digits();
            if (den.empty()) fail("expected a denominator");
        }
        try {
            return Rational{std::stoll(num), std::stoll(den)};
        } catch (const std::exception&) {
            fail("bad number");
        }
    }

    int parameter() {
        if (starts_with(lambda_utf8))
            p_ += lambda_utf8.size();
        else
            p_ += lambda_tex.size();
        // Subscripts: ₀..₉ (E2 82 80..89), _n or _{n}.
        std::string sub;
        while (starts_with("\xE2\x82") && p_ + 2 < s_.size() &&
               static_cast<unsigned char>(s_[p_ + 2]) >= 0x80 && static_cast<unsigned char>(s_[p_ + 2]) <= 0x89) {
            sub += static_cast<char>('0' + (static_cast<unsigned char>(s_[p_ + 2]) - 0x80));
            p_ += 3;
        }
        if (sub.empty() && peek() == '_') {
            ++p_;
            bool braced = peek() == '{';
            if (braced) ++p_;
            sub = digits();
            if (sub.empty()) fail("expected a parameter subscript");
            if (braced) expect('}');
        }
        int id = sub.empty() ? 1 : std::stoi(sub);
        if (id < 1 || id > Monomial::max_variable) fail("parameter subscript out of range");
        return id;
    }

    Polynomial power(Polynomial base) {
        skip_ws();
        if (peek() != '^' || starts_with("^{")) return base;
        ++p_;
        std::string e = digits();
        if (e.empty()) fail("expected an exponent");
        Polynomial out{1};
        for (int k = std::stoi(e); k > 0; --k) out = out * base;
        return out;
    }

    Polynomial factor() {
        skip_ws();
        if (peek() == '(') {
            ++p_;
            Polynomial inner = polynomial();
            expect(')');
            return power(std::move(inner));
        }
        if (starts_with(lambda_utf8) || starts_with(lambda_tex)) return power(Polynomial::variable(parameter()));
        return Polynomial{rational()};
    }

    Polynomial polynomial() {
        Polynomial sum;
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++p_;
            } else if (!first) {
                break;
            }
            if (!factor_ahead()) fail("expected a coefficient");
            Polynomial t{1};
            while (factor_ahead()) {
                t = t * factor();
                skip_ws();
                if (peek() == '*') ++p_;
            }
            sum += sign > 0 ? t : -t;
            first = false;
            skip_ws();
            if (peek() != '+' && peek() != '-') break;
        }
        return sum;
    }

    std::string_view s_;
    std::size_t p_ = 0;
    int entry_index_ = 0;
    std::vector<Seen> indices_;
};

std::string index_pair(int i, int j, bool wide) {
    if (wide) return "e^{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
    return "e^{" + std::to_string(i + 1) + std::to_string(j + 1) + "}";
}

}  // namespace

StructureEquations parse_equations(std::string_view text) { return Parser(text).equations(); }

std::string parameter_name(int id) {
    std::string s{lambda_utf8};
    if (id == 1) return s;
    for (char c : std::to_string(id)) {
        s += "\xE2\x82";
        s += static_cast<char>(0x80 + (c - '0'));
    }
    return s;
}

std::string print_equations(const StructureEquations& se) {
    const bool wide = se.size() > 9;
    std::ostringstream os;
    for (int k = 0; k < se.size(); ++k) {
        if (k) os << ',';
        if (se.d[k].empty()) {
            os << '0';
            continue;
        }
        bool first = true;
        for (const auto& t : se.d[k]) {
            const Polynomial& c = t.coeff;
            bool neg = false;
            std::string body;
            if (c.is_constant()) {
                Rational q = c.constant();
                neg = q.sign() < 0;
                if (q.abs() != Rational{1}) body = q.abs().str();
            } else if (c.terms().size() == 1) {
                neg = c.terms().front().second.sign() < 0;
                body = (neg ? -c : c).str(parameter_name);
            } else {
                body = "(" + c.str(parameter_name) + ")";
            }
            if (first)
                os << (neg ? (body.empty() ? "- " : "-") : "");
            else
                os << (neg ? '-' : '+');
            if (!body.empty()) os << body << ' ';
            os << index_pair(t.i, t.j, wide);
            first = false;
        }
    }
    return os.str();
}

StructureEquations to_equations(const StructureVector& c) {
    const auto& nd = c.diagram();
    StructureEquations se;
    se.d.resize(nd.size());
    for (int b = 0; b < nd.bracket_count(); ++b) {
        const auto& br = nd.brackets()[b];
        se.d[br.k].push_back({c[b], br.i, br.j});
    }
    for (auto& dk : se.d)
        std::sort(dk.begin(), dk.end(),
                  [](const EquationTerm& a, const EquationTerm& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    return se;
}

StructureEquations to_equations(const LieAlgebraFamily& f) {
    return to_equations(StructureVector(f.diagram, f.assignment));
}

Verification verify_nice(const StructureEquations& se) {
    Verification out;
    const int n = se.size();
    auto pair_text = [](int i, int j) { return "{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}"; };
    if (n > max_nodes) {
        out.message = "dimension above " + std::to_string(max_nodes) + " is not supported";
        return out;
    }
    LabeledDiagram ld(n);
    std::map<std::pair<int, int>, int> target;
    for (int k = 0; k < n; ++k)
        for (const auto& t : se.d[k]) {
            if (t.coeff.is_zero()) {
                out.message = "zero coefficient on e^" + pair_text(t.i, t.j);
                return out;
            }
            if (t.i == k || t.j == k) {
                out.message = "not nilpotent: de^" + std::to_string(k + 1) + " contains e^" + pair_text(t.i, t.j);
                return out;
            }
            auto [it, fresh] = target.emplace(std::pair(t.i, t.j), k);
            if (!fresh) {
                out.message = "not nice: pair " + pair_text(t.i, t.j) + " maps to two targets (" +
                              std::to_string(it->second + 1) + " and " + std::to_string(k + 1) + ")";
                return out;
            }
            for (auto [src, lab] : {std::pair(t.i, t.j), std::pair(t.j, t.i)}) {
                if (ld.diagram().has_arrow(src, k)) {
                    out.message = "not nice: e_" + std::to_string(src + 1) + " ⌟ de^" + std::to_string(k + 1) +
                                  " is not a multiple of a single element";
                    return out;
                }
                ld.add_arrow(src, k, lab);
            }
        }
    if (!ld.diagram().is_acyclic()) {
        out.message = "not nilpotent: the diagram has a cycle";
        return out;
    }
    if (auto v = validate_labeled(ld)) {
        out.message = "not nice: " + to_string(v->condition) + ": " + v->detail;
        return out;
    }
    NiceDiagram nd(ld);
    std::vector<Polynomial> coeffs(nd.bracket_count());
    for (int b = 0; b < nd.bracket_count(); ++b) {
        const auto& br = nd.brackets()[b];
        for (const auto& t : se.d[br.k])
            if (t.i == br.i && t.j == br.j) coeffs[b] = t.coeff;
    }
    StructureVector c(nd, std::move(coeffs));
    out.jacobi = jacobi_system(c);
    out.algebra = c;
    if (!out.jacobi.empty()) {
        if (se.has_parameters()) {
            out.status = Verification::Status::Constrained;
            out.message = "Jacobi holds subject to " + std::to_string(out.jacobi.equations.size()) + " constraint(s)";
        } else {
            const auto& e = out.jacobi.equations.front();
            out.status = Verification::Status::JacobiFails;
            out.message = "Jacobi fails: coefficient of " + e.key() + " is " + e.lhs.str(parameter_name);
        }
        return out;
    }
    if (auto q = validate_n4(nd)) {
        out.status = Verification::Status::NotNice;
        out.message = "not nice: N4 fails at nodes " + std::to_string((*q)[0] + 1) + "," + std::to_string((*q)[1] + 1) +
                      "," + std::to_string((*q)[2] + 1) + "," + std::to_string((*q)[3] + 1);
        return out;
    }
    out.status = Verification::Status::Nice;
    out.message = "nice, Jacobi OK";
    return out;
}

namespace {

/// [e_a, e_b] expressed through structure constants: bracket[a][b][k].
std::vector<std::vector<std::vector<Rational>>> brackets_of(const StructureEquations& se) {
    if (se.has_parameters()) throw std::invalid_argument("parameters must be instantiated first");
    const int n = se.size();
    std::vector<std::vector<std::vector<Rational>>> br(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
    for (int k = 0; k < n; ++k)
        for (const auto& t : se.d[k]) {
            // de^k(e_i, e_j) = -e^k([e_i, e_j]); the overall sign is irrelevant
            // for the subspaces computed here.
            br[t.i][t.j][k] = t.coeff.constant();
            br[t.j][t.i][k] = -t.coeff.constant();
        }
    return br;
}

/// Rows spanning the annihilator of the row space of `basis` in Q^n.
std::vector<std::vector<Rational>> annihilator(const std::vector<std::vector<Rational>>& basis, int n) {
    RationalMatrix m(static_cast<int>(basis.size()), n);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = basis[r][c];
    if (basis.empty()) {
        std::vector<std::vector<Rational>> id(n, std::vector<Rational>(n));
        for (int c = 0; c < n; ++c) id[c][c] = Rational{1};
        return id;
    }
    return kernel_q(m);
}

}  // namespace

std::vector<int> ucs_dims(const StructureEquations& se) {
    const int n = se.size();
    const auto br = brackets_of(se);
    std::vector<int> dims;
    std::vector<std::vector<Rational>> z;  // basis of z_i
    while (static_cast<int>(z.size()) < n) {
        // x in z_{i+1} iff phi([x, e_a]) = 0 for every a and phi vanishing on z_i.
        auto phis = annihilator(z, n);
        std::vector<std::vector<Rational>> rows;
        for (int a = 0; a < n; ++a)
            for (const auto& phi : phis) {
                std::vector<Rational> row(n);
                for (int x = 0; x < n; ++x)
                    for (int k = 0; k < n; ++k)
                        if (!br[x][a][k].is_zero() && !phi[k].is_zero()) row[x] += phi[k] * br[x][a][k];
                rows.push_back(std::move(row));
            }
        RationalMatrix m(static_cast<int>(rows.size()), n);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = rows[r][c];
        auto next = rows.empty() ? annihilator({}, n) : kernel_q(m);
        if (next.size() <= z.size()) throw std::domain_error("ucs_dims: upper central series stalls (not nilpotent)");
        z = std::move(next);
        dims.push_back(static_cast<int>(z.size()));
    }
    return dims;
}

std::vector<int> lcs_dims(const StructureEquations& se) {
    const int n = se.size();
    const auto br = brackets_of(se);
    std::vector<int> dims{n};
    std::vector<std::vector<Rational>> g;  // basis of g^i
    for (int c = 0; c < n; ++c) {
        std::vector<Rational> e(n);
        e[c] = Rational{1};
        g.push_back(std::move(e));
    }
    while (!g.empty()) {
        std::vector<std::vector<Rational>> span;
        for (int a = 0; a < n; ++a)
            for (const auto& v : g) {
                std::vector<Rational> w(n);
                for (int x = 0; x < n; ++x)
                    if (!v[x].is_zero())
                        for (int k = 0; k < n; ++k)
                            if (!br[a][x][k].is_zero()) w[k] += v[x] * br[a][x][k];
                span.push_back(std::move(w));
            }
        RationalMatrix m(static_cast<int>(span.size()), n);
        for (std::size_t r = 0; r < span.size(); ++r)
            for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = span[r][c];
        auto pivots = row_reduce(m);
        std::vector<std::vector<Rational>> next;
        for (std::size_t r = 0; r < pivots.size(); ++r) next.push_back(m.row(static_cast<int>(r)));
        if (next.size() >= g.size()) throw std::domain_error("lcs_dims: lower central series stalls (not nilpotent)");
        g = std::move(next);
        if (!g.empty()) dims.push_back(static_cast<int>(g.size()));
    }
    return dims;
}

std::string lcs_name(const StructureEquations& se) {
    auto v = verify_nice(se);
    if (!v.algebra) throw std::invalid_argument("lcs_name: " + v.message);
    return lcs_string(lcs_type(v.algebra->diagram().diagram()));
}

std::string diagram_dot(const NiceDiagram& nd, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    for (int v = 0; v < nd.size(); ++v) os << "  " << v + 1 << ";\n";
    for (auto [s, t, l] : nd.labeled().labeled_arrows())
        os << "  " << s + 1 << " -> " << t + 1 << " [label=\"" << l + 1 << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string double_arrow_dot(const NiceDiagram& nd, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << " double\" {\n";
    for (int v = 0; v < nd.size(); ++v) os << "  " << v + 1 << ";\n";
    for (const auto& da : double_arrows(nd))
        os << "  " << da.k + 1 << " -> " << da.h + 1 << " [label=\"" << da.i + 1 << "," << da.j + 1 << "\", via=\""
           << da.l + 1 << "\"];\n";
    os << "}\n";
    return os.str();
}

namespace {

/// Body of the first digraph block.
std::string first_graph(std::string_view dot) {
    auto open = dot.find('{');
    auto close = dot.find('}', open == std::string_view::npos ? 0 : open);
    if (open == std::string_view::npos || close == std::string_view::npos)
        throw ParseError("dot: no digraph block", 0);
    return std::string(dot.substr(open + 1, close - open - 1));
}

}  // namespace

LabeledDiagram labeled_diagram_from_dot(std::string_view dot) {
    const std::string body = first_graph(dot);
    static const std::regex node_re(R"(^\s*(\d+)\s*;)");
    static const std::regex arrow_re(R"re(^\s*(\d+)\s*->\s*(\d+)\s*\[\s*label\s*=\s*"(\d+)"\s*\]\s*;)re");
    int n = 0;
    std::vector<std::array<int, 3>> arrows;
    std::istringstream is(body);
    std::string line;
    while (std::getline(is, line)) {
        std::smatch m;
        if (std::regex_search(line, m, arrow_re)) {
            arrows.push_back({std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])});
            n = std::max({n, arrows.back()[0], arrows.back()[1], arrows.back()[2]});
        } else if (std::regex_search(line, m, node_re)) {
            n = std::max(n, std::stoi(m[1]));
        }
    }
    LabeledDiagram ld(n);
    for (auto [s, t, l] : arrows) ld.add_arrow(s - 1, t - 1, l - 1);
    return ld;
}

std::vector<DoubleArrow> double_arrows_from_dot(std::string_view dot) {
    const std::string body = first_graph(dot);
    static const std::regex re(
        R"re(^\s*(\d+)\s*->\s*(\d+)\s*\[\s*label\s*=\s*"(\d+),(\d+)"\s*,\s*via\s*=\s*"(\d+)"\s*\]\s*;)re");
    std::vector<DoubleArrow> out;
    std::istringstream is(body);
    std::string line;
    while (std::getline(is, line)) {
        std::smatch m;
        if (!std::regex_search(line, m, re)) continue;
        DoubleArrow da;
        da.k = std::stoi(m[1]) - 1;
        da.h = std::stoi(m[2]) - 1;
        da.i = std::stoi(m[3]) - 1;
        da.j = std::stoi(m[4]) - 1;
        da.l = std::stoi(m[5]) - 1;
        out.push_back(da);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nicelie
