#include "nicelie/report.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace nicelie {

std::string digits_string(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += std::to_string(x);
    return s;
}

std::string inequality_string(const LinearInequality& q) {
    int vars = 0, var = -1;
    for (std::size_t t = 0; t < q.a.size(); ++t)
        if (!q.a[t].is_zero()) {
            ++vars;
            var = static_cast<int>(t);
        }
    if (vars == 1) {
        const Rational& a = q.a[var];
        Rational bound = -q.b / a;
        std::string op = a.sign() > 0 ? (q.strict ? " > " : " ≥ ") : (q.strict ? " < " : " ≤ ");
        return parameter_name(var + 1) + op + bound.str();
    }
    Polynomial p{q.b};
    for (std::size_t t = 0; t < q.a.size(); ++t)
        if (!q.a[t].is_zero()) p += Polynomial::variable(static_cast<int>(t) + 1) * q.a[t];
    return p.str(parameter_name) + (q.strict ? " > 0" : " ≥ 0");
}

namespace {

struct Interval {
    std::optional<Rational> lo, hi;
    bool lo_strict = true, hi_strict = true;
};

/// Intersection of one-variable constraints; nullopt when some constraint
/// involves no variable.
std::optional<Interval> interval_of(const std::vector<LinearInequality>& domain) {
    Interval iv;
    for (const auto& q : domain) {
        if (q.a.size() != 1 || q.a[0].is_zero()) return std::nullopt;
        Rational bound = -q.b / q.a[0];
        if (q.a[0].sign() > 0) {
            if (!iv.lo || bound > *iv.lo || (bound == *iv.lo && q.strict)) {
                iv.lo = bound;
                iv.lo_strict = q.strict;
            }
        } else if (!iv.hi || bound < *iv.hi || (bound == *iv.hi && q.strict)) {
            iv.hi = bound;
            iv.hi_strict = q.strict;
        }
    }
    return iv;
}

std::string interval_string(const Interval& iv) {
    const std::string x = parameter_name(1);
    if (!iv.lo && !iv.hi) return "all";
    if (iv.lo && iv.hi && *iv.lo == *iv.hi) return x + " = " + iv.lo->str();
    std::string s;
    if (iv.lo && iv.hi) return iv.lo->str() + (iv.lo_strict ? " < " : " ≤ ") + x + (iv.hi_strict ? " < " : " ≤ ") +
                               iv.hi->str();
    if (iv.lo) return x + (iv.lo_strict ? " > " : " ≥ ") + iv.lo->str();
    return x + (iv.hi_strict ? " < " : " ≤ ") + iv.hi->str();
}

bool lower_before(const Interval& a, const Interval& b) {
    if (!a.lo || !b.lo) return !a.lo && b.lo;
    if (*a.lo != *b.lo) return *a.lo < *b.lo;
    return !a.lo_strict && b.lo_strict;
}

/// Sorted union of intervals, merging those that overlap or touch at a
/// point contained in one of them.
std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), lower_before);
    std::vector<Interval> out;
    for (auto& iv : v) {
        if (!out.empty()) {
            auto& last = out.back();
            bool joins = !last.hi || !iv.lo || *iv.lo < *last.hi ||
                         (*iv.lo == *last.hi && !(iv.lo_strict && last.hi_strict));
            if (joins) {
                if (last.hi && (!iv.hi || *iv.hi > *last.hi || (*iv.hi == *last.hi && !iv.hi_strict))) {
                    last.hi = iv.hi;
                    last.hi_strict = iv.hi_strict;
                }
                continue;
            }
        }
        out.push_back(iv);
    }
    return out;
}

}  // namespace

std::string domain_string(const LieAlgebraFamily& f) {
    for (const auto& piece : f.pieces)
        if (piece.domain.empty()) return "all";
    if (f.parameter_count == 1) {
        std::vector<Interval> ivs;
        for (const auto& piece : f.pieces)
            if (auto iv = interval_of(piece.domain)) ivs.push_back(*iv);
        if (ivs.size() == f.pieces.size()) {
            std::string out;
            for (const auto& iv : merge_intervals(ivs)) out += (out.empty() ? "" : " or ") + interval_string(iv);
            return out;
        }
    }
    std::vector<std::string> pieces;
    for (const auto& piece : f.pieces) {
        std::string s;
        for (const auto& q : piece.domain) s += (s.empty() ? "" : ", ") + inequality_string(q);
        if (std::find(pieces.begin(), pieces.end(), s) == pieces.end()) pieces.push_back(std::move(s));
    }
    std::string out;
    for (const auto& s : pieces) out += (out.empty() ? "" : " or ") + s;
    return out;
}

namespace {

std::string residual_string(const LieAlgebraFamily& f) {
    std::string s;
    for (const auto& p : f.residuals) s += (s.empty() ? "" : ", ") + p.str(parameter_name) + " = 0";
    return s;
}

nlohmann::json diagram_json(const NiceDiagram& nd) {
    nlohmann::json arrows = nlohmann::json::array();
    for (auto [s, t, l] : nd.labeled().labeled_arrows())
        arrows.push_back({{"src", s + 1}, {"dst", t + 1}, {"label", l + 1}});
    return {{"nodes", nd.size()}, {"arrows", arrows}};
}

}  // namespace

std::string format_table(const DimensionReport& r) {
    std::ostringstream os;
    TypeVector current;
    for (const auto& f : r.families) {
        if (f.type != current) {
            current = f.type;
            os << "# Type: " << type_string(current) << '\n';
        }
        const auto& fam = f.family;
        os << f.name << " | " << print_equations(f.equations) << " | lcs " << lcs_string(f.type) << " | ucs "
           << (f.ucs.empty() ? "-" : digits_string(f.ucs)) << " | params " << fam.parameter_count;
        if (fam.parameter_count > 0) os << " | domain " << domain_string(fam);
        if (!fam.residuals.empty()) os << " | residual " << residual_string(fam);
        os << '\n';
    }
    return os.str();
}

std::string format_json(const DimensionReport& r) {
    nlohmann::json families = nlohmann::json::array();
    for (const auto& f : r.families) {
        const auto& fam = f.family;
        nlohmann::json params = nlohmann::json::array(), residuals = nlohmann::json::array(),
                       domain = nlohmann::json::array();
        for (int k = 1; k <= fam.parameter_count; ++k) params.push_back(parameter_name(k));
        for (const auto& p : fam.residuals) residuals.push_back(p.str(parameter_name));
        for (const auto& piece : fam.pieces) {
            nlohmann::json ineqs = nlohmann::json::array();
            for (const auto& q : piece.domain) ineqs.push_back(inequality_string(q));
            domain.push_back(ineqs);
        }
        families.push_back({{"schema", json_schema_tag},
                            {"name", f.name},
                            {"type", f.type},
                            {"lcs", lcs_string(f.type)},
                            {"ucs", f.ucs},
                            {"equations", print_equations(f.equations)},
                            {"parameters", params},
                            {"domain", domain},
                            {"residuals", residuals},
                            {"diagram", diagram_json(fam.diagram)}});
    }
    nlohmann::json doc = {{"schema", json_schema_tag}, {"dimension", r.dimension}, {"families", families}};
    return doc.dump(2) + "\n";
}

std::string format_dot(const DimensionReport& r) {
    std::ostringstream os;
    std::string last;
    for (const auto& f : r.families) {
        std::string name = lcs_string(f.type) + ":" + std::to_string(f.diagram_number);
        if (name == last) continue;
        last = name;
        os << diagram_dot(f.family.diagram, name) << double_arrow_dot(f.family.diagram, name);
    }
    return os.str();
}

std::string format_diagram_table(const std::vector<DiagramRecord>& ds) {
    std::ostringstream os;
    TypeVector current;
    for (const auto& d : ds) {
        if (d.type != current) {
            current = d.type;
            os << "# Type: " << type_string(current) << '\n';
        }
        StructureEquations se = to_equations(StructureVector::ones(d.diagram));
        os << d.name() << " | " << print_equations(se) << " | brackets " << d.diagram.bracket_count() << " | coker "
           << d.coker << '\n';
    }
    return os.str();
}

std::string format_diagram_json(const std::vector<DiagramRecord>& ds) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : ds)
        arr.push_back({{"name", d.name()},
                       {"type", d.type},
                       {"brackets", d.diagram.bracket_count()},
                       {"coker", d.coker},
                       {"diagram", diagram_json(d.diagram)}});
    return nlohmann::json{{"schema", "nicelie.diagram/1"}, {"diagrams", arr}}.dump(2) + "\n";
}

std::string format_diagram_dot(const std::vector<DiagramRecord>& ds) {
    std::ostringstream os;
    for (const auto& d : ds) os << diagram_dot(d.diagram, d.name()) << double_arrow_dot(d.diagram, d.name());
    return os.str();
}

std::vector<NamedLine> read_equation_lines(std::istream& in) {
    std::vector<NamedLine> out;
    std::string line;
    int number = 0;
    auto trim = [](std::string s) {
        auto a = s.find_first_not_of(" \t\r");
        auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        NamedLine nl;
        nl.line = number;
        auto bar = line.find('|');
        if (bar == std::string::npos) {
            nl.name = "line " + std::to_string(number);
            nl.text = line;
        } else {
            nl.name = trim(line.substr(0, bar));
            auto rest = line.substr(bar + 1);
            nl.text = trim(rest.substr(0, rest.find('|')));
        }
        out.push_back(std::move(nl));
    }
    return out;
}

}  // namespace nicelie
