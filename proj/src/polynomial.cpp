#include "nicelie/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nicelie {

Monomial Monomial::variable(int id) {
    if (id < 1 || id > max_variable) throw std::out_of_range("monomial: variable id out of range");
    return Monomial{static_cast<std::uint64_t>(id)};
}

int Monomial::degree() const {
    int d = 0;
    for (std::uint64_t b = bits_; b != 0; b >>= 8) ++d;
    return d;
}

std::vector<int> Monomial::variables() const {
    std::vector<int> v;
    for (std::uint64_t b = bits_; b != 0; b >>= 8) v.push_back(static_cast<int>(b & 0xff));
    return v;
}

int Monomial::exponent(int id) const {
    int e = 0;
    for (std::uint64_t b = bits_; b != 0; b >>= 8)
        if (static_cast<int>(b & 0xff) == id) ++e;
    return e;
}

namespace {

std::uint64_t pack(const std::vector<int>& vars) {
    if (static_cast<int>(vars.size()) > Monomial::max_degree)
        throw std::overflow_error("monomial: degree exceeds 8");
    std::uint64_t b = 0;
    for (std::size_t k = vars.size(); k-- > 0;) b = (b << 8) | static_cast<std::uint64_t>(vars[k]);
    return b;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
    if (bits_ == 0) return o;
    if (o.bits_ == 0) return *this;
    auto a = variables(), b = o.variables();
    std::vector<int> merged;
    merged.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
    return Monomial{pack(merged)};
}

Monomial Monomial::without(int id) const {
    auto v = variables();
    auto it = std::find(v.begin(), v.end(), id);
    if (it == v.end()) throw std::logic_error("monomial: variable not present");
    v.erase(it);
    return Monomial{pack(v)};
}

Polynomial::Polynomial(Rational c) {
    if (!c.is_zero()) terms_.emplace_back(Monomial{}, c);
}

Polynomial Polynomial::variable(int id) {
    Polynomial p;
    p.terms_.emplace_back(Monomial::variable(id), Rational{1});
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0);
}

Rational Polynomial::constant() const {
    if (!terms_.empty() && terms_[0].first.degree() == 0) return terms_[0].second;
    return Rational{0};
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::vector<int> Polynomial::variables() const {
    std::vector<int> v;
    for (const auto& [m, c] : terms_)
        for (int x : m.variables()) v.push_back(x);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool Polynomial::contains(int id) const {
    for (const auto& [m, c] : terms_)
        if (m.contains(id)) return true;
    return false;
}

Rational Polynomial::linear_coefficient(int id) const {
    Monomial target = Monomial::variable(id);
    for (const auto& [m, c] : terms_)
        if (m == target) return c;
    return Rational{0};
}

void Polynomial::add_term(Monomial m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {m, c});
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.cend() || b != o.terms_.cend()) {
        if (b == o.terms_.cend() || (a != terms_.cend() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == terms_.cend() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            Rational s = a->second + b->second;
            if (!s.is_zero()) out.emplace_back(a->first, s);
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
    return p;
}

Polynomial Polynomial::substitute(int id, const Polynomial& value) const {
    if (!contains(id)) return *this;
    return substitute(std::map<int, Polynomial>{{id, value}});
}

Polynomial Polynomial::substitute(const std::map<int, Polynomial>& values) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        Polynomial term{c};
        Monomial kept;
        for (int x : m.variables()) {
            auto it = values.find(x);
            if (it == values.end())
                kept = kept * Monomial::variable(x);
            else
                term = term * it->second;
        }
        if (kept.degree() > 0) {
            Polynomial k;
            k.terms_.emplace_back(kept, Rational{1});
            term = term * k;
        }
        out += term;
    }
    return out;
}

Rational Polynomial::evaluate(const std::map<int, Rational>& values) const {
    Rational s{0};
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int x : m.variables()) {
            auto it = values.find(x);
            if (it == values.end()) throw std::invalid_argument("polynomial: unassigned variable");
            t *= it->second;
        }
        s += t;
    }
    return s;
}

std::string Polynomial::str(const std::function<std::string(int)>& name) const {
    if (terms_.empty()) return "0";
    std::vector<Term> sorted = terms_;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
        return a.first.degree() < b.first.degree();
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : sorted) {
        Rational mag = c.abs();
        if (c.sign() < 0)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        if (m.degree() == 0) {
            os << mag.str();
            continue;
        }
        if (mag != Rational{1}) os << mag.str();
        auto vars = m.variables();
        for (std::size_t k = 0; k < vars.size();) {
            std::size_t e = k;
            while (e < vars.size() && vars[e] == vars[k]) ++e;
            os << name(vars[k]);
            if (e - k > 1) os << '^' << (e - k);
            k = e;
        }
    }
    return os.str();
}

std::string Polynomial::str() const {
    return str([](int id) { return "x" + std::to_string(id); });
}

}  // namespace nicelie
