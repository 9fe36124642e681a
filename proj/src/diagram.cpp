#include "nicelie/diagram.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace nicelie {

Diagram::Diagram(int n) : n_{n}, out_(n, 0), in_(n, 0) {
    if (n < 0 || n > max_nodes) throw StructureError("diagram: node count out of range");
}

void Diagram::add_arrow(int src, int dst) {
    if (src < 0 || src >= n_ || dst < 0 || dst >= n_)
        throw StructureError("diagram: node index out of range");
    if (src == dst) throw StructureError("diagram: loop at node " + std::to_string(src + 1));
    out_[src] |= bit(dst);
    in_[dst] |= bit(src);
}

int Diagram::in_degree(int v) const { return std::popcount(in_[v]); }
int Diagram::out_degree(int v) const { return std::popcount(out_[v]); }

int Diagram::arrow_count() const {
    int c = 0;
    for (NodeMask m : out_) c += std::popcount(m);
    return c;
}

std::vector<std::pair<int, int>> Diagram::arrows() const {
    std::vector<std::pair<int, int>> a;
    for (int s = 0; s < n_; ++s)
        for (int t = 0; t < n_; ++t)
            if (has_arrow(s, t)) a.emplace_back(s, t);
    return a;
}

bool Diagram::is_acyclic() const {
    NodeMask removed = 0;
    const NodeMask all = n_ == 32 ? ~NodeMask{0} : bit(n_) - 1;
    while (removed != all) {
        bool progress = false;
        for (int v = 0; v < n_; ++v) {
            if ((removed >> v) & 1u) continue;
            if ((in_[v] & ~removed) == 0) {
                removed |= bit(v);
                progress = true;
            }
        }
        if (!progress) return false;
    }
    return true;
}

Diagram Diagram::permuted(const std::vector<int>& perm) const {
    Diagram d(n_);
    for (auto [s, t] : arrows()) d.add_arrow(perm[s], perm[t]);
    return d;
}

std::string type_string(const TypeVector& t) {
    std::string s;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(t[k]);
    }
    return s;
}

std::string lcs_string(const TypeVector& t) {
    int total = 0;
    for (int a : t) total += a;
    std::string s;
    for (int a : t) {
        s += std::to_string(total);
        total -= a;
    }
    return s;
}

Filtration lcs_filtration(const Diagram& d) {
    if (!d.is_acyclic()) throw StructureError("diagram has a cycle");
    const int n = d.size();
    Filtration f;
    f.depth.assign(n, 0);
    NodeMask current = n == 0 ? 0 : (n == 32 ? ~NodeMask{0} : bit(n) - 1);
    if (n == 0) return f;
    f.sets.push_back(current);
    while (current != 0) {
        NodeMask next = 0;
        for (int v = 0; v < n; ++v)
            if ((current >> v) & 1u) next |= d.out(v);
        f.type.push_back(std::popcount(current) - std::popcount(next));
        if (next == 0) break;
        for (int v = 0; v < n; ++v)
            if ((next >> v) & 1u) ++f.depth[v];
        f.sets.push_back(next);
        current = next;
    }
    return f;
}

TypeVector lcs_type(const Diagram& d) { return lcs_filtration(d).type; }

LabeledDiagram::LabeledDiagram(Diagram d)
    : diagram_(std::move(d)), labels_(static_cast<std::size_t>(diagram_.size()) * diagram_.size(), no_label) {}

void LabeledDiagram::add_arrow(int src, int dst, int label) {
    diagram_.add_arrow(src, dst);
    set_label(src, dst, label);
}

void LabeledDiagram::set_label(int src, int dst, int label) {
    if (label < no_label || label >= size()) throw StructureError("label out of range");
    labels_[static_cast<std::size_t>(src) * size() + dst] = label;
}

bool LabeledDiagram::is_complete() const {
    for (auto [s, t] : diagram_.arrows())
        if (label(s, t) == no_label) return false;
    return true;
}

std::vector<std::array<int, 3>> LabeledDiagram::labeled_arrows() const {
    std::vector<std::array<int, 3>> a;
    for (auto [s, t] : diagram_.arrows()) a.push_back({s, t, label(s, t)});
    return a;
}

LabeledDiagram LabeledDiagram::permuted(const std::vector<int>& perm) const {
    LabeledDiagram ld(size());
    for (auto [s, t, l] : labeled_arrows()) ld.add_arrow(perm[s], perm[t], l == no_label ? no_label : perm[l]);
    return ld;
}

std::string to_string(Condition c) {
    switch (c) {
        case Condition::N1: return "N1";
        case Condition::N2: return "N2";
        case Condition::N3: return "N3";
        case Condition::EvenIncoming: return "even-incoming";
        case Condition::N4: return "N4";
        case Condition::Acyclic: return "acyclic";
        case Condition::Unlabeled: return "unlabeled";
    }
    return "?";
}

std::optional<Violation> validate_labeled(const LabeledDiagram& ld) {
    const Diagram& d = ld.diagram();
    const int n = d.size();
    auto node = [](int v) { return std::to_string(v + 1); };
    if (!d.is_acyclic()) return Violation{Condition::Acyclic, "diagram has a cycle"};
    for (auto [s, t] : d.arrows())
        if (ld.label(s, t) == no_label)
            return Violation{Condition::Unlabeled, "arrow " + node(s) + "->" + node(t) + " has no label"};
    for (int s = 0; s < n; ++s) {
        NodeMask seen = 0;
        for (int t = 0; t < n; ++t) {
            if (!d.has_arrow(s, t)) continue;
            int l = ld.label(s, t);
            if ((seen >> l) & 1u)
                return Violation{Condition::N1, "two arrows from " + node(s) + " labeled " + node(l)};
            seen |= bit(l);
        }
    }
    for (int t = 0; t < n; ++t) {
        NodeMask seen = 0;
        for (int s = 0; s < n; ++s) {
            if (!d.has_arrow(s, t)) continue;
            int l = ld.label(s, t);
            if ((seen >> l) & 1u)
                return Violation{Condition::N2, "two arrows into " + node(t) + " labeled " + node(l)};
            seen |= bit(l);
        }
    }
    for (auto [s, t] : d.arrows()) {
        int l = ld.label(s, t);
        if (l == s || !d.has_arrow(l, t) || ld.label(l, t) != s)
            return Violation{Condition::N3, "arrow " + node(s) + "->" + node(t) + " labeled " + node(l) +
                                                " lacks partner " + node(l) + "->" + node(t) + " labeled " +
                                                node(s)};
    }
    for (int t = 0; t < n; ++t)
        if (d.in_degree(t) % 2 != 0)
            return Violation{Condition::EvenIncoming, "node " + node(t) + " has odd incoming degree"};
    return std::nullopt;
}

std::string BracketIndex::str() const {
    return std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1);
}

std::string DoubleArrow::str() const {
    std::ostringstream os;
    os << k + 1 << "-{" << i + 1 << ',' << j + 1 << "}->" << h + 1;
    return os.str();
}

NiceDiagram::NiceDiagram(LabeledDiagram ld) : labeled_(std::move(ld)) {
    if (auto v = validate_labeled(labeled_)) throw StructureError(to_string(v->condition) + ": " + v->detail);
    const int n = size();
    for (auto [s, t, l] : labeled_.labeled_arrows())
        if (s < l) brackets_.push_back({s, l, t});
    std::sort(brackets_.begin(), brackets_.end());
    pair_index_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int b = 0; b < bracket_count(); ++b) {
        const auto& br = brackets_[b];
        pair_index_[static_cast<std::size_t>(br.i) * n + br.j] = b;
        pair_index_[static_cast<std::size_t>(br.j) * n + br.i] = b;
    }
}

int NiceDiagram::bracket_of_pair(int i, int j) const {
    return pair_index_[static_cast<std::size_t>(i) * size() + j];
}

std::vector<DoubleArrow> double_arrows(const NiceDiagram& nd) {
    // I = ({i,j},l) composed with J = ({l,k},h), k not in {i,j}.
    std::vector<DoubleArrow> out;
    for (const auto& inner : nd.brackets()) {
        const int l = inner.k;
        for (const auto& outer : nd.brackets()) {
            int k;
            if (outer.i == l)
                k = outer.j;
            else if (outer.j == l)
                k = outer.i;
            else
                continue;
            if (k == inner.i || k == inner.j) continue;
            out.push_back({inner.i, inner.j, k, outer.k, l});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::array<int, 4>> validate_n4(const NiceDiagram& nd) {
    auto arrows = double_arrows(nd);
    std::set<std::array<int, 4>> present;  // (min pair, max pair, source, target)
    for (const auto& a : arrows) present.insert({a.i, a.j, a.k, a.h});
    auto has = [&](int a, int b, int src, int v) {
        return present.count({std::min(a, b), std::max(a, b), src, v}) > 0;
    };
    for (const auto& a : arrows) {
        int count = 1 + has(a.j, a.k, a.i, a.h) + has(a.i, a.k, a.j, a.h);
        if (count == 1) return std::array<int, 4>{a.i, a.j, a.k, a.h};
    }
    return std::nullopt;
}

bool is_nice(const NiceDiagram& nd) { return !validate_n4(nd).has_value(); }

}  // namespace nicelie
