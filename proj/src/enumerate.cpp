#include "nicelie/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <stdexcept>

#include "nicelie/isomorphism.hpp"

namespace nicelie {

std::vector<TypeVector> compositions(int n) {
    if (n <= 0) throw std::invalid_argument("compositions: n must be positive");
    std::vector<TypeVector> out;
    TypeVector current;
    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
            if (current.size() == 1 || current.front() >= 2) out.push_back(current);
            return;
        }
        for (int a = 1; a <= remaining; ++a) {
            current.push_back(a);
            rec(remaining - a);
            current.pop_back();
        }
    };
    rec(n);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Diagram> extend_by_layer(const Diagram& base, int a1, bool even_incoming) {
    const int m = base.size();
    if (a1 < 1) throw std::invalid_argument("extend_by_layer: layer size must be positive");
    if (m + a1 > max_nodes) throw std::invalid_argument("extend_by_layer: too many nodes");
    const NodeMask full = bit(m) - 1;
    NodeMask parity = 0, sources = 0;
    for (int v = 0; v < m; ++v) {
        if (base.in_degree(v) % 2 != 0) parity |= bit(v);
        if (base.in_degree(v) == 0) sources |= bit(v);
    }

    Diagram shifted(m + a1);
    for (auto [s, t] : base.arrows()) shifted.add_arrow(s + a1, t + a1);

    std::vector<Diagram> out;
    std::vector<NodeMask> subsets(a1, 0);
    auto emit = [&]() {
        Diagram d = shifted;
        for (int t = 0; t < a1; ++t)
            for (int v = 0; v < m; ++v)
                if ((subsets[t] >> v) & 1u) d.add_arrow(t, v + a1);
        out.push_back(std::move(d));
    };
    std::function<void(int, NodeMask, NodeMask, NodeMask)> rec = [&](int t, NodeMask lower, NodeMask acc_union,
                                                                      NodeMask acc_xor) {
        if (even_incoming && t == a1 - 1) {
            NodeMask last = parity ^ acc_xor;
            if (last < lower || ((acc_union | last) & sources) != sources) return;
            subsets[t] = last;
            emit();
            return;
        }
        if (t == a1) {
            if ((acc_union & sources) == sources) emit();
            return;
        }
        for (NodeMask s = lower; s <= full; ++s) {
            subsets[t] = s;
            rec(t + 1, s, acc_union | s, acc_xor ^ s);
            if (s == full) break;
        }
    };
    rec(0, 0, 0, 0);
    return out;
}

namespace {

struct BucketKey {
    std::uint64_t sum;
    std::vector<std::uint64_t> sorted;
    friend auto operator<=>(const BucketKey&, const BucketKey&) = default;
};

BucketKey bucket_key(const std::vector<std::uint64_t>& h) {
    BucketKey k{0, h};
    for (auto x : h) k.sum += x;
    std::sort(k.sorted.begin(), k.sorted.end());
    return k;
}

/// Marks keep[i] for the first member of each isomorphism class; `same`
/// decides isomorphism between two items of one bucket.
template <typename Key>
std::vector<char> dedupe_by_buckets(const std::vector<Key>& keys, const std::function<bool(std::size_t, std::size_t)>& same,
                                    Parallelism par) {
    std::map<Key, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < keys.size(); ++i) buckets[keys[i]].push_back(i);
    std::vector<const std::vector<std::size_t>*> groups;
    groups.reserve(buckets.size());
    for (const auto& [k, members] : buckets) groups.push_back(&members);

    std::vector<char> keep(keys.size(), 0);
    auto process = [&](const std::vector<std::size_t>& members) {
        std::vector<std::size_t> reps;
        for (std::size_t idx : members) {
            bool dup = false;
            for (std::size_t r : reps)
                if (same(r, idx)) {
                    dup = true;
                    break;
                }
            if (!dup) {
                reps.push_back(idx);
                keep[idx] = 1;
            }
        }
    };
    const long count = static_cast<long>(groups.size());
    if (par.serial()) {
        for (long g = 0; g < count; ++g) process(*groups[g]);
    } else {
#pragma omp parallel for schedule(dynamic, 16) num_threads(par.jobs)
        for (long g = 0; g < count; ++g) process(*groups[g]);
    }
    return keep;
}

}  // namespace

std::vector<Diagram> dedupe_diagrams(const std::vector<Diagram>& ds, Parallelism par) {
    std::vector<LabeledDiagram> as_labeled;
    as_labeled.reserve(ds.size());
    for (const auto& d : ds) as_labeled.emplace_back(d);
    std::vector<std::vector<std::uint64_t>> inv(ds.size());
    std::vector<BucketKey> keys(ds.size());
    const long count = static_cast<long>(ds.size());
    auto prepare = [&](long i) {
        keys[i] = bucket_key(node_hashes(ds[i]));
        inv[i] = refined_invariants(as_labeled[i], false);
    };
    if (par.serial()) {
        for (long i = 0; i < count; ++i) prepare(i);
    } else {
#pragma omp parallel for schedule(static) num_threads(par.jobs)
        for (long i = 0; i < count; ++i) prepare(i);
    }
    auto same = [&](std::size_t a, std::size_t b) {
        bool found = false;
        for_each_isomorphism(as_labeled[a], inv[a], as_labeled[b], inv[b], false, [&](const std::vector<int>&) {
            found = true;
            return false;
        });
        return found;
    };
    auto keep = dedupe_by_buckets<BucketKey>(keys, same, par);
    std::vector<Diagram> out;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (keep[i]) out.push_back(ds[i]);
    return out;
}

std::vector<Diagram> dedupe_diagrams_brute_force(const std::vector<Diagram>& ds) {
    std::vector<Diagram> out;
    for (const auto& d : ds) {
        bool dup = false;
        for (const auto& r : out)
            if (are_isomorphic_brute_force(LabeledDiagram(r), LabeledDiagram(d), false)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(d);
    }
    return out;
}

std::vector<Diagram> enumerate_diagrams(const TypeVector& type, Parallelism par, DiagramCounts* counts) {
    if (type.empty()) throw std::invalid_argument("enumerate_diagrams: empty type");
    for (int a : type)
        if (a < 1) throw std::invalid_argument("enumerate_diagrams: layer sizes must be positive");
    std::vector<Diagram> current{Diagram(type.back())};
    for (int layer = static_cast<int>(type.size()) - 2; layer >= 0; --layer) {
        const bool last = layer == 0;
        const long count = static_cast<long>(current.size());
        std::vector<std::vector<Diagram>> parts(current.size());
        if (par.serial()) {
            for (long b = 0; b < count; ++b) parts[b] = extend_by_layer(current[b], type[layer], last);
        } else {
#pragma omp parallel for schedule(dynamic, 4) num_threads(par.jobs)
            for (long b = 0; b < count; ++b) parts[b] = extend_by_layer(current[b], type[layer], last);
        }
        std::vector<Diagram> next;
        for (auto& p : parts)
            for (auto& d : p) next.push_back(std::move(d));
        const std::size_t before = next.size();
        current = dedupe_diagrams(next, par);
        if (counts) {
            counts->stages.push_back({TypeVector(type.begin() + layer, type.end()), before, current.size()});
            if (last) counts->before_dedup = before;
        }
    }
    if (type.size() == 1 && counts) counts->before_dedup = current.size();
    if (counts) counts->after_dedup = current.size();
    return current;
}

std::vector<Diagram> enumerate_diagrams(int n, Parallelism par) {
    std::vector<Diagram> out;
    for (const auto& t : compositions(n))
        for (auto& d : enumerate_diagrams(t, par)) out.push_back(std::move(d));
    return out;
}

namespace {

void label_recursively(LabeledDiagram& partial, std::vector<NodeMask>& unlabeled_in,
                       std::vector<NodeMask>& used_labels_out, std::vector<LabeledDiagram>& out) {
    const int n = partial.size();
    int j = -1, best = 0;
    for (int v = 0; v < n; ++v) {
        int c = std::popcount(unlabeled_in[v]);
        if (c != 0 && (j < 0 || c < best)) {
            j = v;
            best = c;
        }
    }
    if (j < 0) {
        out.push_back(partial);
        return;
    }
    const NodeMask vj = unlabeled_in[j];
    const int i = std::countr_zero(vj);
    for (int w = i + 1; w < n; ++w) {
        if (!((vj >> w) & 1u)) continue;
        // w must not already emit an arrow labeled i, nor i one labeled w.
        if ((used_labels_out[w] >> i) & 1u) continue;
        if ((used_labels_out[i] >> w) & 1u) continue;
        partial.set_label(w, j, i);
        partial.set_label(i, j, w);
        unlabeled_in[j] &= ~(bit(i) | bit(w));
        used_labels_out[w] |= bit(i);
        used_labels_out[i] |= bit(w);
        label_recursively(partial, unlabeled_in, used_labels_out, out);
        used_labels_out[w] &= ~bit(i);
        used_labels_out[i] &= ~bit(w);
        unlabeled_in[j] |= bit(i) | bit(w);
        partial.set_label(w, j, no_label);
        partial.set_label(i, j, no_label);
    }
}

}  // namespace

std::vector<LabeledDiagram> enumerate_labelings(const Diagram& d) {
    LabeledDiagram partial(d);
    std::vector<NodeMask> unlabeled_in(d.size()), used(d.size(), 0);
    for (int v = 0; v < d.size(); ++v) unlabeled_in[v] = d.in(v);
    std::vector<LabeledDiagram> out;
    label_recursively(partial, unlabeled_in, used, out);
    return out;
}

std::vector<LabeledDiagram> enumerate_labelings_brute_force(const Diagram& d) {
    // Every arrow s -> t tries every node as label; only nodes with an arrow
    // into t can ever satisfy N3, so others are skipped.
    const auto arrows = d.arrows();
    std::vector<LabeledDiagram> out;
    LabeledDiagram ld(d);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == arrows.size()) {
            if (!validate_labeled(ld)) out.push_back(ld);
            return;
        }
        auto [s, t] = arrows[k];
        for (int l = 0; l < d.size(); ++l) {
            if (!d.has_arrow(l, t)) continue;
            ld.set_label(s, t, l);
            rec(k + 1);
        }
        ld.set_label(s, t, no_label);
    };
    rec(0);
    return out;
}

std::vector<NiceDiagram> dedupe_labeled(const std::vector<LabeledDiagram>& ls) {
    std::vector<NiceDiagram> candidates;
    for (const auto& l : ls) {
        NiceDiagram nd(l);
        if (is_nice(nd)) candidates.push_back(std::move(nd));
    }
    std::vector<std::vector<std::uint64_t>> inv;
    std::vector<BucketKey> keys;
    for (const auto& c : candidates) {
        inv.push_back(refined_invariants(c.labeled(), true));
        keys.push_back(bucket_key(inv.back()));
    }
    auto same = [&](std::size_t a, std::size_t b) {
        bool found = false;
        for_each_isomorphism(candidates[a].labeled(), inv[a], candidates[b].labeled(), inv[b], true,
                             [&](const std::vector<int>&) {
                                 found = true;
                                 return false;
                             });
        return found;
    };
    auto keep = dedupe_by_buckets<BucketKey>(keys, same, Parallelism{1});
    std::vector<NiceDiagram> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (keep[i]) out.push_back(std::move(candidates[i]));
    return out;
}

std::vector<NiceDiagram> nice_diagrams_of_type(const TypeVector& type, Parallelism par) {
    auto diagrams = enumerate_diagrams(type, par);
    const long count = static_cast<long>(diagrams.size());
    std::vector<std::vector<NiceDiagram>> parts(diagrams.size());
    auto work = [&](long k) { parts[k] = dedupe_labeled(enumerate_labelings(diagrams[k])); };
    if (par.serial()) {
        for (long k = 0; k < count; ++k) work(k);
    } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(par.jobs)
        for (long k = 0; k < count; ++k) work(k);
    }
    std::vector<NiceDiagram> out;
    for (auto& p : parts)
        for (auto& nd : p) out.push_back(std::move(nd));
    return out;
}

std::vector<TypedNiceDiagrams> enumerate_nice_diagrams(int n, Parallelism par,
                                                       const std::optional<TypeVector>& type_filter) {
    std::vector<TypedNiceDiagrams> out;
    for (const auto& t : compositions(n)) {
        if (type_filter && *type_filter != t) continue;
        out.push_back({t, nice_diagrams_of_type(t, par)});
    }
    return out;
}

}  // namespace nicelie
