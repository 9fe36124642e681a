#include "nicelie/isomorphism.hpp"

#include <algorithm>
#include <numeric>

#include "nicelie/jacobi.hpp"

namespace nicelie {

namespace {

constexpr std::uint64_t rolling_base = 0x100000001b3ULL;

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * rolling_base;
}

std::uint64_t finalize(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

}  // namespace

std::vector<std::uint64_t> node_hashes(const Diagram& d) {
    const int n = d.size();
    // paths_in[v] = concatenated arrows of the current length ending at v.
    std::vector<std::uint64_t> paths_in(n), paths_out(n);
    for (int v = 0; v < n; ++v) {
        paths_in[v] = static_cast<std::uint64_t>(d.in_degree(v));
        paths_out[v] = static_cast<std::uint64_t>(d.out_degree(v));
    }
    std::vector<std::uint64_t> h_in(n, 0), h_out(n, 0);
    for (int len = 1; len < std::max(n, 1); ++len) {
        for (int v = 0; v < n; ++v) {
            h_in[v] = h_in[v] * rolling_base + paths_in[v];
            h_out[v] = h_out[v] * rolling_base + paths_out[v];
        }
        std::vector<std::uint64_t> next_in(n, 0), next_out(n, 0);
        for (auto [s, t] : d.arrows()) {
            next_in[t] += paths_in[s];
            next_out[s] += paths_out[t];
        }
        paths_in.swap(next_in);
        paths_out.swap(next_out);
    }
    std::vector<std::uint64_t> h(n);
    for (int v = 0; v < n; ++v) h[v] = finalize(h_in[v] * rolling_base + h_out[v]);
    return h;
}

std::uint64_t diagram_hash(const Diagram& d) {
    std::uint64_t s = 0;
    for (auto x : node_hashes(d)) s += x;
    return s;
}

std::vector<std::uint64_t> refined_invariants(const LabeledDiagram& ld, bool use_labels) {
    const Diagram& d = ld.diagram();
    const int n = d.size();
    auto inv = node_hashes(d);
    if (use_labels && ld.is_complete() && n > 0) {
        // Double-arrow incidence: as pair member, as source, as target.
        try {
            NiceDiagram nd(ld);
            std::vector<std::uint64_t> as_pair(n, 0), as_source(n, 0), as_target(n, 0);
            for (const auto& a : double_arrows(nd)) {
                ++as_pair[a.i];
                ++as_pair[a.j];
                ++as_source[a.k];
                ++as_target[a.h];
            }
            for (int v = 0; v < n; ++v) inv[v] = mix(mix(mix(inv[v], as_pair[v]), as_source[v]), as_target[v]);
        } catch (const StructureError&) {
        }
    }
    for (int round = 0; round < 2; ++round) {
        std::vector<std::uint64_t> next(n);
        auto label_inv = [&](int s, int t) -> std::uint64_t {
            int l = ld.label(s, t);
            return l == no_label ? 0xabcULL : inv[l];
        };
        for (int v = 0; v < n; ++v) {
            std::vector<std::uint64_t> outs, ins;
            for (int u = 0; u < n; ++u) {
                if (d.has_arrow(v, u)) outs.push_back(use_labels ? mix(inv[u], label_inv(v, u)) : inv[u]);
                if (d.has_arrow(u, v)) ins.push_back(use_labels ? mix(inv[u], label_inv(u, v)) : inv[u]);
            }
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            std::uint64_t h = mix(inv[v], 0x51);
            for (auto x : outs) h = mix(h, x);
            h = mix(h, 0x77);
            for (auto x : ins) h = mix(h, x);
            next[v] = finalize(h);
        }
        inv.swap(next);
    }
    return inv;
}

void for_each_isomorphism(const LabeledDiagram& a, const std::vector<std::uint64_t>& inv_a, const LabeledDiagram& b,
                          const std::vector<std::uint64_t>& inv_b, bool use_labels,
                          const std::function<bool(const std::vector<int>&)>& visit) {
    const int n = a.size();
    if (b.size() != n) return;
    const Diagram& da = a.diagram();
    const Diagram& db = b.diagram();
    if (da.arrow_count() != db.arrow_count()) return;
    {
        auto sa = inv_a, sb = inv_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return;
    }
    if (n == 0) {
        visit({});
        return;
    }

    // Map rarest invariant classes first; ties broken by node index.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> class_size(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (inv_a[u] == inv_a[v]) ++class_size[v];
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return class_size[x] < class_size[y]; });
    std::vector<int> pos(n);
    for (int p = 0; p < n; ++p) pos[order[p]] = p;

    // Labeled arrows checked at the depth where their last node gets mapped.
    std::vector<std::vector<std::array<int, 3>>> label_checks(n);
    if (use_labels)
        for (auto [s, t, l] : a.labeled_arrows()) {
            int depth = std::max(pos[s], pos[t]);
            if (l != no_label) depth = std::max(depth, pos[l]);
            label_checks[depth].push_back({s, t, l});
        }

    std::vector<int> f(n, -1);
    std::vector<bool> used(n, false);
    bool stop = false;

    std::function<void(int)> extend = [&](int depth) {
        if (stop) return;
        if (depth == n) {
            if (!visit(f)) stop = true;
            return;
        }
        const int x = order[depth];
        for (int y = 0; y < n && !stop; ++y) {
            if (used[y] || inv_b[y] != inv_a[x]) continue;
            bool ok = true;
            for (int p = 0; p < depth && ok; ++p) {
                const int u = order[p];
                if (da.has_arrow(x, u) != db.has_arrow(y, f[u]) || da.has_arrow(u, x) != db.has_arrow(f[u], y))
                    ok = false;
            }
            if (!ok) continue;
            f[x] = y;
            for (const auto& [s, t, l] : label_checks[depth]) {
                int want = l == no_label ? no_label : f[l];
                if (b.label(f[s], f[t]) != want) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used[y] = true;
                extend(depth + 1);
                used[y] = false;
            }
            f[x] = -1;
        }
    };
    extend(0);
}

void for_each_isomorphism(const LabeledDiagram& a, const LabeledDiagram& b, bool use_labels,
                          const std::function<bool(const std::vector<int>&)>& visit) {
    for_each_isomorphism(a, refined_invariants(a, use_labels), b, refined_invariants(b, use_labels), use_labels,
                         visit);
}

std::optional<std::vector<int>> find_isomorphism(const LabeledDiagram& a, const LabeledDiagram& b, bool use_labels) {
    std::optional<std::vector<int>> found;
    for_each_isomorphism(a, b, use_labels, [&](const std::vector<int>& f) {
        found = f;
        return false;
    });
    return found;
}

bool are_isomorphic(const Diagram& a, const Diagram& b) {
    return find_isomorphism(LabeledDiagram(a), LabeledDiagram(b), false).has_value();
}

bool are_isomorphic(const LabeledDiagram& a, const LabeledDiagram& b) {
    return find_isomorphism(a, b, true).has_value();
}

bool are_isomorphic_brute_force(const LabeledDiagram& a, const LabeledDiagram& b, bool use_labels) {
    const int n = a.size();
    if (b.size() != n) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const auto target_arrows = b.diagram().arrows();
    const auto target_labeled = b.labeled_arrows();
    do {
        if (use_labels) {
            auto image = a.permuted(perm).labeled_arrows();
            if (image == target_labeled) return true;
        } else {
            if (a.diagram().permuted(perm).arrows() == target_arrows) return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace nicelie
