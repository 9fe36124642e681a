#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nicelie/diagram.hpp"

namespace nicelie {

/// Per-node hash built from the number of concatenated arrows of each length
/// ending at (i_1..i_s) and beginning at (o_1..o_s) the node, mixed with a
/// 64-bit polynomial rolling hash.
std::vector<std::uint64_t> node_hashes(const Diagram& d);
/// Sum of node hashes.
std::uint64_t diagram_hash(const Diagram& d);

/// Node invariants used to prune bijection search: node_hashes refined by
/// neighbourhood multisets, plus double-arrow incidence counts when the
/// diagram is labeled. Invariant under (labeled) isomorphism.
std::vector<std::uint64_t> refined_invariants(const LabeledDiagram& ld, bool use_labels);

/// Enumerates node bijections f (f[v] = image of v) from `a` to `b` that map
/// arrows onto arrows and, when `use_labels` is set, labels onto labels. The
/// callback returns false to stop the search.
void for_each_isomorphism(const LabeledDiagram& a, const LabeledDiagram& b, bool use_labels,
                          const std::function<bool(const std::vector<int>&)>& visit);

/// Variant taking precomputed invariants for both sides.
void for_each_isomorphism(const LabeledDiagram& a, const std::vector<std::uint64_t>& inv_a, const LabeledDiagram& b,
                          const std::vector<std::uint64_t>& inv_b, bool use_labels,
                          const std::function<bool(const std::vector<int>&)>& visit);

std::optional<std::vector<int>> find_isomorphism(const LabeledDiagram& a, const LabeledDiagram& b, bool use_labels);
bool are_isomorphic(const Diagram& a, const Diagram& b);
bool are_isomorphic(const LabeledDiagram& a, const LabeledDiagram& b);

/// Brute force over all n! bijections; test oracle for the pruned search.
bool are_isomorphic_brute_force(const LabeledDiagram& a, const LabeledDiagram& b, bool use_labels);

}  // namespace nicelie
