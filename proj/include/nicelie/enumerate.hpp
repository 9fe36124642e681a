#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nicelie/diagram.hpp"

namespace nicelie {

/// Execution policy for the data-parallel kernels. `jobs == 1` runs the
/// serial reference path; results are identical for every job count.
struct Parallelism {
    int jobs = 1;
    bool serial() const { return jobs <= 1; }
};

/// Ordered compositions (a_1,...,a_s) of n with a_1 >= 2 unless s = 1,
/// in lexicographic order.
std::vector<TypeVector> compositions(int n);

/// Adds `a1` source nodes on top of `base`. For every tuple
/// A_1 <= ... <= A_a1 of subsets of base nodes (subsets ordered by their
/// bitmask value) whose union contains every source of `base`, emits the
/// diagram with arrows new_t -> v for v in A_t. Deeper base nodes already
/// have incoming arrows, so hitting them is optional. New nodes take indices
/// 0..a1-1 and base nodes shift up by a1, so the top layer comes first.
///
/// With `even_incoming`, only tuples leaving every node with an even number
/// of incoming arrows are emitted.
std::vector<Diagram> extend_by_layer(const Diagram& base, int a1, bool even_incoming = false);

/// Removes isomorphic duplicates, keeping the first representative of each
/// class in input order. Hash-bucketed, then bijection search.
std::vector<Diagram> dedupe_diagrams(const std::vector<Diagram>& ds, Parallelism par = {});
/// Reference implementation comparing every pair by brute force.
std::vector<Diagram> dedupe_diagrams_brute_force(const std::vector<Diagram>& ds);

/// Sizes seen while building one layer: `type` is the partial type reached
/// (a suffix of the requested type). Parity filtering only happens at the
/// final stage.
struct StageCounts {
    TypeVector type;
    std::size_t before_dedup = 0;
    std::size_t after_dedup = 0;
};

struct DiagramCounts {
    std::vector<StageCounts> stages;
    std::size_t before_dedup = 0;
    std::size_t after_dedup = 0;
};

/// All diagrams of the given type with even incoming degree everywhere, up
/// to isomorphism.
std::vector<Diagram> enumerate_diagrams(const TypeVector& type, Parallelism par = {},
                                        DiagramCounts* counts = nullptr);
/// Concatenation over compositions(n), in composition order.
std::vector<Diagram> enumerate_diagrams(int n, Parallelism par = {});

/// Complete labelings satisfying N1-N3, built by pairing labels at the node
/// with fewest unlabeled incoming arrows.
std::vector<LabeledDiagram> enumerate_labelings(const Diagram& d);
/// Test oracle: every label function checked against N1-N3.
std::vector<LabeledDiagram> enumerate_labelings_brute_force(const Diagram& d);

/// Removes labeled-isomorphic duplicates (input order kept), then drops
/// diagrams violating N4.
std::vector<NiceDiagram> dedupe_labeled(const std::vector<LabeledDiagram>& ls);

struct TypedNiceDiagrams {
    TypeVector type;
    std::vector<NiceDiagram> diagrams;
};

/// Nice diagrams with n nodes grouped by type, in composition order; within
/// a type, in enumeration order. `type_filter` restricts to one type.
std::vector<TypedNiceDiagrams> enumerate_nice_diagrams(int n, Parallelism par = {},
                                                       const std::optional<TypeVector>& type_filter = std::nullopt);
std::vector<NiceDiagram> nice_diagrams_of_type(const TypeVector& type, Parallelism par = {});

}  // namespace nicelie
