#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nicelie {

using NodeMask = std::uint32_t;
inline constexpr int max_nodes = 24;

inline NodeMask bit(int v) { return NodeMask{1} << v; }

/// Raised for malformed graphs (cycles, out-of-range nodes).
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Directed graph on nodes 0..n-1 without loops or multiple arrows.
///
/// Nodes are 0-based internally; everything user-facing prints them 1-based.
class Diagram {
public:
    Diagram() = default;
    explicit Diagram(int n);

    int size() const { return n_; }
    void add_arrow(int src, int dst);
    bool has_arrow(int src, int dst) const { return (out_[src] >> dst) & 1u; }
    NodeMask out(int v) const { return out_[v]; }
    NodeMask in(int v) const { return in_[v]; }
    int in_degree(int v) const;
    int out_degree(int v) const;
    int arrow_count() const;
    /// Arrows sorted by (src, dst).
    std::vector<std::pair<int, int>> arrows() const;
    bool is_acyclic() const;

    /// Image under a node relabeling; `perm[v]` is the new index of v.
    Diagram permuted(const std::vector<int>& perm) const;

    friend bool operator==(const Diagram&, const Diagram&) = default;
    friend auto operator<=>(const Diagram&, const Diagram&) = default;

private:
    int n_ = 0;
    std::vector<NodeMask> out_;
    std::vector<NodeMask> in_;
};

/// Layer sizes (a_1, ..., a_s) of the node filtration.
using TypeVector = std::vector<int>;

std::string type_string(const TypeVector& t);
/// Concatenated LCS dimensions, e.g. (3,2,1) -> "631".
std::string lcs_string(const TypeVector& t);

struct Filtration {
    TypeVector type;
    /// filtration[i] = N_i; N_0 is every node.
    std::vector<NodeMask> sets;
    /// depth[v] = largest i with v in N_i.
    std::vector<int> depth;
};

/// N_{i+1} = targets of arrows whose source lies in N_i. Throws
/// StructureError on a cycle.
Filtration lcs_filtration(const Diagram& d);
TypeVector lcs_type(const Diagram& d);

inline constexpr int no_label = -1;

/// A diagram with a node attached to every arrow.
class LabeledDiagram {
public:
    LabeledDiagram() = default;
    explicit LabeledDiagram(int n) : diagram_(n), labels_(static_cast<std::size_t>(n) * n, no_label) {}
    explicit LabeledDiagram(Diagram d);

    const Diagram& diagram() const { return diagram_; }
    int size() const { return diagram_.size(); }

    /// Adds src -> dst labeled `label`.
    void add_arrow(int src, int dst, int label);
    void set_label(int src, int dst, int label);
    int label(int src, int dst) const { return labels_[static_cast<std::size_t>(src) * size() + dst]; }
    bool is_complete() const;

    /// (src, dst, label) triples sorted by (src, dst).
    std::vector<std::array<int, 3>> labeled_arrows() const;
    LabeledDiagram permuted(const std::vector<int>& perm) const;

    friend bool operator==(const LabeledDiagram&, const LabeledDiagram&) = default;
    friend auto operator<=>(const LabeledDiagram&, const LabeledDiagram&) = default;

private:
    Diagram diagram_;
    std::vector<int> labels_;
};

enum class Condition { N1, N2, N3, EvenIncoming, N4, Acyclic, Unlabeled };
std::string to_string(Condition c);

struct Violation {
    Condition condition;
    std::string detail;
};

/// First violated condition among acyclicity, labels present, N1, N2, N3 and
/// even incoming degree; nullopt when all hold.
std::optional<Violation> validate_labeled(const LabeledDiagram& ld);

/// I = ({i,j},k) with i < j; nodes 0-based.
struct BracketIndex {
    int i = 0;
    int j = 0;
    int k = 0;
    /// Canonical order: lexicographic on (k, i, j).
    friend auto operator<=>(const BracketIndex& a, const BracketIndex& b) {
        if (auto c = a.k <=> b.k; c != 0) return c;
        if (auto c = a.i <=> b.i; c != 0) return c;
        return a.j <=> b.j;
    }
    friend bool operator==(const BracketIndex&, const BracketIndex&) = default;
    /// "c_{ijk}" digits, 1-based, e.g. "346".
    std::string str() const;
};

/// k --{i,j}--> h: there is l with k -> h labeled l and i -> l labeled j.
struct DoubleArrow {
    int i = 0;  ///< i < j
    int j = 0;
    int k = 0;
    int h = 0;
    int l = 0;  ///< intermediate node
    friend auto operator<=>(const DoubleArrow&, const DoubleArrow&) = default;
    std::string str() const;
};

/// A labeled diagram satisfying N1-N3 together with its bracket indices in
/// canonical order. N4 is checked separately by validate_n4.
class NiceDiagram {
public:
    NiceDiagram() = default;
    /// Throws StructureError carrying the violation if N1-N3 fail.
    explicit NiceDiagram(LabeledDiagram ld);

    const LabeledDiagram& labeled() const { return labeled_; }
    const Diagram& diagram() const { return labeled_.diagram(); }
    int size() const { return labeled_.size(); }
    const std::vector<BracketIndex>& brackets() const { return brackets_; }
    int bracket_count() const { return static_cast<int>(brackets_.size()); }
    /// Position of ({i,j},k) in brackets(), or -1; the target k is implied.
    int bracket_of_pair(int i, int j) const;

    friend bool operator==(const NiceDiagram& a, const NiceDiagram& b) { return a.labeled_ == b.labeled_; }

private:
    LabeledDiagram labeled_;
    std::vector<BracketIndex> brackets_;
    std::vector<int> pair_index_;
};

std::vector<DoubleArrow> double_arrows(const NiceDiagram& nd);

/// Reports four distinct nodes (i, j, k, v) such that exactly one of
/// i->{j,k}v, j->{k,i}v, k->{i,j}v is a double arrow.
std::optional<std::array<int, 4>> validate_n4(const NiceDiagram& nd);

bool is_nice(const NiceDiagram& nd);

}  // namespace nicelie
