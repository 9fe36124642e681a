#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nicelie/diagram.hpp"
#include "nicelie/rational.hpp"

namespace nicelie {

/// Dense matrix over GF(2); each row is a bitmask over at most 64 columns.
struct GF2Matrix {
    int cols = 0;
    std::vector<std::uint64_t> rows;

    int row_count() const { return static_cast<int>(rows.size()); }
    bool at(int r, int c) const { return (rows[r] >> c) & 1u; }
};

/// Dense row-major matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_{rows}, cols_{cols}, data_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::vector<Rational> row(int r) const;
    RationalMatrix transposed() const;
    RationalMatrix select_rows(std::span<const int> rows) const;
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

/// Root matrix: row I = ({i,j},k) is e_k - e_i - e_j, rows in canonical
/// bracket order.
class RootMatrix {
public:
    RootMatrix() = default;
    RootMatrix(int cols, std::vector<std::vector<int>> rows) : cols_{cols}, rows_(std::move(rows)) {}

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    int operator()(int r, int c) const { return rows_[r][c]; }
    const std::vector<std::vector<int>>& entries() const { return rows_; }

    RationalMatrix rational() const;
    /// Entry-wise reduction mod 2.
    GF2Matrix gf2() const;

private:
    int cols_ = 0;
    std::vector<std::vector<int>> rows_;
};

RootMatrix root_matrix(const NiceDiagram& nd);

/// Scans rows in order and keeps each one independent of the rows kept so
/// far. `seed` rows are taken first, in the given order, and must be
/// independent. The result is sorted.
std::vector<int> greedy_independent_rows(const GF2Matrix& m, std::span<const int> seed = {});
std::vector<int> greedy_independent_rows(const RationalMatrix& m, std::span<const int> seed = {});

int rank(const GF2Matrix& m);
int rank(const RationalMatrix& m);

/// Some x with m x = b (b has one bit per row), or nullopt if inconsistent.
std::optional<std::uint64_t> solve_gf2(const GF2Matrix& m, std::span<const std::uint8_t> b);
bool image_member_gf2(const GF2Matrix& m, std::span<const std::uint8_t> b);
/// m x as a vector of row bits.
std::vector<std::uint8_t> apply_gf2(const GF2Matrix& m, std::uint64_t x);

/// Reduced row echelon form in place, pivots chosen left to right; returns
/// the pivot columns.
std::vector<int> row_reduce(RationalMatrix& a);
/// Some x with a x = b (free coordinates 0), or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_q(const RationalMatrix& a, std::span<const Rational> b);

/// Basis of {x : m x = 0}, one vector per free column, in reduced form.
std::vector<std::vector<Rational>> kernel_q(const RationalMatrix& m);
/// Basis of {v : v^T m = 0}, each scaled to coprime integers with positive
/// leading entry.
std::vector<std::vector<std::int64_t>> left_kernel_integer(const RationalMatrix& m);

/// Coefficients q with target = sum_k q_k basis_rows[k]; nullopt if target
/// is not in their span. The basis rows must be independent.
std::optional<std::vector<Rational>> express_in_rows(const RationalMatrix& m, std::span<const int> basis_rows,
                                                     std::span<const Rational> target);

/// U = M M^T.
std::vector<std::vector<int>> gram_matrix(const RootMatrix& m);

}  // namespace nicelie
