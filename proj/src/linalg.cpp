#include "nicelie/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nicelie {

std::vector<Rational> RationalMatrix::row(int r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
            data_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_};
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix RationalMatrix::select_rows(std::span<const int> rows) const {
    RationalMatrix s(static_cast<int>(rows.size()), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (int c = 0; c < cols_; ++c) s(static_cast<int>(k), c) = (*this)(rows[k], c);
    return s;
}

RationalMatrix RootMatrix::rational() const {
    RationalMatrix m(rows(), cols_);
    for (int r = 0; r < rows(); ++r)
        for (int c = 0; c < cols_; ++c) m(r, c) = Rational{rows_[r][c]};
    return m;
}

GF2Matrix RootMatrix::gf2() const {
    if (cols_ > 64) throw std::length_error("gf2 matrix: more than 64 columns");
    GF2Matrix m;
    m.cols = cols_;
    for (const auto& row : rows_) {
        std::uint64_t bits = 0;
        for (int c = 0; c < cols_; ++c)
            if (row[c] % 2 != 0) bits |= std::uint64_t{1} << c;
        m.rows.push_back(bits);
    }
    return m;
}

RootMatrix root_matrix(const NiceDiagram& nd) {
    std::vector<std::vector<int>> rows;
    for (const auto& b : nd.brackets()) {
        std::vector<int> row(nd.size(), 0);
        row[b.k] = 1;
        row[b.i] = -1;
        row[b.j] = -1;
        rows.push_back(std::move(row));
    }
    return RootMatrix(nd.size(), std::move(rows));
}

namespace {

/// Incremental GF(2) echelon basis keyed by pivot column.
class GF2Echelon {
public:
    explicit GF2Echelon(int cols) : pivots_(cols, 0), has_(cols, false) {}

    /// Reduces v and inserts it; returns false when v was dependent.
    bool insert(std::uint64_t v) {
        for (int c = 0; c < static_cast<int>(has_.size()); ++c) {
            if (!((v >> c) & 1u)) continue;
            if (has_[c]) {
                v ^= pivots_[c];
            } else {
                pivots_[c] = v;
                has_[c] = true;
                return true;
            }
        }
        return false;
    }

private:
    std::vector<std::uint64_t> pivots_;
    std::vector<bool> has_;
};

/// Incremental rational echelon basis with positional pivots.
class QEchelon {
public:
    explicit QEchelon(int cols) : cols_{cols} {}

    std::vector<Rational> reduce(std::vector<Rational> v) const {
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            const int p = pivot_col_[b];
            if (v[p].is_zero()) continue;
            Rational f = v[p] / basis_[b][p];
            for (int c = p; c < cols_; ++c)
                if (!basis_[b][c].is_zero()) v[c] -= f * basis_[b][c];
        }
        return v;
    }

    bool insert(std::vector<Rational> v) {
        v = reduce(std::move(v));
        for (int c = 0; c < cols_; ++c) {
            if (v[c].is_zero()) continue;
            // Sorted by pivot; every row is zero left of its pivot.
            std::size_t pos = 0;
            while (pos < pivot_col_.size() && pivot_col_[pos] < c) ++pos;
            basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
            pivot_col_.insert(pivot_col_.begin() + static_cast<std::ptrdiff_t>(pos), c);
            return true;
        }
        return false;
    }

private:
    int cols_;
    std::vector<std::vector<Rational>> basis_;
    std::vector<int> pivot_col_;
};

}  // namespace

std::vector<int> greedy_independent_rows(const GF2Matrix& m, std::span<const int> seed) {
    GF2Echelon ech(m.cols);
    std::vector<bool> taken(m.rows.size(), false);
    std::vector<int> kept;
    for (int r : seed) {
        if (!ech.insert(m.rows[r])) throw std::invalid_argument("greedy rows: dependent seed");
        taken[r] = true;
        kept.push_back(r);
    }
    for (int r = 0; r < m.row_count(); ++r)
        if (!taken[r] && ech.insert(m.rows[r])) kept.push_back(r);
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<int> greedy_independent_rows(const RationalMatrix& m, std::span<const int> seed) {
    QEchelon ech(m.cols());
    std::vector<bool> taken(m.rows(), false);
    std::vector<int> kept;
    for (int r : seed) {
        if (!ech.insert(m.row(r))) throw std::invalid_argument("greedy rows: dependent seed");
        taken[r] = true;
        kept.push_back(r);
    }
    for (int r = 0; r < m.rows(); ++r)
        if (!taken[r] && ech.insert(m.row(r))) kept.push_back(r);
    std::sort(kept.begin(), kept.end());
    return kept;
}

int rank(const GF2Matrix& m) { return static_cast<int>(greedy_independent_rows(m).size()); }
int rank(const RationalMatrix& m) { return static_cast<int>(greedy_independent_rows(m).size()); }

std::optional<std::uint64_t> solve_gf2(const GF2Matrix& m, std::span<const std::uint8_t> b) {
    if (static_cast<int>(b.size()) != m.row_count()) throw std::invalid_argument("solve_gf2: size mismatch");
    if (m.cols > 63) throw std::length_error("solve_gf2: too many columns");
    // Augmented rows: bit `cols` carries the right-hand side.
    std::vector<std::uint64_t> rows;
    for (int r = 0; r < m.row_count(); ++r) rows.push_back(m.rows[r] | (std::uint64_t{b[r] & 1u} << m.cols));
    std::vector<int> pivot_of_row;
    std::size_t top = 0;
    for (int c = 0; c < m.cols && top < rows.size(); ++c) {
        std::size_t p = top;
        while (p < rows.size() && !((rows[p] >> c) & 1u)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[top]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != top && ((rows[r] >> c) & 1u)) rows[r] ^= rows[top];
        pivot_of_row.push_back(c);
        ++top;
    }
    const std::uint64_t coeff_mask = (std::uint64_t{1} << m.cols) - 1;
    for (std::size_t r = top; r < rows.size(); ++r)
        if ((rows[r] & ~coeff_mask) != 0) return std::nullopt;
    std::uint64_t x = 0;
    for (std::size_t r = 0; r < top; ++r)
        if ((rows[r] >> m.cols) & 1u) x |= std::uint64_t{1} << pivot_of_row[r];
    return x;
}

bool image_member_gf2(const GF2Matrix& m, std::span<const std::uint8_t> b) { return solve_gf2(m, b).has_value(); }

std::vector<std::uint8_t> apply_gf2(const GF2Matrix& m, std::uint64_t x) {
    std::vector<std::uint8_t> out;
    out.reserve(m.rows.size());
    for (auto row : m.rows) out.push_back(static_cast<std::uint8_t>(__builtin_popcountll(row & x) & 1));
    return out;
}

std::vector<int> row_reduce(RationalMatrix& a) {
    std::vector<int> pivots;
    int top = 0;
    for (int c = 0; c < a.cols() && top < a.rows(); ++c) {
        int p = top;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != top)
            for (int k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(top, k));
        Rational inv = a(top, c).inverse();
        for (int k = c; k < a.cols(); ++k) a(top, k) *= inv;
        for (int r = 0; r < a.rows(); ++r) {
            if (r == top || a(r, c).is_zero()) continue;
            Rational f = a(r, c);
            for (int k = c; k < a.cols(); ++k) a(r, k) -= f * a(top, k);
        }
        pivots.push_back(c);
        ++top;
    }
    return pivots;
}

std::optional<std::vector<Rational>> solve_q(const RationalMatrix& a, std::span<const Rational> b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve_q: size mismatch");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Rational> x(a.cols(), Rational{0});
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), a.cols());
    return x;
}

std::vector<std::vector<Rational>> kernel_q(const RationalMatrix& m) {
    RationalMatrix a = m;
    auto pivots = row_reduce(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational{0});
        v[f] = Rational{1};
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<std::int64_t>> left_kernel_integer(const RationalMatrix& m) {
    std::vector<std::vector<std::int64_t>> out;
    for (auto& v : kernel_q(m.transposed())) {
        std::int64_t l = 1;
        for (const auto& q : v) l = std::lcm(l, q.den());
        std::vector<std::int64_t> iv;
        std::int64_t g = 0;
        for (const auto& q : v) {
            Rational s = q * Rational{l};
            iv.push_back(s.num());
            g = std::gcd(g, s.num());
        }
        if (g == 0) continue;
        std::int64_t lead = 0;
        for (auto x : iv)
            if (x != 0) {
                lead = x;
                break;
            }
        if (lead < 0) g = -g;
        for (auto& x : iv) x /= g;
        out.push_back(std::move(iv));
    }
    return out;
}

std::optional<std::vector<Rational>> express_in_rows(const RationalMatrix& m, std::span<const int> basis_rows,
                                                     std::span<const Rational> target) {
    // Solve B^T q = target where B = selected rows.
    const int k = static_cast<int>(basis_rows.size());
    RationalMatrix aug(m.cols(), k + 1);
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < k; ++r) aug(c, r) = m(basis_rows[r], c);
        aug(c, k) = target[c];
    }
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    std::vector<Rational> q(k, Rational{0});
    for (std::size_t r = 0; r < pivots.size(); ++r) q[pivots[r]] = aug(static_cast<int>(r), k);
    return q;
}

std::vector<std::vector<int>> gram_matrix(const RootMatrix& m) {
    std::vector<std::vector<int>> u(m.rows(), std::vector<int>(m.rows(), 0));
    for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.rows(); ++b) {
            int s = 0;
            for (int c = 0; c < m.cols(); ++c) s += m(a, c) * m(b, c);
            u[a][b] = s;
        }
    return u;
}

}  // namespace nicelie
