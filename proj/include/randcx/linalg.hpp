#ifndef RANDCX_LINALG_HPP
#define RANDCX_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "randcx/error.hpp"
#include "randcx/gf2.hpp"

namespace randcx {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> values)
        : rows_(rows), cols_(cols), data_(std::move(values))
    {
        if (data_.size() != rows * cols) {
            fail(ErrorKind::out_of_range, "matrix data size does not match its shape");
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transposed() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Column-compressed sparse integer matrix; each column is sorted by row.
struct SparseIntMatrix {
    using Entry = std::pair<std::uint32_t, std::int64_t>;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<Entry>> columns;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    std::size_t nonzeros() const
    {
        std::size_t total = 0;
        for (const auto& col : columns) {
            total += col.size();
        }
        return total;
    }

    IntMatrix to_dense() const
    {
        IntMatrix m(rows, cols);
        for (std::size_t c = 0; c < cols; ++c) {
            for (const auto& [r, v] : columns[c]) {
                m(r, c) = v;
            }
        }
        return m;
    }

    static SparseIntMatrix from_dense(const IntMatrix& m)
    {
        SparseIntMatrix s(m.rows(), m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            for (std::size_t r = 0; r < m.rows(); ++r) {
                if (m(r, c) != 0) {
                    s.columns[c].emplace_back(static_cast<std::uint32_t>(r), m(r, c));
                }
            }
        }
        return s;
    }
};

/// Dense product; throws Overflow rather than wrapping.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        fail(ErrorKind::overflow, "integer addition overflowed");
    }
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) {
        fail(ErrorKind::overflow, "integer multiplication overflowed");
    }
    return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_sub_overflow(a, b, &out)) {
        fail(ErrorKind::overflow, "integer subtraction overflowed");
    }
    return out;
}

inline std::int64_t narrow(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) {
        fail(ErrorKind::overflow, "intermediate value exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

inline std::int64_t abs_checked(std::int64_t v)
{
    if (v == INT64_MIN) {
        fail(ErrorKind::overflow, "cannot negate INT64_MIN");
    }
    return v < 0 ? -v : v;
}

} // namespace detail

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows()) {
        fail(ErrorKind::out_of_range, "matrix shapes do not compose");
    }
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) = detail::checked_add(out(i, j), detail::checked_mul(a(i, k), b(k, j)));
            }
        }
    }
    return out;
}

inline bool is_prime(std::int64_t q)
{
    if (q < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            return false;
        }
    }
    return true;
}

/// Prime-power factors of v, ascending: 12 -> {3, 4}... ordered by prime.
inline std::vector<std::int64_t> prime_power_factors(std::int64_t v)
{
    std::vector<std::int64_t> out;
    v = detail::abs_checked(v);
    for (std::int64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            std::int64_t power = 1;
            while (v % d == 0) {
                v /= d;
                power *= d;
            }
            out.push_back(power);
        }
    }
    if (v > 1) {
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Gf2Matrix to_gf2(const IntMatrix& m)
{
    Gf2Matrix g(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c) % 2 != 0) {
                g.set(r, c);
            }
        }
    }
    return g;
}

inline std::size_t rank_gf2(const IntMatrix& m)
{
    return rank_gf2(to_gf2(m));
}

/// Row-echelon basis over GF(q), q prime below 2^31. Stored rows are scaled
/// so their leading entry is 1.
class GfqBasis {
public:
    GfqBasis(std::size_t cols, std::uint32_t q) : cols_(cols), q_(q), pivot_owner_(cols, -1)
    {
        if (!is_prime(q) || q >= (1U << 31)) {
            fail(ErrorKind::bad_field, "GF(q) needs a prime q < 2^31, got " + std::to_string(q));
        }
    }

    std::size_t rank() const { return rank_; }
    std::uint32_t modulus() const { return q_; }

    /// `v` holds residues in [0, q). Reduced in place; kept if independent.
    bool insert(std::span<std::uint32_t> v)
    {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (v[c] == 0) {
                continue;
            }
            auto owner = pivot_owner_[c];
            if (owner < 0) {
                std::uint64_t inv = inverse(v[c]);
                for (std::size_t k = c; k < cols_; ++k) {
                    v[k] = static_cast<std::uint32_t>(v[k] * inv % q_);
                }
                pivot_owner_[c] = static_cast<std::int32_t>(rank_++);
                storage_.insert(storage_.end(), v.begin(), v.end());
                return true;
            }
            const std::uint32_t* b = storage_.data() + static_cast<std::size_t>(owner) * cols_;
            std::uint64_t factor = q_ - v[c];
            for (std::size_t k = c; k < cols_; ++k) {
                v[k] = static_cast<std::uint32_t>((v[k] + factor * b[k]) % q_);
            }
        }
        return false;
    }

private:
    std::uint64_t inverse(std::uint64_t a) const
    {
        std::uint64_t result = 1;
        std::uint64_t base = a % q_;
        std::uint64_t e = q_ - 2;
        while (e) {
            if (e & 1U) {
                result = result * base % q_;
            }
            base = base * base % q_;
            e >>= 1U;
        }
        return result;
    }

    std::size_t cols_;
    std::uint32_t q_;
    std::size_t rank_ = 0;
    std::vector<std::int32_t> pivot_owner_;
    std::vector<std::uint32_t> storage_;
};

inline std::uint32_t residue(std::int64_t v, std::uint32_t q)
{
    auto r = v % static_cast<std::int64_t>(q);
    return static_cast<std::uint32_t>(r < 0 ? r + q : r);
}

/// Rank over GF(q). BadField unless q is prime.
inline std::size_t rank_gfq(const IntMatrix& m, std::int64_t q)
{
    if (!is_prime(q) || q >= (1LL << 31)) {
        fail(ErrorKind::bad_field, "GF(q) needs a prime q < 2^31, got " + std::to_string(q));
    }
    auto mod = static_cast<std::uint32_t>(q);
    GfqBasis basis(m.cols(), mod);
    std::vector<std::uint32_t> row(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row[c] = residue(m(r, c), mod);
        }
        basis.insert(row);
    }
    return basis.rank();
}

/// Rank over the rationals by fraction-free (Bareiss) elimination. Every
/// stored entry is a minor of the input, so exact division holds throughout;
/// products are formed in 128 bits and Overflow is thrown if a result does
/// not fit back into 64 bits.
inline std::size_t rank_rational(IntMatrix m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t rank = 0;
    std::int64_t previous = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        // Smallest nonzero magnitude as pivot keeps intermediate products small.
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (m(r, c) != 0 && (pivot == rows || detail::abs_checked(m(r, c)) < detail::abs_checked(m(pivot, c)))) {
                pivot = r;
            }
        }
        if (pivot == rows) {
            continue;
        }
        if (pivot != rank) {
            for (std::size_t k = 0; k < cols; ++k) {
                std::swap(m(pivot, k), m(rank, k));
            }
        }
        const std::int64_t p = m(rank, c);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const std::int64_t factor = m(r, c);
            for (std::size_t k = c + 1; k < cols; ++k) {
                __int128 value = static_cast<__int128>(p) * m(r, k) - static_cast<__int128>(factor) * m(rank, k);
                m(r, k) = detail::narrow(value / previous);
            }
            m(r, c) = 0;
        }
        previous = p;
        ++rank;
    }
    return rank;
}

/// Invariant factors d1 | d2 | ... (all positive) of an integer matrix.
struct SnfResult {
    std::vector<std::int64_t> invariant_factors;

    std::size_t rank() const { return invariant_factors.size(); }

    /// Factors greater than one, i.e. the torsion part of the cokernel.
    std::vector<std::int64_t> torsion() const
    {
        std::vector<std::int64_t> out;
        for (auto d : invariant_factors) {
            if (d > 1) {
                out.push_back(d);
            }
        }
        return out;
    }
};

namespace detail {

/// Smith form of a small dense matrix by gcd row/column reduction with
/// smallest-magnitude pivots. Arithmetic is overflow-checked.
inline std::vector<std::int64_t> dense_snf(IntMatrix a)
{
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::int64_t> factors;
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i != j) {
            for (std::size_t k = 0; k < cols; ++k) {
                std::swap(a(i, k), a(j, k));
            }
        }
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i != j) {
            for (std::size_t k = 0; k < rows; ++k) {
                std::swap(a(k, i), a(k, j));
            }
        }
    };
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Move the smallest nonzero entry of the trailing block to (t, t).
        auto place_min = [&]() {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (a(i, j) != 0 && (bi == rows || abs_checked(a(i, j)) < abs_checked(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == rows) {
                return false;
            }
            swap_rows(t, bi);
            swap_cols(t, bj);
            return true;
        };
        if (!place_min()) {
            break;
        }
        while (true) {
            bool changed = false;
            const std::int64_t p = a(t, t);
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) {
                    continue;
                }
                std::int64_t q = a(i, t) / p;
                for (std::size_t k = t; k < cols; ++k) {
                    a(i, k) = checked_sub(a(i, k), checked_mul(q, a(t, k)));
                }
                if (a(i, t) != 0) {
                    changed = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) {
                    continue;
                }
                std::int64_t q = a(t, j) / p;
                for (std::size_t k = t; k < rows; ++k) {
                    a(k, j) = checked_sub(a(k, j), checked_mul(q, a(k, t)));
                }
                if (a(t, j) != 0) {
                    changed = true;
                }
            }
            if (changed) {
                place_min();
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold a row in.
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (a(i, j) % p != 0) {
                        for (std::size_t k = t; k < cols; ++k) {
                            a(t, k) = checked_add(a(t, k), a(i, k));
                        }
                        fixed = true;
                        break;
                    }
                }
            }
            if (!fixed) {
                break;
            }
        }
        factors.push_back(abs_checked(a(t, t)));
    }
    return factors;
}

} // namespace detail

/// Smith normal form of a sparse integer matrix. Unit pivots are eliminated
/// sparsely first (each contributes a factor 1); the remainder, which has no
/// entry of magnitude one, is finished densely.
inline SnfResult smith_normal_form(SparseIntMatrix m)
{
    using Entry = SparseIntMatrix::Entry;
    const std::size_t cols = m.cols;
    std::vector<char> col_alive(cols, 1);
    std::vector<std::vector<std::uint32_t>> row_cols(m.rows);
    for (std::size_t c = 0; c < cols; ++c) {
        auto& col = m.columns[c];
        std::sort(col.begin(), col.end());
        col.erase(std::remove_if(col.begin(), col.end(), [](const Entry& e) { return e.second == 0; }), col.end());
        for (const auto& [r, v] : col) {
            row_cols[r].push_back(static_cast<std::uint32_t>(c));
        }
    }
    std::size_t unit_pivots = 0;
    std::vector<Entry> merged;
    while (true) {
        // Unit entry whose column and row are as short as possible.
        std::size_t best_col = cols;
        std::uint32_t best_row = 0;
        std::size_t best_cost = SIZE_MAX;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!col_alive[c] || m.columns[c].empty()) {
                continue;
            }
            for (const auto& [r, v] : m.columns[c]) {
                if (v == 1 || v == -1) {
                    std::size_t cost = (m.columns[c].size() - 1) * (row_cols[r].size());
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_col = c;
                        best_row = r;
                    }
                }
            }
            if (best_cost == 0) {
                break;
            }
        }
        if (best_col == cols) {
            break;
        }
        const auto& pivot_col = m.columns[best_col];
        std::int64_t pivot_value = 0;
        for (const auto& [r, v] : pivot_col) {
            if (r == best_row) {
                pivot_value = v;
            }
        }
        // Clear row best_row in every other column: col' -= (a_rc' * pivot) * col.
        auto touched = row_cols[best_row];
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto c : touched) {
            if (c == best_col || !col_alive[c]) {
                continue;
            }
            auto& target = m.columns[c];
            auto it = std::lower_bound(target.begin(), target.end(), Entry{best_row, INT64_MIN});
            if (it == target.end() || it->first != best_row) {
                continue;
            }
            const std::int64_t factor = detail::checked_mul(it->second, pivot_value);
            merged.clear();
            std::size_t i = 0, j = 0;
            while (i < target.size() || j < pivot_col.size()) {
                if (j == pivot_col.size() || (i < target.size() && target[i].first < pivot_col[j].first)) {
                    merged.push_back(target[i++]);
                } else if (i == target.size() || pivot_col[j].first < target[i].first) {
                    std::int64_t v = -detail::checked_mul(factor, pivot_col[j].second);
                    merged.emplace_back(pivot_col[j].first, v);
                    row_cols[pivot_col[j].first].push_back(c);
                    ++j;
                } else {
                    std::int64_t v =
                        detail::checked_sub(target[i].second, detail::checked_mul(factor, pivot_col[j].second));
                    if (v != 0) {
                        merged.emplace_back(target[i].first, v);
                    }
                    ++i;
                    ++j;
                }
            }
            target.swap(merged);
        }
        col_alive[best_col] = 0;
        m.columns[best_col].clear();
        row_cols[best_row].clear();
        ++unit_pivots;
        // Drop stale column references lazily to keep row lists short.
        for (auto& list : row_cols) {
            if (list.size() > 64) {
                std::sort(list.begin(), list.end());
                list.erase(std::unique(list.begin(), list.end()), list.end());
            }
        }
    }

    // Gather the residual block.
    std::vector<std::uint32_t> live_cols;
    std::vector<std::uint32_t> live_rows;
    for (std::size_t c = 0; c < cols; ++c) {
        if (col_alive[c] && !m.columns[c].empty()) {
            live_cols.push_back(static_cast<std::uint32_t>(c));
            for (const auto& [r, v] : m.columns[c]) {
                live_rows.push_back(r);
            }
        }
    }
    std::sort(live_rows.begin(), live_rows.end());
    live_rows.erase(std::unique(live_rows.begin(), live_rows.end()), live_rows.end());
    SnfResult result;
    result.invariant_factors.assign(unit_pivots, 1);
    if (!live_cols.empty()) {
        IntMatrix block(live_rows.size(), live_cols.size());
        for (std::size_t j = 0; j < live_cols.size(); ++j) {
            for (const auto& [r, v] : m.columns[live_cols[j]]) {
                auto i = static_cast<std::size_t>(std::lower_bound(live_rows.begin(), live_rows.end(), r) -
                                                  live_rows.begin());
                block(i, j) = v;
            }
        }
        auto rest = detail::dense_snf(std::move(block));
        result.invariant_factors.insert(result.invariant_factors.end(), rest.begin(), rest.end());
    }
    return result;
}

inline SnfResult smith_normal_form(const IntMatrix& m)
{
    return smith_normal_form(SparseIntMatrix::from_dense(m));
}

} // namespace randcx

#endif
