#ifndef RANDCX_GF2_HPP
#define RANDCX_GF2_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace randcx {

/// Dense GF(2) matrix with rows packed into 64-bit words.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words() const { return words_; }

    bool get(std::size_t r, std::size_t c) const { return (data_[r * words_ + c / 64] >> (c % 64)) & 1U; }
    void set(std::size_t r, std::size_t c, bool v = true)
    {
        auto& w = data_[r * words_ + c / 64];
        auto bit = std::uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

    std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * words_, words_}; }
    std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * words_, words_}; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Row-echelon basis over GF(2) grown one vector at a time. Each stored row's
/// lowest set bit is its pivot, unique across the basis, so reducing a vector
/// only ever moves its lowest set bit upward and XORs touch the tail words.
class Gf2Basis {
public:
    explicit Gf2Basis(std::size_t cols) : cols_(cols), words_((cols + 63) / 64), pivot_owner_(cols, -1) {}

    std::size_t rank() const { return rank_; }
    std::size_t cols() const { return cols_; }
    std::size_t words() const { return words_; }

    /// Reduces `v` (length words()) in place; keeps it if independent.
    bool insert(std::span<std::uint64_t> v)
    {
        std::size_t w = 0;
        while (true) {
            while (w < words_ && v[w] == 0) {
                ++w;
            }
            if (w == words_) {
                return false;
            }
            std::size_t pivot = w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
            auto owner = pivot_owner_[pivot];
            if (owner < 0) {
                pivot_owner_[pivot] = static_cast<std::int32_t>(rank_);
                storage_.insert(storage_.end(), v.begin(), v.end());
                ++rank_;
                return true;
            }
            const std::uint64_t* b = storage_.data() + static_cast<std::size_t>(owner) * words_;
            for (std::size_t k = w; k < words_; ++k) {
                v[k] ^= b[k];
            }
        }
    }

private:
    std::size_t cols_;
    std::size_t words_;
    std::size_t rank_ = 0;
    std::vector<std::int32_t> pivot_owner_;
    std::vector<std::uint64_t> storage_;
};

/// Rank over GF(2). Stops early once `limit` independent rows are found.
inline std::size_t rank_gf2(const Gf2Matrix& m, std::size_t limit = SIZE_MAX)
{
    Gf2Basis basis(m.cols());
    std::vector<std::uint64_t> scratch(m.words());
    for (std::size_t r = 0; r < m.rows() && basis.rank() < limit; ++r) {
        auto row = m.row(r);
        std::copy(row.begin(), row.end(), scratch.begin());
        basis.insert(scratch);
    }
    return basis.rank();
}

} // namespace randcx

#endif
