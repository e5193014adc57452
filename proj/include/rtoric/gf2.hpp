#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtoric/error.hpp"
#include "rtoric/face.hpp"

namespace rtoric {

/// Word-packed bit vector of arbitrary length.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool b = true) {
        const std::uint64_t bit = std::uint64_t(1) << (i % 64);
        if (b) w_[i / 64] |= bit;
        else w_[i / 64] &= ~bit;
    }
    void flip(std::size_t i) { w_[i / 64] ^= std::uint64_t(1) << (i % 64); }

    BitVector& operator^=(const BitVector& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }

    bool any() const {
        return std::any_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x != 0; });
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::size_t(std::popcount(x));
        return c;
    }
    /// Index of the lowest set bit, or size() when zero.
    std::size_t lowest() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::size_t(std::countr_zero(w_[k]));
        return n_;
    }
    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < w_.size(); ++k)
            for (std::uint64_t x = w_[k]; x; x &= x - 1) out.push_back(k * 64 + std::size_t(std::countr_zero(x)));
        return out;
    }

    friend bool operator==(const BitVector& a, const BitVector& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Incremental GF(2) row reduction. Every stored row remembers which inserted
/// generators it is the sum of, so membership answers come with a certificate.
class GF2Eliminator {
public:
    explicit GF2Eliminator(std::size_t width) : width_(width) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t generators() const { return inserted_; }

    /// Inserts a generator; returns true when it enlarged the span.
    bool insert(const BitVector& v) {
        if (v.size() != width_) throw InvalidInput("GF2Eliminator: width mismatch");
        BitVector r = v;
        std::vector<std::size_t> used;
        reduce_into(r, used);
        const std::size_t id = inserted_++;
        if (!r.any()) return false;
        used.push_back(id);
        Row row{r, r.lowest(), {}};
        row.combo = std::move(used);
        normalize(row.combo);
        // Keep the basis fully reduced: clear the new pivot from older rows.
        for (auto& other : rows_)
            if (other.bits.get(row.pivot)) {
                other.bits ^= row.bits;
                other.combo = symmetric_difference(other.combo, row.combo);
            }
        auto pos = std::lower_bound(rows_.begin(), rows_.end(), row.pivot,
                                    [](const Row& a, std::size_t p) { return a.pivot < p; });
        rows_.insert(pos, std::move(row));
        return true;
    }

    /// Canonical representative of v modulo the span.
    BitVector reduce(const BitVector& v) const {
        BitVector r = v;
        std::vector<std::size_t> used;
        reduce_into(r, used);
        return r;
    }

    bool contains(const BitVector& v) const { return !reduce(v).any(); }

    /// Indices of inserted generators summing to v, or nullopt if v is outside the span.
    std::optional<std::vector<std::size_t>> express(const BitVector& v) const {
        BitVector r = v;
        std::vector<std::size_t> used;
        reduce_into(r, used);
        if (r.any()) return std::nullopt;
        return used;
    }

    /// Pivot columns of the reduced basis, ascending.
    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> p;
        for (const auto& r : rows_) p.push_back(r.pivot);
        return p;
    }

    std::vector<BitVector> basis() const {
        std::vector<BitVector> out;
        for (const auto& r : rows_) out.push_back(r.bits);
        return out;
    }

private:
    struct Row {
        BitVector bits;
        std::size_t pivot;
        std::vector<std::size_t> combo;
    };

    static void normalize(std::vector<std::size_t>& s) { std::sort(s.begin(), s.end()); }

    static std::vector<std::size_t> symmetric_difference(const std::vector<std::size_t>& a,
                                                         const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    void reduce_into(BitVector& r, std::vector<std::size_t>& used) const {
        for (const auto& row : rows_)
            if (r.get(row.pivot)) {
                r ^= row.bits;
                used = symmetric_difference(used, row.combo);
            }
    }

    std::size_t width_;
    std::size_t inserted_ = 0;
    std::vector<Row> rows_;
};

/// Dense GF(2) matrix with each row packed in one machine word.
class GF2Matrix {
public:
    static constexpr std::size_t kDefaultMaxCols = 64;

    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t cols, std::size_t max_cols = kDefaultMaxCols)
        : cols_(cols), rows_(rows, 0) {
        if (cols > max_cols || cols > 64)
            throw BoundExceeded("GF2Matrix: " + std::to_string(cols) + " columns exceeds bound " +
                                std::to_string(std::min<std::size_t>(max_cols, 64)));
    }

    /// Rows given as '0'/'1' strings; column j of the matrix is character j.
    static GF2Matrix from_bitstrings(const std::vector<std::string>& rows) {
        if (rows.empty()) throw InvalidInput("GF2Matrix: no rows");
        GF2Matrix a(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != a.cols_) throw InvalidInput("GF2Matrix: row " + std::to_string(i + 1) + " has wrong length");
            for (std::size_t j = 0; j < a.cols_; ++j) {
                const char c = rows[i][j];
                if (c != '0' && c != '1')
                    throw InvalidInput("GF2Matrix: row " + std::to_string(i + 1) + " has character '" + std::string(1, c) + "'");
                if (c == '1') a.rows_[i] |= std::uint64_t(1) << j;
            }
        }
        return a;
    }

    static GF2Matrix from_row_masks(const std::vector<std::uint64_t>& rows, std::size_t cols) {
        GF2Matrix a(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] & ~full_set(unsigned(cols))) throw InvalidInput("GF2Matrix: row mask wider than column count");
            a.rows_[i] = rows[i];
        }
        return a;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::uint64_t row(std::size_t i) const { return rows_[i]; }
    const std::vector<std::uint64_t>& row_masks() const { return rows_; }
    bool get(std::size_t i, std::size_t j) const { return (rows_[i] >> j) & 1u; }
    void set(std::size_t i, std::size_t j, bool b) {
        if (b) rows_[i] |= std::uint64_t(1) << j;
        else rows_[i] &= ~(std::uint64_t(1) << j);
    }

    /// Column j as a bitmask over rows.
    std::uint64_t column(std::size_t j) const {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (get(i, j)) c |= std::uint64_t(1) << i;
        return c;
    }

    std::string row_string(std::size_t i) const {
        std::string s(cols_, '0');
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) s[j] = '1';
        return s;
    }

    friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) { return a.cols_ == b.cols_ && a.rows_ == b.rows_; }

private:
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> rows_;
};

/// Reduced row echelon basis of a set of 64-bit vectors; pivot = lowest set bit.
struct GF2Basis {
    std::vector<std::uint64_t> rows;  ///< fully reduced, sorted by pivot
    std::vector<unsigned> pivots;

    std::size_t rank() const { return rows.size(); }

    std::uint64_t reduce(std::uint64_t v) const {
        for (std::size_t k = 0; k < rows.size(); ++k)
            if ((v >> pivots[k]) & 1u) v ^= rows[k];
        return v;
    }
    bool contains(std::uint64_t v) const { return reduce(v) == 0; }
};

inline GF2Basis gf2_rref(const std::vector<std::uint64_t>& vectors) {
    std::vector<std::pair<unsigned, std::uint64_t>> rows;  // (pivot, row)
    for (std::uint64_t v : vectors) {
        for (const auto& [p, r] : rows)
            if ((v >> p) & 1u) v ^= r;
        if (!v) continue;
        const unsigned p = unsigned(std::countr_zero(v));
        for (auto& [q, r] : rows)
            if ((r >> p) & 1u) r ^= v;
        rows.emplace_back(p, v);
    }
    std::sort(rows.begin(), rows.end());
    GF2Basis b;
    for (const auto& [p, r] : rows) {
        b.pivots.push_back(p);
        b.rows.push_back(r);
    }
    return b;
}

inline std::size_t gf2_rank(const GF2Matrix& a) { return gf2_rref(a.row_masks()).rank(); }

inline bool gf2_membership(const GF2Basis& space, std::uint64_t v) { return space.contains(v); }

/// Basis of {x : A x = 0} over GF(2), as column-index masks.
inline std::vector<std::uint64_t> gf2_kernel_basis(const GF2Matrix& a) {
    const GF2Basis b = gf2_rref(a.row_masks());
    std::uint64_t pivot_mask = 0;
    for (unsigned p : b.pivots) pivot_mask |= std::uint64_t(1) << p;
    std::vector<std::uint64_t> out;
    for (unsigned j = 0; j < a.cols(); ++j) {
        if ((pivot_mask >> j) & 1u) continue;
        std::uint64_t x = std::uint64_t(1) << j;
        for (std::size_t k = 0; k < b.rows.size(); ++k)
            if ((b.rows[k] >> j) & 1u) x |= std::uint64_t(1) << b.pivots[k];
        out.push_back(x);
    }
    return out;
}

inline constexpr std::size_t kDefaultEnumerationBound = 24;

/// All 2^k sums of the basis vectors; entry c is the sum over the set bits of c.
inline std::vector<std::uint64_t> gf2_span(const std::vector<std::uint64_t>& basis,
                                          std::size_t bound = kDefaultEnumerationBound) {
    if (basis.size() > bound)
        throw BoundExceeded("GF(2) span of dimension " + std::to_string(basis.size()) + " exceeds enumeration bound " +
                            std::to_string(bound));
    std::vector<std::uint64_t> out(std::size_t(1) << basis.size(), 0);
    for (std::size_t c = 1; c < out.size(); ++c) {
        const unsigned k = unsigned(std::countr_zero(c));
        out[c] = out[c & (c - 1)] ^ basis[k];
    }
    return out;
}

inline std::vector<std::uint64_t> gf2_row_space(const GF2Matrix& a, std::size_t bound = kDefaultEnumerationBound) {
    return gf2_span(gf2_rref(a.row_masks()).rows, bound);
}

inline std::vector<std::uint64_t> gf2_kernel(const GF2Matrix& a, std::size_t bound = kDefaultEnumerationBound) {
    return gf2_span(gf2_kernel_basis(a), bound);
}

}  // namespace rtoric
