#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rtoric/abelian_group.hpp"
#include "rtoric/matrix.hpp"
#include "rtoric/smith.hpp"

namespace rtoric {

/// Graded free Z-module with labelled bases and integer coboundary matrices.
/// Degree k basis is bases[k - min_degree]; differential(k) maps degree k to
/// degree k+1 and has shape dim(k+1) x dim(k).
template <class Label>
class CochainComplex {
public:
    CochainComplex() = default;

    CochainComplex(int min_degree, std::vector<std::vector<Label>> bases, std::vector<IntMatrix> d)
        : lo_(min_degree), bases_(std::move(bases)), d_(std::move(d)) {
        if (bases_.empty()) throw InvalidInput("cochain complex needs at least one degree");
        if (d_.size() != bases_.size()) throw InvalidInput("cochain complex: one differential per degree required");
        for (std::size_t k = 0; k < bases_.size(); ++k) {
            const std::size_t target = k + 1 < bases_.size() ? bases_[k + 1].size() : 0;
            if (d_[k].cols() != bases_[k].size() || d_[k].rows() != target)
                throw InvalidInput("cochain complex: differential " + std::to_string(lo_ + int(k)) + " has wrong shape");
        }
        for (std::size_t k = 0; k + 1 < d_.size(); ++k)
            if (!d_[k].empty() && !d_[k + 1].empty() && !(d_[k + 1] * d_[k]).is_zero())
                throw FalsificationFinding("cochain complex: d^2 != 0 at degree " + std::to_string(lo_ + int(k)));
    }

    int min_degree() const { return lo_; }
    int max_degree() const { return lo_ + int(bases_.size()) - 1; }
    bool in_range(int k) const { return k >= lo_ && k <= max_degree(); }

    std::size_t dim(int k) const { return in_range(k) ? bases_[std::size_t(k - lo_)].size() : 0; }

    const std::vector<Label>& labels(int k) const {
        require(k);
        return bases_[std::size_t(k - lo_)];
    }

    /// d^k : C^k -> C^{k+1}; outside the stored range the zero map of the right shape.
    IntMatrix differential(int k) const {
        if (in_range(k)) return d_[std::size_t(k - lo_)];
        return IntMatrix(dim(k + 1), dim(k));
    }

    const IntMatrix& stored_differential(int k) const {
        require(k);
        return d_[std::size_t(k - lo_)];
    }

    void require(int k) const {
        if (!in_range(k))
            throw InvalidInput("degree " + std::to_string(k) + " outside complex range [" + std::to_string(lo_) + ", " +
                               std::to_string(max_degree()) + "]");
    }

private:
    int lo_ = 0;
    std::vector<std::vector<Label>> bases_;
    std::vector<IntMatrix> d_;
};

template <class Label>
AbelianGroup cohomology(const CochainComplex<Label>& c, int k) {
    c.require(k);
    const auto out = smith_normal_form(c.differential(k));
    const auto in = smith_normal_form(c.differential(k - 1));
    const std::size_t free = c.dim(k) - out.rank() - in.rank();
    return AbelianGroup::from_invariant_factors(free, in.factors);
}

template <class Label>
std::vector<AbelianGroup> cohomology_all(const CochainComplex<Label>& c) {
    std::vector<AbelianGroup> out;
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) out.push_back(cohomology(c, k));
    return out;
}

/// dim H^k(C (x) Z/p) from Z/p ranks alone.
template <class Label>
std::size_t betti_mod_p(const CochainComplex<Label>& c, int k, std::int64_t p) {
    c.require(k);
    return c.dim(k) - rank_mod_p(c.differential(k), p) - rank_mod_p(c.differential(k - 1), p);
}

/// First nonzero entry made positive; keeps a lattice basis a lattice basis.
inline void normalize_sign(IntVector& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        return;
    }
}

/// Lattice basis of ker A over Z, read off the column transform of the SNF.
inline std::vector<IntVector> integer_kernel_basis(const IntMatrix& a) {
    SmithOptions opt;
    opt.want_v = true;
    const auto s = smith_normal_form(a, opt);
    std::vector<IntVector> basis;
    for (std::size_t j = s.rank(); j < a.cols(); ++j) {
        IntVector v = s.v.column(j);
        normalize_sign(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Columns of the matrix whose columns are the given vectors (all of length n).
inline IntMatrix columns_to_matrix(const std::vector<IntVector>& cols, std::size_t n) {
    IntMatrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != n) throw InvalidInput("columns_to_matrix: length mismatch");
        for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

/// True when the span of the columns is a saturated sublattice of Z^rows.
inline bool is_saturated(const IntMatrix& generators) {
    const auto s = smith_normal_form(generators);
    for (const auto& f : s.factors)
        if (f != 1) return false;
    return true;
}

/// Membership test for the column lattice of A: y = A x for some integer x.
class ImageLattice {
public:
    ImageLattice() = default;
    explicit ImageLattice(const IntMatrix& a) : rows_(a.rows()) {
        SmithOptions opt;
        opt.want_u = true;
        snf_ = smith_normal_form(a, opt);
    }
    explicit ImageLattice(const SparseMatrix& a) : rows_(a.rows()) {
        SmithOptions opt;
        opt.want_u = true;
        snf_ = smith_normal_form(a, opt);
    }

    std::size_t rank() const { return snf_.rank(); }

    bool contains(const IntVector& y) const {
        if (y.size() != rows_) throw InvalidInput("ImageLattice::contains: length mismatch");
        const auto uy = mat_vec(snf_.u, y);
        for (std::size_t i = 0; i < uy.size(); ++i) {
            if (i < snf_.rank()) {
                if (uy[i] % snf_.factors[i] != 0) return false;
            } else if (uy[i] != 0) {
                return false;
            }
        }
        return true;
    }

private:
    std::size_t rows_ = 0;
    SmithDecomposition snf_;
};

/// Generators of H^k = ker d^k / im d^{k-1} with explicit cocycle
/// representatives, plus the coordinate map reading a cocycle's class.
class CohomologyBasis {
public:
    struct Generator {
        IntVector cocycle;
        BigInt order;  ///< 0 for an infinite-order (free) generator
    };

    CohomologyBasis() = default;

    CohomologyBasis(const IntMatrix& d_out, const IntMatrix& d_in) : d_out_(d_out) {
        const std::size_t n = d_out.cols();
        if (d_in.rows() != n) throw InvalidInput("CohomologyBasis: shape mismatch");
        SmithOptions ko;
        ko.want_v = true;
        ko.want_v_inverse = true;
        const auto ks = smith_normal_form(d_out, ko);
        const std::size_t r = ks.rank();
        z_ = n - r;
        kernel_ = IntMatrix(n, z_);
        kernel_inv_ = IntMatrix(z_, n);
        for (std::size_t j = 0; j < z_; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                kernel_(i, j) = ks.v(i, r + j);
                kernel_inv_(j, i) = ks.v_inverse(r + j, i);
            }
        const IntMatrix coords = kernel_inv_ * d_in;
        SmithOptions co;
        co.want_u = true;
        co.want_u_inverse = true;
        coord_snf_ = smith_normal_form(coords, co);
        const std::size_t rr = coord_snf_.rank();
        std::vector<BigInt> invariant;
        for (std::size_t j = 0; j < z_; ++j) {
            const BigInt order = j < rr ? coord_snf_.factors[j] : BigInt(0);
            if (order == 1) continue;
            IntVector col(z_);
            for (std::size_t i = 0; i < z_; ++i) col[i] = coord_snf_.u_inverse(i, j);
            generators_.push_back(Generator{mat_vec(kernel_, col), order});
            slots_.push_back(j);
            if (order != 0) invariant.push_back(order);
        }
        group_ = AbelianGroup::from_invariant_factors(z_ - rr, invariant);
    }

    const std::vector<Generator>& generators() const { return generators_; }
    const AbelianGroup& group() const { return group_; }

    bool is_cocycle(const IntVector& y) const {
        const auto dy = mat_vec(d_out_, y);
        for (const auto& v : dy)
            if (v != 0) return false;
        return true;
    }

    /// Coordinates of the class of cocycle y on generators(); torsion
    /// coordinates reduced into [0, order).
    IntVector class_coordinates(const IntVector& y) const {
        if (!is_cocycle(y)) throw InvalidInput("class_coordinates: not a cocycle");
        const auto c = mat_vec(kernel_inv_, y);
        const auto w = mat_vec(coord_snf_.u, c);
        IntVector out;
        for (std::size_t g = 0; g < slots_.size(); ++g) {
            BigInt x = w[slots_[g]];
            const BigInt& order = generators_[g].order;
            if (order != 0) {
                x %= order;
                if (x < 0) x += order;
            }
            out.push_back(x);
        }
        return out;
    }

    bool is_coboundary(const IntVector& y) const {
        for (const auto& x : class_coordinates(y))
            if (x != 0) return false;
        return true;
    }

private:
    IntMatrix d_out_;
    std::size_t z_ = 0;
    IntMatrix kernel_, kernel_inv_;
    SmithDecomposition coord_snf_;
    std::vector<Generator> generators_;
    std::vector<std::size_t> slots_;
    AbelianGroup group_;
};

template <class Label>
CohomologyBasis cohomology_basis(const CochainComplex<Label>& c, int k) {
    c.require(k);
    return CohomologyBasis(c.differential(k), c.differential(k - 1));
}

}  // namespace rtoric
