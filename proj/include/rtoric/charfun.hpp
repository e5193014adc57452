#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtoric/error.hpp"
#include "rtoric/face.hpp"
#include "rtoric/gf2.hpp"
#include "rtoric/shelling.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

/// An element ω of row Λ with the GF(2) coordinates c (over the rows of Λ)
/// that produced it: ω = Σ_{i ∈ c} λ_i.
struct RowSpaceElement {
    Face omega;
    std::uint64_t coords;
};

/// Mod-2 characteristic matrix Λ: (Z/2)^m -> (Z/2)^n of full rank n.
class CharacteristicFunction {
public:
    CharacteristicFunction() = default;

    explicit CharacteristicFunction(GF2Matrix lambda, std::size_t enumeration_bound = kDefaultEnumerationBound)
        : a_(std::move(lambda)), bound_(enumeration_bound) {
        if (a_.rows() == 0) throw InvalidInput("characteristic matrix has no rows");
        basis_ = gf2_rref(a_.row_masks());
        if (basis_.rank() != a_.rows())
            throw InvalidInput("characteristic matrix has rank " + std::to_string(basis_.rank()) + " < n = " +
                               std::to_string(a_.rows()));
    }

    static CharacteristicFunction from_bitstrings(const std::vector<std::string>& rows) {
        return CharacteristicFunction(GF2Matrix::from_bitstrings(rows));
    }

    std::size_t n() const { return a_.rows(); }
    unsigned m() const { return unsigned(a_.cols()); }
    const GF2Matrix& matrix() const { return a_; }

    /// λ_i as a subset of [m], i = 1..n.
    Face row(std::size_t i) const { return a_.row(i - 1); }

    /// Column of vertex j (1-indexed) as a bitmask over the n rows.
    std::uint64_t column(unsigned j) const { return a_.column(j - 1); }

    bool in_row_space(Face omega) const { return basis_.contains(omega); }

    /// Row space in canonical face order, with coordinates over λ_1..λ_n.
    std::vector<RowSpaceElement> row_space() const {
        const auto span = gf2_span(a_.row_masks(), bound_);
        std::vector<RowSpaceElement> out;
        for (std::size_t c = 0; c < span.size(); ++c) out.push_back({span[c], std::uint64_t(c)});
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return face_less(x.omega, y.omega); });
        return out;
    }

    std::vector<Face> row_space_faces() const {
        std::vector<Face> out;
        for (const auto& e : row_space()) out.push_back(e.omega);
        return out;
    }

    std::vector<Face> kernel_basis() const { return gf2_kernel_basis(a_); }

    /// ker Λ in canonical face order.
    std::vector<Face> kernel() const {
        auto k = gf2_span(kernel_basis(), bound_);
        std::sort(k.begin(), k.end(), FaceLess{});
        return k;
    }

    bool is_orientable() const { return in_row_space(full_set(m())); }

    /// Columns of the vertices of f are linearly independent.
    bool independent_on(Face f) const {
        std::vector<std::uint64_t> cols;
        for (unsigned v : vertices(f)) cols.push_back(column(v));
        return gf2_rref(cols).rank() == cols.size();
    }

    /// M·Λ for an invertible n×n GF(2) matrix M.
    CharacteristicFunction transformed(const GF2Matrix& mtx) const {
        if (mtx.rows() != n() || mtx.cols() != n()) throw InvalidInput("basis change has wrong shape");
        std::vector<std::uint64_t> rows;
        for (std::size_t i = 0; i < n(); ++i) {
            std::uint64_t r = 0;
            for (std::size_t k = 0; k < n(); ++k)
                if (mtx.get(i, k)) r ^= a_.row(k);
            rows.push_back(r);
        }
        return CharacteristicFunction(GF2Matrix::from_row_masks(rows, m()), bound_);
    }

    /// Λ with one extra column (for vertex m+1).
    CharacteristicFunction with_column(std::uint64_t col) const {
        if (m() + 1 > kMaxVertices) throw BoundExceeded("characteristic matrix would exceed 64 columns");
        std::vector<std::uint64_t> rows;
        for (std::size_t i = 0; i < n(); ++i) rows.push_back(a_.row(i) | (((col >> i) & 1u) << m()));
        return CharacteristicFunction(GF2Matrix::from_row_masks(rows, m() + 1), bound_);
    }

    std::vector<std::string> bitstrings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n(); ++i) out.push_back(a_.row_string(i));
        return out;
    }

    friend bool operator==(const CharacteristicFunction& x, const CharacteristicFunction& y) { return x.a_ == y.a_; }

private:
    GF2Matrix a_;
    std::size_t bound_ = kDefaultEnumerationBound;
    GF2Basis basis_;
};

/// Non-singularity on every face, checked on facets. Returns the smallest
/// (canonical order) face whose columns are dependent, if any.
inline std::optional<Face> check_nonsingular(const SimplicialComplex& k, const CharacteristicFunction& lam) {
    if (lam.m() != k.m())
        throw InvalidInput("characteristic matrix has " + std::to_string(lam.m()) + " columns, complex has m = " +
                           std::to_string(k.m()));
    std::optional<Face> worst;
    for (Face f : k.facets()) {
        if (lam.independent_on(f)) continue;
        for_each_subset(f, [&](Face s) {
            if (!lam.independent_on(s) && (!worst || face_less(s, *worst))) worst = s;
        });
    }
    return worst;
}

inline void require_characteristic(const SimplicialComplex& k, const CharacteristicFunction& lam) {
    if (auto bad = check_nonsingular(k, lam))
        throw InvalidInput("non-singularity fails on face " + face_str(*bad));
}

/// |g ∩ ω| even for all g ∈ ker Λ, ω ∈ row Λ; a counterexample (g, ω) otherwise.
inline std::optional<std::pair<Face, Face>> parity_check(const CharacteristicFunction& lam) {
    const auto rows = lam.row_space_faces();
    for (Face g : lam.kernel())
        for (Face w : rows)
            if (card(g & w) % 2) return std::make_pair(g, w);
    return std::nullopt;
}

/// (S_σK, Λ') where the new column is Σ_{k∈σ} Λ(a_k).
inline std::pair<SimplicialComplex, CharacteristicFunction> extend_for_stellar(const SimplicialComplex& k,
                                                                              const CharacteristicFunction& lam, Face sigma) {
    std::uint64_t col = 0;
    for (unsigned v : vertices(sigma)) col ^= lam.column(v);
    SimplicialComplex k2 = k.stellar_subdivision(sigma);
    CharacteristicFunction lam2 = lam.with_column(col);
    if (auto bad = check_nonsingular(k2, lam2))
        throw FalsificationFinding("stellar extension lost non-singularity on " + face_str(*bad));
    return {std::move(k2), std::move(lam2)};
}

/// For each facet σ_j of the shelling, the unique ω_j ∈ row Λ with ω_j ∩ σ_j = r(σ_j).
inline std::vector<Face> unique_omega_for_restriction(const SimplicialComplex& k, const CharacteristicFunction& lam,
                                                      const ShellingCertificate& shelling) {
    if (lam.n() != std::size_t(k.dim() + 1))
        throw PreconditionFailed("characteristic matrix rank must equal dim K + 1");
    const auto rows = lam.row_space_faces();
    std::vector<Face> out;
    for (std::size_t j = 0; j < shelling.facet_order.size(); ++j) {
        const Face s = shelling.facet_order[j], r = shelling.restrictions[j];
        std::vector<Face> hits;
        for (Face w : rows)
            if ((w & s) == r) hits.push_back(w);
        if (hits.size() != 1)
            throw FalsificationFinding("facet " + face_str(s) + " with restriction " + face_str(r) + " has " +
                                       std::to_string(hits.size()) + " matching row-space elements");
        out.push_back(hits.front());
    }
    return out;
}

}  // namespace rtoric
