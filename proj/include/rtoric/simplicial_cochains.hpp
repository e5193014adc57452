#pragma once

#include <vector>

#include "rtoric/cochain_complex.hpp"
#include "rtoric/face.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

/// Coboundary C̃^{k-1} -> C̃^k on faces of size k -> size k+1 under the
/// ascending orientation, scaled by `scale`.
inline IntMatrix coboundary_matrix(const SimplicialComplex& k, int size, long scale = 1) {
    const auto& src = k.faces_of_size(size);
    const auto& dst = k.faces_of_size(size + 1);
    IntMatrix d(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const Face s = src[c];
        for (Face rest = k.vertex_set() & ~s; rest; rest &= rest - 1) {
            const Face bit = rest & -rest;
            if (!k.is_face(s | bit)) continue;
            const unsigned v = unsigned(std::countr_zero(bit)) + 1;
            d(k.face_index(s | bit), c) = scale * insertion_sign(s, v);
        }
    }
    return d;
}

/// Reduced cochains with ∅ in degree -1, degrees -1..dim.
inline CochainComplex<Face> reduced_cochain_complex(const SimplicialComplex& k) {
    std::vector<std::vector<Face>> bases;
    std::vector<IntMatrix> ds;
    for (int deg = -1; deg <= k.dim(); ++deg) {
        bases.push_back(k.faces_of_size(deg + 1));
        ds.push_back(coboundary_matrix(k, deg + 1));
    }
    return CochainComplex<Face>(-1, std::move(bases), std::move(ds));
}

/// B^*(K_ω) = (C̃^{*-1}(K_ω), 2δ), degrees 0..dim K_ω + 1.
inline CochainComplex<Face> b_complex(const SimplicialComplex& k, Face omega) {
    const SimplicialComplex kw = k.full_subcomplex(omega);
    std::vector<std::vector<Face>> bases;
    std::vector<IntMatrix> ds;
    for (int deg = 0; deg <= kw.dim() + 1; ++deg) {
        bases.push_back(kw.faces_of_size(deg));
        ds.push_back(coboundary_matrix(kw, deg, 2));
    }
    return CochainComplex<Face>(0, std::move(bases), std::move(ds));
}

/// H̃^k(K) for k = -1..dim.
inline std::vector<AbelianGroup> reduced_cohomology(const SimplicialComplex& k) {
    return cohomology_all(reduced_cochain_complex(k));
}

/// Integral homology (n-1)-sphere test, n = dim + 1: H̃^* ≅ H̃^*(S^{n-1}).
inline bool is_homology_sphere(const SimplicialComplex& k) {
    const auto h = reduced_cohomology(k);
    for (int deg = -1; deg <= k.dim(); ++deg) {
        const auto& g = h[std::size_t(deg + 1)];
        if (deg == k.dim() ? g != AbelianGroup::integers() : !g.is_trivial()) return false;
    }
    return true;
}

}  // namespace rtoric
