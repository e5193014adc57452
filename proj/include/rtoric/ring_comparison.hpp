#pragma once

// Ψ_Λ: G^*(K,Λ) -> H^*(Q(K,Λ)) against the cup product.

#include <cstddef>
#include <string>
#include <vector>

#include "rtoric/oracle_q.hpp"
#include "rtoric/simplicial_cochains.hpp"
#include "rtoric/star_product.hpp"

namespace rtoric {

/// Ψ_Λ of a *-class: Σ_σ a(σ) (-1)^{|σ|} h_{σ,ω}.
inline IntVector psi(const InvariantQ& q, const StarClass& a) {
    const SimplicialComplex kw = q.simplicial().full_subcomplex(a.omega);
    const auto& faces = kw.faces_of_size(a.degree);
    IntVector out(q.complex().dim(a.degree));
    for (std::size_t j = 0; j < faces.size(); ++j) {
        if (a.cochain[j] == 0) continue;
        const auto h = q.h_element(faces[j], a.omega);
        const BigInt c = (a.degree % 2) ? BigInt(-a.cochain[j]) : a.cochain[j];
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h[i] != 0) out[i] += c * h[i];
    }
    return out;
}

/// Degreewise d ψ_ω = ψ_ω 2δ, for every ω ∈ row Λ and degree 0..cap.
inline bool psi_chain_map_check(const InvariantQ& q) {
    const auto& c = q.complex();
    for (Face w : q.lambda().row_space_faces()) {
        const SimplicialComplex kw = q.simplicial().full_subcomplex(w);
        for (int d = 0; d <= q.cohomology_cap(); ++d) {
            const IntMatrix psi_d = q.psi_map(w, d);
            if (psi_d.cols() == 0) continue;
            const IntMatrix lhs = c.differential(d) * psi_d;
            const IntMatrix rhs = q.psi_map(w, d + 1) * coboundary_matrix(kw, d, 2);
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

struct RingPairResult {
    std::string a, b;
    int degree = 0;
    bool exact = false;        ///< Ψ(a*b) = Ψ(a)Ψ(b) on the nose
    bool order_two = false;    ///< 2(Ψ(a*b) - Ψ(a)Ψ(b)) is a coboundary
};

struct RingReport {
    int truncation = 0;
    int product_cap = 0;  ///< products checked in degrees ≤ product_cap
    std::vector<RingPairResult> pairs;
    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto& p : pairs) f += !p.order_two;
        return f;
    }
};

/// For all pairs of G-table generators with deg a + deg b ≤ min(n, D-2),
/// solves 2(Ψ(a*b) - Ψ(a)·Ψ(b)) = d x over Z.
inline RingReport ring_comparison(const StarRing& star, const InvariantQ& q) {
    RingReport rep;
    rep.truncation = q.truncation();
    rep.product_cap = std::min(star.top_degree(), q.cohomology_cap());
    const auto& c = q.complex();
    std::vector<std::vector<StarGenerator>> gens;
    for (int i = 0; i <= rep.product_cap; ++i) gens.push_back(star.generators(i));
    for (int d = 0; d <= rep.product_cap; ++d) {
        const ImageLattice boundaries(c.differential(d - 1));
        const IntMatrix dout = c.differential(d);
        for (int i = 0; i <= d; ++i)
            for (const auto& ga : gens[std::size_t(i)])
                for (const auto& gb : gens[std::size_t(d - i)]) {
                    const StarClass ab = star.product(ga.cls, gb.cls);
                    IntVector diff = psi(q, ab);
                    const IntVector pp = q.multiply(i, psi(q, ga.cls), d - i, psi(q, gb.cls));
                    bool zero = true;
                    for (std::size_t t = 0; t < diff.size(); ++t) {
                        diff[t] -= pp[t];
                        zero = zero && diff[t] == 0;
                    }
                    RingPairResult r{generator_label(ga), generator_label(gb), d, zero, zero};
                    if (!zero) {
                        bool cocycle = true;
                        for (const auto& x : mat_vec(dout, diff)) cocycle = cocycle && x == 0;
                        for (auto& x : diff) x *= 2;
                        r.order_two = cocycle && boundaries.contains(diff);
                    }
                    rep.pairs.push_back(std::move(r));
                }
    }
    return rep;
}

/// h_{σ1,ω1} h_{σ2,ω2} = shuffle_sign(σ1,σ2) h_{σ1∪σ2,ω1+ω2} for every
/// admissible quadruple (σ_i ⊂ ω_i faces, σ1∩ω2 = ∅ = σ2∩ω1, degrees in
/// range). Returns (checked, failures).
inline std::pair<std::size_t, std::size_t> h_product_check(const InvariantQ& q, std::size_t limit = 4000) {
    const auto& k = q.simplicial();
    const auto omegas = q.lambda().row_space_faces();
    std::size_t checked = 0, bad = 0;
    for (Face w1 : omegas)
        for (Face w2 : omegas) {
            const SimplicialComplex k1 = k.full_subcomplex(w1 & ~w2), k2 = k.full_subcomplex(w2 & ~w1);
            for (int d1 = 0; d1 <= q.cohomology_cap(); ++d1)
                for (int d2 = 0; d1 + d2 <= q.cohomology_cap(); ++d2)
                    for (Face s1 : k1.faces_of_size(d1))
                        for (Face s2 : k2.faces_of_size(d2)) {
                            if (checked >= limit) return {checked, bad};
                            ++checked;
                            const IntVector lhs = q.multiply(d1, q.h_element(s1, w1), d2, q.h_element(s2, w2));
                            IntVector rhs = q.h_element(s1 | s2, w1 ^ w2);
                            if (shuffle_sign(s1, s2) < 0)
                                for (auto& x : rhs) x = -x;
                            if (lhs != rhs) ++bad;
                        }
        }
    return {checked, bad};
}

}  // namespace rtoric
