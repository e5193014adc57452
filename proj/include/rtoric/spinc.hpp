#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rtoric/charfun.hpp"
#include "rtoric/cochain_complex.hpp"
#include "rtoric/mod2_ring.hpp"
#include "rtoric/simplicial_cochains.hpp"

namespace rtoric {

/// One P_α: the mod-2 image of an integral 1-cocycle α on K_ω.
struct SpincGenerator {
    Face omega;
    std::vector<Face> odd_edges;  ///< U = {σ : k_σ odd}
    Mod2Class p;
};

struct SpincResult {
    bool orientable = false;
    bool spin_c = false;
    std::string reason;
    Mod2Class w2;
    std::vector<SpincGenerator> generators;
    std::vector<std::size_t> combination;  ///< generators summing to w2 when spin_c
    Mod2Class residual;                    ///< w2 reduced modulo Θ_2 + span{P_α}, nonzero when not spin^c
};

inline SpincResult spin_c(const SimplicialComplex& k, const CharacteristicFunction& lam) {
    require_characteristic(k, lam);
    SpincResult out;
    out.orientable = lam.is_orientable();
    const Mod2Ring ring(k, lam, std::max(2, int(lam.n()) + 1));
    out.w2 = stiefel_whitney_w1_w2(ring).w2;
    if (!out.orientable) {
        out.reason = "not orientable: [m] is not in row Λ";
        return out;
    }
    GF2Eliminator span = ring.theta(2);
    const std::size_t theta_gens = span.generators();
    for (Face w : lam.row_space_faces()) {
        const SimplicialComplex kw = k.full_subcomplex(w);
        const auto& edges = kw.faces_of_size(2);
        if (edges.empty()) continue;
        for (const auto& z : integer_kernel_basis(coboundary_matrix(kw, 2))) {
            SpincGenerator g{w, {}, ring.zero(2)};
            BitVector v(ring.monomial_count(2));
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (z[e] % 2 == 0) continue;
                g.odd_edges.push_back(edges[e]);
                Monomial x(k.m(), 0);
                for (unsigned u : vertices(edges[e])) x[u - 1] = 1;
                v.flip(*ring.lookup(2, x));
            }
            g.p = ring.reduce(2, v);
            span.insert(v);
            out.generators.push_back(std::move(g));
        }
    }
    out.residual = Mod2Class{2, span.reduce(out.w2.coeffs)};
    if (auto combo = span.express(out.w2.coeffs)) {
        out.spin_c = true;
        out.reason = out.w2.is_zero() ? "orientable and w2 = 0" : "orientable and w2 is a sum of P_alpha";
        for (auto id : *combo)
            if (id >= theta_gens) out.combination.push_back(id - theta_gens);
    } else {
        out.reason = "w2 is not in the span of the P_alpha";
    }
    return out;
}

}  // namespace rtoric
