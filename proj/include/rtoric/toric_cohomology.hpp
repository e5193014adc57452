#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rtoric/abelian_group.hpp"
#include "rtoric/charfun.hpp"
#include "rtoric/mod2_ring.hpp"
#include "rtoric/simplicial_cochains.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

struct GSummand {
    Face omega;
    AbelianGroup group;  ///< H̃^{i-1}(K_ω)
};

/// G^i(K,Λ) = ⊕_{ω ∈ row Λ} H̃^{i-1}(K_ω) for i = 0..dim K + 1. Every ω of
/// row Λ is listed in every degree, trivial summands included.
struct GTable {
    std::vector<Face> omegas;
    std::vector<std::vector<GSummand>> degrees;

    int top_degree() const { return int(degrees.size()) - 1; }

    AbelianGroup total(int i) const {
        AbelianGroup g;
        if (i < 0 || i > top_degree()) return g;
        for (const auto& s : degrees[std::size_t(i)]) g = g + s.group;
        return g;
    }
};

inline void require_full_rank(const SimplicialComplex& k, const CharacteristicFunction& lam) {
    if (lam.n() != std::size_t(k.dim() + 1))
        throw PreconditionFailed("characteristic matrix has n = " + std::to_string(lam.n()) + " rows but dim K + 1 = " +
                                 std::to_string(k.dim() + 1));
}

inline GTable g_table(const SimplicialComplex& k, const CharacteristicFunction& lam) {
    require_characteristic(k, lam);
    const int top = k.dim() + 1;
    GTable t;
    t.omegas = lam.row_space_faces();
    t.degrees.assign(std::size_t(top + 1), {});
    for (Face w : t.omegas) {
        const SimplicialComplex kw = k.full_subcomplex(w);
        if (w != 0 && kw.dim() < 0)
            throw PreconditionFailed("K_ω = {∅} for ω = " + face_str(w) + " in row Λ; the instance has no (n-1)-face");
        const auto c = reduced_cochain_complex(kw);
        for (int i = 0; i <= top; ++i) {
            AbelianGroup g;
            if (i - 1 <= kw.dim()) g = cohomology(c, i - 1);
            t.degrees[std::size_t(i)].push_back({w, g});
        }
    }
    return t;
}

/// One summand of the assembled answer and where it came from.
struct ProvenanceEntry {
    int degree;
    std::string summand;  ///< "Z", "Z/3", "Z/4", "Z/2"
    std::string origin;   ///< "free", "odd-torsion", "doubled-2-torsion", "h-vector-residual"
    std::optional<Face> omega;
    std::string source;   ///< the G-summand it came from, e.g. "Z/2"
};

struct IntegralCohomology {
    std::vector<AbelianGroup> groups;  ///< degrees 0..n
    std::vector<ProvenanceEntry> ledger;

    friend bool operator==(const IntegralCohomology& a, const IntegralCohomology& b) { return a.groups == b.groups; }
};

inline void require_homology_sphere(const SimplicialComplex& k) {
    if (!is_homology_sphere(k))
        throw PreconditionFailed("K is not an integral homology sphere; assembly needs a sphere (use --oracle)");
}

/// Integral cohomology of M(K,Λ) from G^* and the h-vector. Per degree:
/// free rank and odd torsion copied from G^i, each Z/2^k of G^i becomes
/// Z/2^{k+1}, and the number of plain Z/2 summands is fixed by the mod-2
/// Betti numbers h_i through the universal coefficient theorem.
inline IntegralCohomology assemble_integral_cohomology(const SimplicialComplex& k,
                                                       const CharacteristicFunction& lam) {
    require_full_rank(k, lam);
    require_homology_sphere(k);
    const GTable g = g_table(k, lam);
    const auto h = k.f_h_vectors().h;
    const int n = k.dim() + 1;
    IntegralCohomology out;
    out.groups.assign(std::size_t(n + 1), {});
    std::vector<std::int64_t> e(std::size_t(n + 2), 0);
    std::vector<std::size_t> free(std::size_t(n + 1), 0), s(std::size_t(n + 1), 0);
    std::vector<std::vector<BigInt>> torsion(std::size_t(n + 1));
    for (int i = 0; i <= n; ++i) {
        for (const auto& sm : g.degrees[std::size_t(i)]) {
            for (std::size_t r = 0; r < sm.group.free_rank(); ++r)
                out.ledger.push_back({i, "Z", "free", sm.omega, "Z"});
            free[std::size_t(i)] += sm.group.free_rank();
            for (const auto& q : sm.group.torsion()) {
                if (q % 2 == 0) {
                    torsion[std::size_t(i)].push_back(q * 2);
                    ++s[std::size_t(i)];
                    out.ledger.push_back({i, "Z/" + BigInt(q * 2).str(), "doubled-2-torsion", sm.omega, "Z/" + q.str()});
                } else {
                    torsion[std::size_t(i)].push_back(q);
                    out.ledger.push_back({i, "Z/" + q.str(), "odd-torsion", sm.omega, "Z/" + q.str()});
                }
            }
        }
    }
    for (int i = n; i >= 0; --i)
        e[std::size_t(i)] = h[std::size_t(i)] - std::int64_t(free[std::size_t(i)]) - e[std::size_t(i + 1)];
    if (e[0] != 0) throw FalsificationFinding("assembly: even-torsion count in degree 0 is " + std::to_string(e[0]));
    for (int i = 0; i <= n; ++i) {
        const std::int64_t c = e[std::size_t(i)] - std::int64_t(s[std::size_t(i)]);
        if (c < 0)
            throw FalsificationFinding("assembly: negative Z/2 residual " + std::to_string(c) + " in degree " +
                                       std::to_string(i));
        for (std::int64_t r = 0; r < c; ++r) {
            torsion[std::size_t(i)].push_back(2);
            out.ledger.push_back({i, "Z/2", "h-vector-residual", std::nullopt, ""});
        }
        out.groups[std::size_t(i)] = AbelianGroup(free[std::size_t(i)], torsion[std::size_t(i)]);
    }
    return out;
}

/// Mod-2 Betti numbers of M(K,Λ): the h-vector, cross-checked against the
/// dimensions of Z/2[K]/Θ.
inline std::vector<std::int64_t> mod2_betti(const SimplicialComplex& k, const CharacteristicFunction& lam) {
    const auto h = k.f_h_vectors().h;
    const Mod2Ring ring(k, lam);
    for (int d = 0; d <= ring.max_degree(); ++d) {
        const std::int64_t expect = d < int(h.size()) ? h[std::size_t(d)] : 0;
        if (std::int64_t(ring.dim(d)) != expect)
            throw FalsificationFinding("dim (Z/2[K]/Θ)_" + std::to_string(d) + " = " + std::to_string(ring.dim(d)) +
                                       " but h_" + std::to_string(d) + " = " + std::to_string(expect));
    }
    return h;
}

/// Σ_i (-1)^i rank-free(H^i).
inline std::int64_t euler_characteristic(const std::vector<AbelianGroup>& groups) {
    std::int64_t chi = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) chi += (i % 2 ? -1 : 1) * std::int64_t(groups[i].free_rank());
    return chi;
}

}  // namespace rtoric
