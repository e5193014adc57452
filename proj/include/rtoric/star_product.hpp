#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "rtoric/charfun.hpp"
#include "rtoric/cochain_complex.hpp"
#include "rtoric/simplicial_cochains.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

/// A class of G^i: an integer (i-1)-cocycle on K_ω, i.e. a function on the
/// faces of K_ω of size i (in canonical order).
struct StarClass {
    int degree = 0;
    Face omega = 0;
    IntVector cochain;
};

struct StarGenerator {
    StarClass cls;
    BigInt order;  ///< 0 when of infinite order
    std::size_t slot;  ///< position among the generators of (ω, degree)
};

inline std::string generator_label(const StarGenerator& g) {
    return "g" + std::to_string(g.cls.degree) + face_str(g.cls.omega) + "#" + std::to_string(g.slot);
}

/// The *-product on G^*(K,Λ), with per-(ω, degree) cohomology bases for
/// reading classes.
class StarRing {
public:
    StarRing(const SimplicialComplex& k, const CharacteristicFunction& lam) : k_(k), lam_(lam), n_(k.dim() + 1) {
        require_characteristic(k, lam);
        for (Face w : lam.row_space_faces()) {
            omegas_.push_back(w);
            auto& entry = blocks_[w];
            entry.kw = k.full_subcomplex(w);
            for (int i = 0; i <= n_; ++i)
                entry.bases.emplace_back(coboundary_matrix(entry.kw, i), coboundary_matrix(entry.kw, i - 1));
        }
    }

    int top_degree() const { return n_; }
    const std::vector<Face>& omegas() const { return omegas_; }
    const SimplicialComplex& full_subcomplex(Face w) const { return block(w).kw; }

    const CohomologyBasis& basis(Face w, int i) const {
        if (i < 0 || i > n_) throw InvalidInput("degree " + std::to_string(i) + " outside 0.." + std::to_string(n_));
        return block(w).bases[std::size_t(i)];
    }

    /// Generators of G^i, in row-space order then basis order.
    std::vector<StarGenerator> generators(int i) const {
        std::vector<StarGenerator> out;
        for (Face w : omegas_) {
            const auto& gens = basis(w, i).generators();
            for (std::size_t s = 0; s < gens.size(); ++s) out.push_back({StarClass{i, w, gens[s].cocycle}, gens[s].order, s});
        }
        return out;
    }

    StarClass unit() const { return StarClass{0, 0, IntVector{1}}; }

    StarClass zero(int i, Face w) const { return StarClass{i, w, IntVector(block(w).kw.faces_of_size(i).size())}; }

    void require_cocycle(const StarClass& a) const {
        if (a.cochain.size() != block(a.omega).kw.faces_of_size(a.degree).size())
            throw InvalidInput("star class has the wrong number of coordinates");
        if (!basis(a.omega, a.degree).is_cocycle(a.cochain)) throw InvalidInput("star class is not a cocycle");
    }

    /// a * b on K_{ω1+ω2}: restrict a to ω1∖ω2 and b to ω2∖ω1, then join.
    StarClass product(const StarClass& a, const StarClass& b) const {
        require_cocycle(a);
        require_cocycle(b);
        const Face w1 = a.omega & ~b.omega, w2 = b.omega & ~a.omega, w = a.omega ^ b.omega;
        const int deg = a.degree + b.degree;
        if (deg > n_) return StarClass{deg, w, {}};
        const auto& ka = block(a.omega).kw;
        const auto& kb = block(b.omega).kw;
        const auto& kw = block(w).kw;
        StarClass out = zero(deg, w);
        const auto& target = kw.faces_of_size(deg);
        for (std::size_t t = 0; t < target.size(); ++t) {
            const Face s = target[t], s1 = s & w1, s2 = s & w2;
            if (card(s1) != a.degree || card(s2) != b.degree) continue;
            const BigInt& x = a.cochain[ka.face_index(s1)];
            if (x == 0) continue;
            const BigInt& y = b.cochain[kb.face_index(s2)];
            if (y == 0) continue;
            out.cochain[t] = shuffle_sign(s1, s2) * x * y;
        }
        if (!basis(w, deg).is_cocycle(out.cochain))
            throw FalsificationFinding("*-product of cocycles is not a cocycle on K_" + face_str(w));
        return out;
    }

    StarClass add(const StarClass& a, const StarClass& b, const BigInt& scale = 1) const {
        if (a.degree != b.degree || a.omega != b.omega) throw InvalidInput("adding star classes from different summands");
        StarClass c = a;
        for (std::size_t i = 0; i < c.cochain.size(); ++i) c.cochain[i] += scale * b.cochain[i];
        return c;
    }

    /// a + δx for an (i-2)-cochain x on K_ω.
    StarClass add_coboundary(const StarClass& a, const IntVector& x) const {
        const auto d = coboundary_matrix(block(a.omega).kw, a.degree - 1);
        const auto dx = mat_vec(d, x);
        StarClass c = a;
        for (std::size_t i = 0; i < c.cochain.size(); ++i) c.cochain[i] += dx[i];
        return c;
    }

    bool is_coboundary(const StarClass& a) const {
        if (a.degree > n_) return true;
        return basis(a.omega, a.degree).is_coboundary(a.cochain);
    }

    IntVector class_coordinates(const StarClass& a) const { return basis(a.omega, a.degree).class_coordinates(a.cochain); }

private:
    struct Block {
        SimplicialComplex kw;
        std::vector<CohomologyBasis> bases;
    };

    const Block& block(Face w) const {
        auto it = blocks_.find(w);
        if (it == blocks_.end()) throw InvalidInput(face_str(w) + " is not in the row space");
        return it->second;
    }

    SimplicialComplex k_;
    CharacteristicFunction lam_;
    int n_;
    std::vector<Face> omegas_;
    std::map<Face, Block> blocks_;
};

}  // namespace rtoric
