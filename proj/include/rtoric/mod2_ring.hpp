#pragma once

// Z/2[K]/Θ, graded, with canonical coset representatives. Degree-d
// monomials with support a face of K form the basis of Z/2[K]_d; Θ_d is
// spanned by θ_i times the degree d-1 monomials.

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtoric/charfun.hpp"
#include "rtoric/error.hpp"
#include "rtoric/gf2.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

using Monomial = std::vector<std::uint8_t>;  ///< exponent of x_1..x_m

inline Face monomial_support(const Monomial& x) {
    Face f = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) f |= Face(1) << i;
    return f;
}

inline std::string monomial_str(const Monomial& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        s += "x" + std::to_string(i + 1);
        if (x[i] > 1) s += "^" + std::to_string(x[i]);
    }
    return s.empty() ? "1" : s;
}

struct Mod2Class {
    int degree = 0;
    BitVector coeffs;  ///< over the degree's monomial basis, reduced modulo Θ

    bool is_zero() const { return !coeffs.any(); }
    friend bool operator==(const Mod2Class& a, const Mod2Class& b) {
        return a.degree == b.degree && a.coeffs == b.coeffs;
    }
};

class Mod2Ring {
public:
    /// Degrees 0..max_degree; the default n+1 shows the vanishing above n.
    Mod2Ring(const SimplicialComplex& k, const CharacteristicFunction& lam, int max_degree = -1)
        : k_(k), m_(k.m()), top_(max_degree < 0 ? int(lam.n()) + 1 : max_degree) {
        if (lam.m() != k.m()) throw InvalidInput("characteristic matrix and complex disagree on m");
        for (int d = 0; d <= top_; ++d) enumerate(d);
        theta_.emplace_back(1);  // Θ_0 = 0
        for (int d = 1; d <= top_; ++d) {
            GF2Eliminator e(basis_[std::size_t(d)].size());
            for (std::size_t i = 1; i <= lam.n(); ++i) {
                const Face row = lam.row(i);
                for (const Monomial& lower : basis_[std::size_t(d - 1)]) {
                    BitVector v(basis_[std::size_t(d)].size());
                    for (unsigned j : vertices(row)) {
                        Monomial x = lower;
                        ++x[j - 1];
                        const auto idx = lookup(d, x);
                        if (idx) v.flip(*idx);
                    }
                    e.insert(v);
                }
            }
            theta_.push_back(std::move(e));
        }
    }

    int max_degree() const { return top_; }
    unsigned m() const { return m_; }

    std::size_t monomial_count(int d) const { return basis_.at(std::size_t(d)).size(); }
    const Monomial& monomial(int d, std::size_t i) const { return basis_.at(std::size_t(d)).at(i); }
    std::size_t theta_rank(int d) const { return theta_.at(std::size_t(d)).rank(); }
    std::size_t dim(int d) const { return monomial_count(d) - theta_rank(d); }
    const GF2Eliminator& theta(int d) const { return theta_.at(std::size_t(d)); }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> out;
        for (int d = 0; d <= top_; ++d) out.push_back(dim(d));
        return out;
    }

    /// Index of a monomial in its degree's basis, or none when its support is not a face.
    std::optional<std::size_t> lookup(int d, const Monomial& x) const {
        const auto& idx = index_.at(std::size_t(d));
        auto it = idx.find(x);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    Mod2Class reduce(int d, const BitVector& v) const {
        require_degree(d);
        return Mod2Class{d, theta_[std::size_t(d)].reduce(v)};
    }

    Mod2Class zero(int d) const { return Mod2Class{d, BitVector(monomial_count(d))}; }
    Mod2Class one() const { return monomial_class(Monomial(m_, 0)); }

    Mod2Class monomial_class(const Monomial& x) const {
        int d = 0;
        for (auto e : x) d += e;
        require_degree(d);
        BitVector v(monomial_count(d));
        if (auto i = lookup(d, x)) v.set(*i);
        return reduce(d, v);
    }

    Mod2Class variable(unsigned i) const {
        Monomial x(m_, 0);
        x[i - 1] = 1;
        return monomial_class(x);
    }

    Mod2Class add(const Mod2Class& a, const Mod2Class& b) const {
        if (a.degree != b.degree) throw InvalidInput("adding mod-2 classes of different degrees");
        BitVector v = a.coeffs;
        v ^= b.coeffs;
        return Mod2Class{a.degree, v};
    }

    Mod2Class multiply(const Mod2Class& a, const Mod2Class& b) const {
        const int d = a.degree + b.degree;
        if (d > top_)
            throw BoundExceeded("mod-2 product in degree " + std::to_string(d) + " above computed range " +
                                std::to_string(top_));
        BitVector v(monomial_count(d));
        for (auto i : a.coeffs.ones())
            for (auto j : b.coeffs.ones()) {
                Monomial x = monomial(a.degree, i);
                const Monomial& y = monomial(b.degree, j);
                for (unsigned t = 0; t < m_; ++t) x[t] = std::uint8_t(x[t] + y[t]);
                if (auto idx = lookup(d, x)) v.flip(*idx);
            }
        return reduce(d, v);
    }

    /// Monomials not hit by a pivot of Θ_d; their classes form a basis of the quotient.
    std::vector<std::size_t> standard_monomials(int d) const {
        const auto piv = theta_.at(std::size_t(d)).pivots();
        std::vector<std::size_t> out;
        std::size_t p = 0;
        for (std::size_t i = 0; i < monomial_count(d); ++i) {
            if (p < piv.size() && piv[p] == i) {
                ++p;
                continue;
            }
            out.push_back(i);
        }
        return out;
    }

    std::string str(const Mod2Class& c) const {
        std::string s;
        for (auto i : c.coeffs.ones()) s += (s.empty() ? "" : " + ") + monomial_str(monomial(c.degree, i));
        return s.empty() ? "0" : s;
    }

private:
    void require_degree(int d) const {
        if (d < 0 || d > top_) throw BoundExceeded("degree " + std::to_string(d) + " outside computed range");
    }

    void enumerate(int d) {
        std::vector<Monomial> out;
        if (d == 0) {
            out.push_back(Monomial(m_, 0));
        } else {
            for (int s = 1; s <= std::min(d, k_.dim() + 1); ++s)
                for (Face f : k_.faces_of_size(s)) {
                    const auto vs = vertices(f);
                    Monomial x(m_, 0);
                    for (unsigned v : vs) x[v - 1] = 1;
                    compositions(x, vs, 0, d - s, out);
                }
        }
        std::map<Monomial, std::size_t> idx;
        for (std::size_t i = 0; i < out.size(); ++i) idx.emplace(out[i], i);
        basis_.push_back(std::move(out));
        index_.push_back(std::move(idx));
    }

    /// Distributes `extra` additional exponent units over vs[pos..].
    static void compositions(Monomial& x, const std::vector<unsigned>& vs, std::size_t pos, int extra,
                             std::vector<Monomial>& out) {
        if (pos + 1 == vs.size()) {
            x[vs[pos] - 1] = std::uint8_t(x[vs[pos] - 1] + extra);
            out.push_back(x);
            x[vs[pos] - 1] = std::uint8_t(x[vs[pos] - 1] - extra);
            return;
        }
        for (int e = 0; e <= extra; ++e) {
            x[vs[pos] - 1] = std::uint8_t(x[vs[pos] - 1] + e);
            compositions(x, vs, pos + 1, extra - e, out);
            x[vs[pos] - 1] = std::uint8_t(x[vs[pos] - 1] - e);
        }
    }

    SimplicialComplex k_;
    unsigned m_;
    int top_;
    std::vector<std::vector<Monomial>> basis_;
    std::vector<std::map<Monomial, std::size_t>> index_;
    std::vector<GF2Eliminator> theta_;
};

struct StiefelWhitney {
    Mod2Class w1;
    Mod2Class w2;
};

/// w1 = Σ x_i and w2 = Σ_{i<j} x_i x_j, reduced.
inline StiefelWhitney stiefel_whitney_w1_w2(const Mod2Ring& r) {
    if (r.max_degree() < 2) throw BoundExceeded("w2 needs the ring through degree 2");
    Mod2Class w1 = r.zero(1), w2 = r.zero(2);
    for (unsigned i = 1; i <= r.m(); ++i) {
        w1 = r.add(w1, r.variable(i));
        for (unsigned j = i + 1; j <= r.m(); ++j) {
            Monomial x(r.m(), 0);
            x[i - 1] = x[j - 1] = 1;
            w2 = r.add(w2, r.monomial_class(x));
        }
    }
    return {w1, w2};
}

}  // namespace rtoric
