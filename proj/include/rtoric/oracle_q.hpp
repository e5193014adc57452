#pragma once

// The DGA Q_K = (⊗ Γ)/J_K and its ker Λ-invariants, truncated below degree D.
//
// Γ has basis μ_d = [-1, 1, ...] and μ'_d = [1, -1, ...] (d+1 entries). A
// factor is encoded as (d, p) with p = 0 for μ_d and p = 1 for μ'_d; its
// first entry is p and its last entry is p ^ (d & 1). [a]·[b] is the
// concatenation when last(a) = first(b) and zero otherwise, so
// (d, p)(e, q) = (d+e, p) iff q = p ^ (d & 1). Also
// d(d, p) = (d+1, p ^ 1) - (-1)^d (d+1, p).
//
// A basis element of ⊗Γ is a degree vector (4 bits per vertex) and a prime
// mask P (bit i set when factor i is a μ'). It lies in J_K unless the
// positive-degree positions form a face.

#include <bit>
#include <functional>
#include <optional>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rtoric/charfun.hpp"
#include "rtoric/cochain_complex.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

inline constexpr unsigned kDefaultQBound = 12;

struct QCell {
    std::uint64_t deg = 0;  ///< nibble i-1 is the degree of factor i
    Face primes = 0;

    unsigned degree_at(unsigned i) const { return unsigned(deg >> (4 * (i - 1))) & 15u; }
    int total_degree() const {
        int t = 0;
        for (std::uint64_t x = deg; x; x >>= 4) t += int(x & 15u);
        return t;
    }
    Face support() const {
        Face f = 0;
        for (unsigned i = 0; i < 16; ++i)
            if ((deg >> (4 * i)) & 15u) f |= Face(1) << i;
        return f;
    }
    Face odd() const {
        Face f = 0;
        for (unsigned i = 0; i < 16; ++i)
            if ((deg >> (4 * i)) & 1u) f |= Face(1) << i;
        return f;
    }

    friend bool operator==(const QCell& a, const QCell& b) { return a.deg == b.deg && a.primes == b.primes; }
    friend bool operator<(const QCell& a, const QCell& b) {
        return a.deg != b.deg ? a.deg < b.deg : a.primes < b.primes;
    }
};

struct QCellHash {
    std::size_t operator()(const QCell& c) const { return std::hash<std::uint64_t>()(c.deg * 0x9E3779B97F4A7C15ull ^ c.primes); }
};

using QElement = std::map<QCell, std::int64_t>;

inline void add_term(QElement& v, const QCell& c, std::int64_t x) {
    if (x == 0) return;
    auto it = v.find(c);
    if (it == v.end()) {
        v.emplace(c, x);
        return;
    }
    it->second = detail::checked_add(it->second, x);
    if (it->second == 0) v.erase(it);
}

inline std::string qcell_str(const QCell& c, unsigned m) {
    std::string s;
    for (unsigned i = 1; i <= m; ++i) {
        if (!s.empty()) s += "⊗";
        s += (c.primes & vertex_bit(i)) ? "m'" : "m";
        s += std::to_string(c.degree_at(i));
    }
    return s;
}

/// Product of basis elements in ⊗Γ with the Koszul sign; nullopt when zero.
/// `k` may be null for the free tensor algebra.
inline std::optional<std::pair<QCell, int>> q_basis_product(const QCell& a, const QCell& b, const SimplicialComplex* k) {
    const Face oa = a.odd();
    if (b.primes != (a.primes ^ oa)) return std::nullopt;
    if (k && !k->is_face(a.support() | b.support())) return std::nullopt;
    // Σ_i deg b_i Σ_{j>i} deg a_j, mod 2
    int parity = 0;
    for (Face ob = b.odd(); ob; ob &= ob - 1) {
        const Face bit = ob & -ob;
        parity += std::popcount(oa & ~((bit << 1) - 1));
    }
    return std::make_pair(QCell{a.deg + b.deg, a.primes}, (parity & 1) ? -1 : 1);
}

inline QElement q_multiply(const QElement& a, const QElement& b, const SimplicialComplex* k) {
    QElement out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b)
            if (auto p = q_basis_product(x, y, k)) add_term(out, p->first, p->second * detail::checked_mul(cx, cy));
    return out;
}

/// d(⊗ a_i) = Σ_i (-1)^{Σ_{j<i} deg a_j} a_1 ⊗ .. ⊗ d a_i ⊗ .. ⊗ a_m, modulo J_K.
inline QElement q_differential(const QElement& v, unsigned m, const SimplicialComplex* k) {
    QElement out;
    for (const auto& [c, x] : v) {
        const Face odd = c.odd(), supp = c.support();
        for (unsigned i = 1; i <= m; ++i) {
            const Face bit = vertex_bit(i);
            if (k && !(supp & bit) && !k->is_face(supp | bit)) continue;
            if (c.degree_at(i) >= 15) throw BoundExceeded("Q factor degree above 15");
            const std::int64_t s = (std::popcount(odd & (bit - 1)) % 2) ? -x : x;
            const QCell up{c.deg + (std::uint64_t(1) << (4 * (i - 1))), c.primes};
            add_term(out, {up.deg, up.primes ^ bit}, s);
            add_term(out, up, (c.degree_at(i) % 2) ? s : -s);
        }
    }
    return out;
}

/// g swaps μ and μ' in the factors i ∈ g.
inline QElement q_act(Face g, const QElement& v) {
    QElement out;
    for (const auto& [c, x] : v) add_term(out, {c.deg, c.primes ^ g}, x);
    return out;
}

/// The unit ⊗(μ_0 + μ'_0), expanded over all prime masks.
inline QElement q_unit(unsigned m) {
    QElement u;
    for_each_subset(full_set(m), [&](Face p) { add_term(u, {0, p}, 1); });
    return u;
}

/// x_{1,i} (shape (1,0)) or y_{0,i} (μ'_0), with 1 in every other factor.
inline QElement q_generator(unsigned m, unsigned i, std::uint64_t degree, bool prime) {
    QElement v;
    for_each_subset(full_set(m) & ~vertex_bit(i), [&](Face p) {
        add_term(v, {degree << (4 * (i - 1)), prime ? (p | vertex_bit(i)) : p}, 1);
    });
    return v;
}

/// Q(K,Λ) in degrees 0..D-1, spanned by orbit sums N(c) = Σ_{g ∈ ker Λ} g·c
/// over canonical prime masks. Cohomology is meaningful in degrees ≤ D-2.
class InvariantQ {
public:
    InvariantQ(const SimplicialComplex& k, const CharacteristicFunction& lam, int truncation = -1,
               unsigned bound = kDefaultQBound)
        : k_(k), lam_(lam), n_(k.dim() + 1), trunc_(truncation < 0 ? n_ + 2 : truncation) {
        require_characteristic(k, lam);
        if (k.m() > bound) throw BoundExceeded("Q(K,Λ) with m = " + std::to_string(k.m()) + " exceeds bound " + std::to_string(bound));
        if (k.m() > 16 || trunc_ > 15) throw BoundExceeded("Q encoding holds at most 16 vertices and degree 15");
        if (trunc_ < n_ + 2)
            throw InvalidInput("truncation " + std::to_string(trunc_) + " below n+2 = " + std::to_string(n_ + 2));
        for (Face g : lam.kernel_basis()) {
            for (const auto& [p, r] : kernel_rows_)
                if (g & p) g ^= r;
            const Face piv = g & -g;
            for (auto& [p, r] : kernel_rows_)
                if (r & piv) r ^= g;
            kernel_rows_.emplace_back(piv, g);
            pivot_mask_ |= piv;
        }
        std::vector<std::vector<QCell>> bases;
        for (int d = 0; d < trunc_; ++d) {
            std::vector<QCell> cells;
            const Face free = full_set(k.m()) & ~pivot_mask_;
            for (int s = (d == 0 ? 0 : 1); s <= std::min(d, n_); ++s)
                for (Face f : k.faces_of_size(s))
                    for (std::uint64_t deg : compositions(f, d))
                        for_each_subset(free, [&](Face p) { cells.push_back({deg, p}); });
            std::unordered_map<QCell, std::size_t, QCellHash> idx;
            for (std::size_t i = 0; i < cells.size(); ++i) idx.emplace(cells[i], i);
            bases.push_back(std::move(cells));
            index_.push_back(std::move(idx));
        }
        std::vector<IntMatrix> ds;
        for (int d = 0; d < trunc_; ++d) {
            const auto& src = bases[std::size_t(d)];
            const bool last = d + 1 == trunc_;
            IntMatrix m(last ? 0 : bases[std::size_t(d + 1)].size(), src.size());
            for (std::size_t j = 0; j < src.size() && !last; ++j)
                for (const auto& [c, x] : q_differential(QElement{{src[j], 1}}, k.m(), &k_))
                    m(index(d + 1, {c.deg, canonical(c.primes)}), j) += x;
            ds.push_back(std::move(m));
        }
        complex_ = CochainComplex<QCell>(0, std::move(bases), std::move(ds));
    }

    const CochainComplex<QCell>& complex() const { return complex_; }
    const SimplicialComplex& simplicial() const { return k_; }
    const CharacteristicFunction& lambda() const { return lam_; }
    int truncation() const { return trunc_; }
    /// Highest degree whose cohomology the truncation determines.
    int cohomology_cap() const { return trunc_ - 2; }

    Face canonical(Face p) const {
        for (const auto& [piv, r] : kernel_rows_)
            if (p & piv) p ^= r;
        return p;
    }

    std::size_t index(int d, const QCell& c) const {
        auto it = index_.at(std::size_t(d)).find(c);
        if (it == index_.at(std::size_t(d)).end()) throw InvalidInput("not a basis cell of Q(K,Λ)");
        return it->second;
    }

    AbelianGroup cohomology(int d) const {
        require_cap(d);
        return rtoric::cohomology(complex_, d);
    }

    CohomologyBasis cohomology_basis(int d) const {
        require_cap(d);
        return CohomologyBasis(complex_.differential(d), complex_.differential(d - 1));
    }

    /// Product of invariant elements: a·b = Σ_r a_r N(e_r · b) with e_r the
    /// representative cell. Only the orbit member of b with prime mask
    /// P_r ^ odd(e_r) can pair with e_r.
    IntVector multiply(int da, const IntVector& a, int db, const IntVector& b) const {
        const int d = da + db;
        if (d >= trunc_)
            throw BoundExceeded("product in degree " + std::to_string(d) + " needs truncation above " + std::to_string(trunc_));
        const auto& la = complex_.labels(da);
        const auto& lb = complex_.labels(db);
        IntVector out(complex_.dim(d));
        for (std::size_t r = 0; r < la.size(); ++r) {
            if (a[r] == 0) continue;
            const Face want = la[r].primes ^ la[r].odd();
            const Face want_rep = canonical(want);
            for (std::size_t l = 0; l < lb.size(); ++l) {
                if (b[l] == 0 || lb[l].primes != want_rep) continue;
                const auto p = q_basis_product(la[r], QCell{lb[l].deg, want}, &k_);
                if (!p) continue;
                out[index(d, p->first)] += p->second * a[r] * b[l];
            }
        }
        return out;
    }

    /// Full ⊗Γ expansion of an invariant vector.
    QElement expand(int d, const IntVector& v) const {
        std::vector<Face> kernel;
        for (const auto& [p, r] : kernel_rows_) kernel.push_back(r);
        const auto group = gf2_span(kernel);
        QElement out;
        const auto& labels = complex_.labels(d);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (v[i] == 0) continue;
            const auto x = static_cast<std::int64_t>(v[i]);
            for (Face g : group) add_term(out, {labels[i].deg, labels[i].primes ^ g}, x);
        }
        return out;
    }

    /// Invariant coordinates of a ker Λ-invariant element of Q_K.
    IntVector restrict_invariant(int d, const QElement& e) const {
        IntVector out(complex_.dim(d));
        for (const auto& [c, x] : e)
            if (canonical(c.primes) == c.primes) out[index(d, c)] = x;
        return out;
    }

    /// h_{σ,ω}: (μ_1 - μ'_1) on σ, (μ_0 - μ'_0) on ω∖σ and μ_0 + μ'_0 elsewhere;
    /// its coefficient at prime mask P is (-1)^{|P∩ω|}.
    IntVector h_element(Face sigma, Face omega) const {
        if (!lam_.in_row_space(omega)) throw InvalidInput(face_str(omega) + " is not in row Λ");
        if (!is_subset(sigma, omega)) throw InvalidInput(face_str(sigma) + " is not inside " + face_str(omega));
        const int d = card(sigma);
        IntVector out(complex_.dim(d));
        if (!k_.is_face(sigma)) return out;
        std::uint64_t deg = 0;
        for (unsigned v : vertices(sigma)) deg |= std::uint64_t(1) << (4 * (v - 1));
        const auto& labels = complex_.labels(d);
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i].deg == deg) out[i] = (card(labels[i].primes & omega) % 2) ? -1 : 1;
        return out;
    }

    /// ψ_ω on C̃^{d-1}(K_ω): σ* ↦ (-1)^{|σ|} h_{σ,ω}.
    IntMatrix psi_map(Face omega, int d) const {
        const SimplicialComplex kw = k_.full_subcomplex(omega);
        const auto& faces = kw.faces_of_size(d);
        IntMatrix out(complex_.dim(d), faces.size());
        for (std::size_t j = 0; j < faces.size(); ++j) {
            const auto h = h_element(faces[j], omega);
            for (std::size_t i = 0; i < h.size(); ++i) out(i, j) = (d % 2) ? BigInt(-h[i]) : h[i];
        }
        return out;
    }

    /// Leibniz rule on `samples` random pairs of basis cells (deg a + deg b + 1 < D).
    /// Returns the number of failures.
    std::size_t leibniz_check(std::size_t samples, std::uint64_t seed) const {
        std::mt19937_64 rng(seed);
        std::size_t bad = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            const int da = int(rng() % std::uint64_t(trunc_ - 1));
            const int db = int(rng() % std::uint64_t(trunc_ - 1 - da));
            if (complex_.dim(da) == 0 || complex_.dim(db) == 0) continue;
            IntVector a(complex_.dim(da)), b(complex_.dim(db));
            a[rng() % a.size()] = 1;
            b[rng() % b.size()] = 1 + BigInt(rng() % 3);
            const IntVector ab = multiply(da, a, db, b);
            const IntVector lhs = mat_vec(complex_.differential(da + db), ab);
            IntVector rhs = multiply(da + 1, mat_vec(complex_.differential(da), a), db, b);
            const IntVector right = multiply(da, a, db + 1, mat_vec(complex_.differential(db), b));
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += (da % 2) ? BigInt(-right[i]) : right[i];
            if (da + db + 1 < trunc_ && lhs != rhs) ++bad;
        }
        return bad;
    }

private:
    void require_cap(int d) const {
        if (d > cohomology_cap())
            throw BoundExceeded("H^" + std::to_string(d) + "(Q) needs truncation above " + std::to_string(trunc_));
    }

    /// Degree vectors with support exactly f and total degree d.
    static std::vector<std::uint64_t> compositions(Face f, int d) {
        const auto vs = vertices(f);
        std::vector<std::uint64_t> out;
        if (vs.empty()) {
            if (d == 0) out.push_back(0);
            return out;
        }
        std::vector<int> parts(vs.size(), 1);
        const int extra = d - int(vs.size());
        if (extra < 0) return out;
        // parts in lexicographic order
        std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
            if (pos + 1 == vs.size()) {
                parts[pos] = 1 + left;
                std::uint64_t deg = 0;
                for (std::size_t t = 0; t < vs.size(); ++t) deg |= std::uint64_t(parts[t]) << (4 * (vs[t] - 1));
                out.push_back(deg);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                parts[pos] = 1 + e;
                rec(pos + 1, left - e);
            }
        };
        rec(0, extra);
        return out;
    }

    SimplicialComplex k_;
    CharacteristicFunction lam_;
    int n_;
    int trunc_;
    std::vector<std::pair<Face, Face>> kernel_rows_;  // (pivot, row), fully reduced
    Face pivot_mask_ = 0;
    std::vector<std::unordered_map<QCell, std::size_t, QCellHash>> index_;
    CochainComplex<QCell> complex_;
};

}  // namespace rtoric
