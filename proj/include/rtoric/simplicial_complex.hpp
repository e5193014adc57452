#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rtoric/error.hpp"
#include "rtoric/face.hpp"

namespace rtoric {

/// Face-count bound for materializing the face lattice.
inline constexpr std::size_t kMaxFaceCount = std::size_t(1) << 22;

struct FHVectors {
    std::vector<std::int64_t> f;  ///< f[k] = f_{k-1}, so f[0] = 1 counts the empty face
    std::vector<std::int64_t> h;  ///< h_0 .. h_n with n = dim + 1
};

/// Finite simplicial complex on [m], ghost vertices allowed. Stored by its
/// facets; every face is materialized once at construction and indexed by
/// the canonical face order within each cardinality.
class SimplicialComplex {
public:
    SimplicialComplex() : SimplicialComplex(1, std::vector<Face>{0}) {}

    SimplicialComplex(unsigned m, std::vector<Face> facets) : m_(m) {
        if (m == 0 || m > kMaxVertices) throw InvalidInput("vertex count must be in 1..64, got " + std::to_string(m));
        if (facets.empty()) throw InvalidInput("the void complex is not representable; use one empty facet for {∅}");
        for (Face f : facets)
            if (f & ~full_set(m)) throw InvalidInput("facet " + face_str(f) + " has a vertex outside 1.." + std::to_string(m));
        facets_ = maximal(std::move(facets));
        build_faces();
    }

    static SimplicialComplex from_facets(unsigned m, const std::vector<std::vector<unsigned>>& facets) {
        std::vector<Face> fs;
        for (const auto& f : facets) fs.push_back(face_of(f, m));
        return SimplicialComplex(m, std::move(fs));
    }

    unsigned m() const { return m_; }
    int dim() const { return int(by_size_.size()) - 2; }
    const std::vector<Face>& facets() const { return facets_; }

    bool is_face(Face f) const { return index_.count(f) != 0; }

    /// Faces of cardinality k (dimension k-1) in canonical order.
    const std::vector<Face>& faces_of_size(int k) const {
        static const std::vector<Face> none;
        if (k < 0 || std::size_t(k) >= by_size_.size()) return none;
        return by_size_[std::size_t(k)];
    }

    /// Position of a face inside faces_of_size(card(f)).
    std::size_t face_index(Face f) const {
        auto it = index_.find(f);
        if (it == index_.end()) throw InvalidInput(face_str(f) + " is not a face");
        return it->second;
    }

    std::size_t face_count() const { return index_.size(); }

    Face vertex_set() const {
        Face v = 0;
        for (Face f : facets_) v |= f;
        return v;
    }

    std::vector<unsigned> ghost_vertices() const { return vertices(full_set(m_) & ~vertex_set()); }

    bool is_pure() const {
        for (Face f : facets_)
            if (card(f) != dim() + 1) return false;
        return true;
    }

    SimplicialComplex full_subcomplex(Face omega) const {
        std::vector<Face> fs;
        for (Face f : facets_) fs.push_back(f & omega);
        return SimplicialComplex(m_, std::move(fs));
    }

    SimplicialComplex link(Face sigma) const {
        require_face(sigma);
        std::vector<Face> fs;
        for (Face f : facets_)
            if (is_subset(sigma, f)) fs.push_back(f & ~sigma);
        return SimplicialComplex(m_, std::move(fs));
    }

    /// Closed star: faces τ with τ ∪ σ ∈ K.
    SimplicialComplex star(Face sigma) const {
        require_face(sigma);
        std::vector<Face> fs;
        for (Face f : facets_)
            if (is_subset(sigma, f)) fs.push_back(f);
        return SimplicialComplex(m_, std::move(fs));
    }

    /// S_σK = (K ∖ st σ) ∪ ({v} * ∂σ * lk σ) with the new vertex v = m+1.
    SimplicialComplex stellar_subdivision(Face sigma) const {
        if (sigma == 0) throw InvalidInput("stellar subdivision at the empty face");
        require_face(sigma);
        if (m_ + 1 > kMaxVertices) throw BoundExceeded("stellar subdivision would exceed 64 vertices");
        const Face v = vertex_bit(m_ + 1);
        std::vector<Face> fs;
        for (Face f : facets_)
            if (!is_subset(sigma, f)) fs.push_back(f);
        const SimplicialComplex lk = link(sigma);
        for (Face lam : lk.facets())
            for (Face t = sigma; t; t &= t - 1) fs.push_back(v | (sigma & ~(t & -t)) | lam);
        return SimplicialComplex(m_ + 1, std::move(fs));
    }

    /// Join with the vertices of the second factor shifted by m.
    static SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
        if (a.m_ + b.m_ > kMaxVertices) throw BoundExceeded("join would exceed 64 vertices");
        std::vector<Face> fs;
        for (Face f : a.facets_)
            for (Face g : b.facets_) fs.push_back(f | (g << a.m_));
        return SimplicialComplex(a.m_ + b.m_, std::move(fs));
    }

    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (std::size_t k = 1; k < by_size_.size(); ++k)
            chi += (k % 2 ? 1 : -1) * std::int64_t(by_size_[k].size());
        return chi;
    }

    FHVectors f_h_vectors() const {
        FHVectors out;
        for (const auto& layer : by_size_) out.f.push_back(std::int64_t(layer.size()));
        const int n = dim() + 1;
        // Σ h_i t^i = Σ_k f_{k-1} t^k (1-t)^{n-k}
        out.h.assign(std::size_t(n + 1), 0);
        for (int k = 0; k <= n; ++k) {
            std::int64_t binom = 1;  // C(n-k, j)
            for (int j = 0; j <= n - k; ++j) {
                out.h[std::size_t(k + j)] += (j % 2 ? -1 : 1) * binom * out.f[std::size_t(k)];
                binom = binom * (n - k - j) / (j + 1);
            }
        }
        return out;
    }

    std::vector<std::vector<unsigned>> facet_lists() const {
        std::vector<std::vector<unsigned>> out;
        for (Face f : facets_) out.push_back(vertices(f));
        return out;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.m_ == b.m_ && a.facets_ == b.facets_;
    }

    void require_face(Face f) const {
        if (!is_face(f)) throw InvalidInput(face_str(f) + " is not a face of the complex");
    }

private:
    /// Removes duplicates and non-maximal sets; result in canonical face order.
    static std::vector<Face> maximal(std::vector<Face> fs) {
        std::sort(fs.begin(), fs.end(), [](Face a, Face b) { return face_less(b, a); });
        fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
        std::vector<Face> keep;
        for (Face f : fs) {
            bool covered = false;
            for (Face g : keep)
                if (is_subset(f, g)) {
                    covered = true;
                    break;
                }
            if (!covered) keep.push_back(f);
        }
        std::sort(keep.begin(), keep.end(), FaceLess{});
        return keep;
    }

    void build_faces() {
        int top = 0;
        for (Face f : facets_) top = std::max(top, card(f));
        by_size_.assign(std::size_t(top + 1), {});
        std::size_t budget = 0;
        for (Face f : facets_) {
            budget += std::size_t(1) << std::min(card(f), 40);
            if (budget > kMaxFaceCount) throw BoundExceeded("complex has too many faces to materialize");
            for_each_subset(f, [&](Face s) {
                if (index_.emplace(s, 0).second) by_size_[std::size_t(card(s))].push_back(s);
            });
        }
        for (auto& layer : by_size_) {
            std::sort(layer.begin(), layer.end(), FaceLess{});
            for (std::size_t i = 0; i < layer.size(); ++i) index_[layer[i]] = i;
        }
    }

    unsigned m_ = 1;
    std::vector<Face> facets_;
    std::vector<std::vector<Face>> by_size_;
    std::unordered_map<Face, std::size_t> index_;
};

}  // namespace rtoric
