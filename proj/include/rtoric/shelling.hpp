#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rtoric/error.hpp"
#include "rtoric/face.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

struct ShellingCertificate {
    std::vector<Face> facet_order;
    std::vector<Face> restrictions;  ///< r(σ_1) = ∅, r(σ_2), ...
};

/// Raised by verify_shelling; carries the offending position (0-based) and
/// the minimal new faces found there.
class NotAShelling : public InvalidInput {
public:
    NotAShelling(std::size_t index, std::vector<Face> minimal)
        : InvalidInput(message(index, minimal)), index_(index), minimal_(std::move(minimal)) {}
    std::size_t index() const { return index_; }
    const std::vector<Face>& minimal_faces() const { return minimal_; }

private:
    static std::string message(std::size_t index, const std::vector<Face>& minimal) {
        std::string s = "not a shelling at facet " + std::to_string(index + 1) + ": minimal new faces";
        for (Face f : minimal) s += " " + face_str(f);
        return s;
    }
    std::size_t index_;
    std::vector<Face> minimal_;
};

namespace detail {

/// Minimal faces of σ not contained in any of `earlier`. With no earlier
/// facets the answer is {∅}.
inline std::vector<Face> minimal_new_faces(Face sigma, const std::vector<Face>& earlier) {
    std::vector<Face> fresh;
    for_each_subset(sigma, [&](Face t) {
        for (Face e : earlier)
            if (is_subset(t, e)) return;
        fresh.push_back(t);
    });
    std::vector<Face> minimal;
    for (Face t : fresh) {
        bool is_min = true;
        for (Face u : fresh)
            if (u != t && is_subset(u, t)) {
                is_min = false;
                break;
            }
        if (is_min) minimal.push_back(t);
    }
    std::sort(minimal.begin(), minimal.end(), FaceLess{});
    return minimal;
}

inline void require_pure(const SimplicialComplex& k) {
    if (!k.is_pure()) throw InvalidInput("shellings are defined here for pure complexes only");
}

}  // namespace detail

inline ShellingCertificate verify_shelling(const SimplicialComplex& k, const std::vector<Face>& order) {
    detail::require_pure(k);
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end(), FaceLess{});
    if (sorted != k.facets()) throw InvalidInput("facet order is not a permutation of the facets");
    ShellingCertificate cert;
    std::vector<Face> earlier;
    for (std::size_t j = 0; j < order.size(); ++j) {
        auto minimal = detail::minimal_new_faces(order[j], earlier);
        if (minimal.size() != 1) throw NotAShelling(j, std::move(minimal));
        cert.facet_order.push_back(order[j]);
        cert.restrictions.push_back(minimal.front());
        earlier.push_back(order[j]);
    }
    return cert;
}

inline constexpr std::size_t kDefaultShellingFacetBound = 20;

/// Exhaustive backtracking search; facets are tried in canonical order.
inline std::optional<ShellingCertificate> find_shelling(const SimplicialComplex& k,
                                                        std::size_t facet_bound = kDefaultShellingFacetBound) {
    detail::require_pure(k);
    const auto& facets = k.facets();
    if (facets.size() > facet_bound)
        throw BoundExceeded("shelling search: " + std::to_string(facets.size()) + " facets exceeds bound " +
                            std::to_string(facet_bound));
    std::vector<bool> used(facets.size(), false);
    ShellingCertificate cert;
    std::vector<Face> earlier;
    auto dfs = [&](auto&& self) -> bool {
        if (earlier.size() == facets.size()) return true;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            if (used[i]) continue;
            const auto minimal = detail::minimal_new_faces(facets[i], earlier);
            if (minimal.size() != 1) continue;
            used[i] = true;
            earlier.push_back(facets[i]);
            cert.facet_order.push_back(facets[i]);
            cert.restrictions.push_back(minimal.front());
            if (self(self)) return true;
            used[i] = false;
            earlier.pop_back();
            cert.facet_order.pop_back();
            cert.restrictions.pop_back();
        }
        return false;
    };
    if (dfs(dfs)) return cert;
    return std::nullopt;
}

}  // namespace rtoric
