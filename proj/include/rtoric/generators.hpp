#pragma once

// Instance generators. All randomness is a seeded mt19937_64.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtoric/charfun.hpp"
#include "rtoric/simplicial_complex.hpp"

namespace rtoric {

struct Instance {
    std::string name;
    SimplicialComplex k;
    CharacteristicFunction lambda;
    std::optional<std::uint64_t> seed;
};

/// ∂Δ^n on n+1 vertices.
inline SimplicialComplex simplex_boundary(unsigned n) {
    if (n < 1) throw InvalidInput("simplex-boundary needs n >= 1");
    const Face all = full_set(n + 1);
    std::vector<Face> fs;
    for (unsigned i = 1; i <= n + 1; ++i) fs.push_back(all & ~vertex_bit(i));
    return SimplicialComplex(n + 1, std::move(fs));
}

/// Boundary of the n-dimensional cross-polytope; i and i+n are antipodal.
inline SimplicialComplex cross_polytope(unsigned n) {
    if (n < 1 || 2 * n > kMaxVertices) throw InvalidInput("cross-polytope needs 1 <= n <= 32");
    std::vector<Face> fs;
    for (Face choice = 0; choice < (Face(1) << n); ++choice) {
        Face f = 0;
        for (unsigned i = 1; i <= n; ++i) f |= vertex_bit(((choice >> (i - 1)) & 1u) ? i + n : i);
        fs.push_back(f);
    }
    return SimplicialComplex(2 * n, std::move(fs));
}

inline SimplicialComplex polygon(unsigned m) {
    if (m < 3) throw InvalidInput("polygon needs m >= 3");
    std::vector<Face> fs;
    for (unsigned i = 1; i <= m; ++i) fs.push_back(vertex_bit(i) | vertex_bit(i % m + 1));
    return SimplicialComplex(m, std::move(fs));
}

/// [I_n | 1]: the real projective space on ∂Δ^n.
inline CharacteristicFunction projective_lambda(unsigned n) {
    std::vector<std::uint64_t> rows;
    for (unsigned i = 1; i <= n; ++i) rows.push_back(vertex_bit(i) | vertex_bit(n + 1));
    return CharacteristicFunction(GF2Matrix::from_row_masks(rows, n + 1));
}

/// [I_n | I_n] on the cross-polytope.
inline CharacteristicFunction cube_lambda(unsigned n) {
    std::vector<std::uint64_t> rows;
    for (unsigned i = 1; i <= n; ++i) rows.push_back(vertex_bit(i) | vertex_bit(i + n));
    return CharacteristicFunction(GF2Matrix::from_row_masks(rows, 2 * n));
}

inline Instance torus_instance() {
    return {"torus", polygon(4), CharacteristicFunction::from_bitstrings({"1010", "0101"}), std::nullopt};
}
inline Instance klein_instance() {
    return {"klein", polygon(4), CharacteristicFunction::from_bitstrings({"1011", "0101"}), std::nullopt};
}
inline Instance projective_instance(unsigned n) {
    return {"rp" + std::to_string(n), simplex_boundary(n), projective_lambda(n), std::nullopt};
}

inline constexpr std::size_t kDefaultSamplingAttempts = 20000;

/// Rejection-samples an n×m characteristic matrix over K: each column is a
/// uniformly random nonzero vector of F_2^n.
inline CharacteristicFunction random_lambda(const SimplicialComplex& k, unsigned n, std::mt19937_64& rng,
                                            std::size_t attempts = kDefaultSamplingAttempts) {
    if (n < 1 || n > 63) throw InvalidInput("random-lambda needs 1 <= n <= 63");
    const std::uint64_t span = (std::uint64_t(1) << n) - 1;
    for (std::size_t a = 0; a < attempts; ++a) {
        std::vector<std::uint64_t> rows(n, 0);
        for (unsigned j = 0; j < k.m(); ++j) {
            const std::uint64_t col = 1 + rng() % span;
            for (unsigned i = 0; i < n; ++i)
                if ((col >> i) & 1u) rows[i] |= std::uint64_t(1) << j;
        }
        const auto g = GF2Matrix::from_row_masks(rows, k.m());
        if (gf2_rank(g) < n) continue;
        CharacteristicFunction lam(g);
        if (!check_nonsingular(k, lam)) return lam;
    }
    throw BoundExceeded("random-lambda: no characteristic matrix after " + std::to_string(attempts) + " attempts");
}

/// Identifies (K, Λ) up to row operations on Λ: the reduced row echelon rows.
inline std::vector<std::uint64_t> lambda_class_key(const CharacteristicFunction& lam) {
    return gf2_rref(lam.matrix().row_masks()).rows;
}

inline CharacteristicFunction canonical_lambda(const CharacteristicFunction& lam) {
    return CharacteristicFunction(GF2Matrix::from_row_masks(lambda_class_key(lam), lam.m()));
}

/// Row-space classes of characteristic matrices found by sampling, in key order.
inline std::vector<CharacteristicFunction> sampled_lambda_classes(const SimplicialComplex& k, unsigned n,
                                                                  std::uint64_t seed,
                                                                  std::size_t samples = 2000) {
    std::mt19937_64 rng(seed);
    std::map<std::vector<std::uint64_t>, CharacteristicFunction> seen;
    for (std::size_t s = 0; s < samples; ++s) {
        CharacteristicFunction lam = random_lambda(k, n, rng);
        auto key = lambda_class_key(lam);
        if (!seen.count(key)) seen.emplace(key, canonical_lambda(lam));
    }
    std::vector<CharacteristicFunction> out;
    for (auto& [key, lam] : seen) out.push_back(lam);
    return out;
}

/// `steps` stellar subdivisions at random faces of size >= 2, extending Λ.
inline Instance stellar_chain(const Instance& base, unsigned steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SimplicialComplex k = base.k;
    CharacteristicFunction lam = base.lambda;
    for (unsigned s = 0; s < steps; ++s) {
        std::vector<Face> candidates;
        for (int size = 2; size <= k.dim() + 1; ++size)
            for (Face f : k.faces_of_size(size)) candidates.push_back(f);
        if (candidates.empty()) throw InvalidInput("stellar-chain: base has no face of size >= 2");
        const Face sigma = candidates[rng() % candidates.size()];
        auto [k2, lam2] = extend_for_stellar(k, lam, sigma);
        k = std::move(k2);
        lam = std::move(lam2);
    }
    return {base.name + "-stellar" + std::to_string(steps) + "-s" + std::to_string(seed), std::move(k), std::move(lam), seed};
}

/// The deterministic sphere corpus used by the falsification suite.
inline std::vector<Instance> default_corpus(std::uint64_t seed = 7) {
    std::vector<Instance> out;
    for (unsigned m = 3; m <= 8; ++m) {
        const auto classes = sampled_lambda_classes(polygon(m), 2, seed + m);
        for (std::size_t i = 0; i < classes.size(); ++i)
            out.push_back({"polygon" + std::to_string(m) + "-" + std::to_string(i + 1), polygon(m), classes[i], seed + m});
    }
    for (unsigned n = 1; n <= 4; ++n) out.push_back(projective_instance(n));
    const Instance cube{"cross3-cube", cross_polytope(3), cube_lambda(3), std::nullopt};
    out.push_back(cube);
    const Instance rp3 = projective_instance(3);
    for (unsigned steps = 1; steps <= 8; ++steps) out.push_back(stellar_chain(rp3, steps, seed * 100 + steps));
    for (unsigned steps = 1; steps <= 4; ++steps) out.push_back(stellar_chain(cube, steps, seed * 200 + steps));
    const Instance rp4 = projective_instance(4);
    for (unsigned steps = 1; steps <= 2; ++steps) out.push_back(stellar_chain(rp4, steps, seed * 300 + steps));
    return out;
}

}  // namespace rtoric
