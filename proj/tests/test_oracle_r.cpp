#include <catch_amalgamated.hpp>

#include "rtoric/generators.hpp"
#include "rtoric/oracle_r.hpp"
#include "rtoric/toric_cohomology.hpp"

using namespace rtoric;

namespace {

AbelianGroup z(std::size_t r = 1) { return AbelianGroup::integers(r); }
AbelianGroup tor(std::vector<BigInt> t) { return AbelianGroup(0, std::move(t)); }

std::vector<Instance> small_instances() {
    return {torus_instance(), klein_instance(), projective_instance(2), projective_instance(3)};
}

}  // namespace

TEST_CASE("R_K differential squares to zero and matches the 4-cycle count") {
    const RComplex r(polygon(4));
    CHECK(r.dim(0) == 16);
    CHECK(r.dim(1) == 4 * 8);
    CHECK(r.dim(2) == 4 * 4);
    for (int d = 0; d < r.top_degree(); ++d) CHECK((r.differential(d + 1) * r.differential(d)).is_zero());
}

TEST_CASE("R_K cohomology is that of the real moment-angle complex") {
    // the 4-cycle is S^0 * S^0, so RZ is S^1 x S^1
    const auto h = cohomology_all(RComplex(polygon(4)).cochain_complex());
    CHECK(h[0] == z());
    CHECK(h[1] == z(2));
    CHECK(h[2] == z());
    // RZ of ∂Δ^2 is S^2
    const auto h2 = cohomology_all(RComplex(simplex_boundary(2)).cochain_complex());
    CHECK(h2[0] == z());
    CHECK(h2[1].is_trivial());
    CHECK(h2[2] == z());
}

TEST_CASE("phi_g is an involutive group action commuting with d") {
    const RComplex r(polygon(4));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = int(rng() % 3);
        RVector v;
        for (int t = 0; t < 4; ++t) add_term(v, r.cells(d)[rng() % r.dim(d)], std::int64_t(rng() % 5) - 2);
        const Face g = rng() % 16, h = rng() % 16;
        CHECK(phi_g_apply(g, phi_g_apply(g, v)) == v);
        CHECK(phi_g_apply(g, phi_g_apply(h, v)) == phi_g_apply(g ^ h, v));
        CHECK(phi_g_apply(g, r_differential(r.complex(), v)) == r_differential(r.complex(), phi_g_apply(g, v)));
    }
}

TEST_CASE("f elements are invariant and agree with the point-basis formula") {
    for (const auto& inst : small_instances()) {
        const InvariantR inv(inst.k, inst.lambda);
        for (Face w : inst.lambda.row_space_faces()) {
            const SimplicialComplex kw = inst.k.full_subcomplex(w);
            for (int s = 0; s <= kw.dim() + 1; ++s)
                for (Face sigma : kw.faces_of_size(s)) {
                    const RVector f = f_element_t(sigma, w);
                    for (Face g : inst.lambda.kernel()) CHECK(phi_g_apply(g, f) == f);
                    CHECK(t_to_point(inst.k.m(), f) == inv.to_point_vector(s, inv.f_element(sigma, w)));
                }
        }
    }
}

TEST_CASE("orbit-sum invariants agree with the norm-image route") {
    for (const auto& inst : small_instances()) {
        INFO(inst.name);
        const RComplex r(inst.k);
        const auto generic = invariants(r, inst.lambda.kernel());
        const InvariantR inv(inst.k, inst.lambda);
        CHECK(cohomology_all(generic.complex) == cohomology_all(inv.complex()));
        for (int d = 0; d <= r.top_degree(); ++d) CHECK(generic.embedding[std::size_t(d)].cols() == inv.complex().dim(d));
    }
}

TEST_CASE("oracle cohomology of the named instances") {
    CHECK(oracle_cohomology(torus_instance().k, torus_instance().lambda) == std::vector{z(), z(2), z()});
    CHECK(oracle_cohomology(klein_instance().k, klein_instance().lambda) == std::vector{z(), z(), tor({2})});
    const auto rp2 = projective_instance(2);
    CHECK(oracle_cohomology(rp2.k, rp2.lambda) == std::vector{z(), AbelianGroup(), tor({2})});
    const auto rp3 = projective_instance(3);
    CHECK(oracle_cohomology(rp3.k, rp3.lambda) == std::vector{z(), AbelianGroup(), tor({2}), z()});
    const auto rp4 = projective_instance(4);
    CHECK(oracle_cohomology(rp4.k, rp4.lambda) == std::vector{z(), AbelianGroup(), tor({2}), AbelianGroup(), tor({2})});
}

TEST_CASE("mod-2 oracle equals the h-vector") {
    CHECK(mod2_oracle(projective_instance(2).k, projective_instance(2).lambda) == std::vector<std::size_t>{1, 1, 1});
    CHECK(mod2_oracle(torus_instance().k, torus_instance().lambda) == std::vector<std::size_t>{1, 2, 1});
    CHECK(mod2_oracle(klein_instance().k, klein_instance().lambda) == std::vector<std::size_t>{1, 2, 1});
    CHECK(mod2_oracle(projective_instance(3).k, projective_instance(3).lambda) == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("Phi is a surjective 2-truncated chain map on small instances") {
    for (const auto& inst : small_instances()) {
        INFO(inst.name);
        const auto rep = phi_surjectivity_check(InvariantR(inst.k, inst.lambda));
        for (const auto& d : rep.degrees) {
            INFO("degree " << d.degree);
            CHECK(d.chain_map);
            CHECK(d.surjective);
            CHECK(d.generators_hit);
            CHECK(d.doubled_match);
        }
    }
}

TEST_CASE("oracle and assembly agree along a stellar chain") {
    const auto inst = stellar_chain(projective_instance(3), 4, 11);
    CHECK(inst.k.m() == 8);
    CHECK(oracle_cohomology(inst.k, inst.lambda) == assemble_integral_cohomology(inst.k, inst.lambda).groups);
}

TEST_CASE("R bounds and preconditions") {
    const auto big = polygon(17);
    CHECK_THROWS_AS(RComplex(big), BoundExceeded);
    const auto bad = CharacteristicFunction::from_bitstrings({"1100", "0011"});
    CHECK_THROWS_AS(InvariantR(polygon(4), bad), InvalidInput);
}
