#include <catch_amalgamated.hpp>

#include <set>

#include "rtoric/charfun.hpp"
#include "rtoric/generators.hpp"
#include "rtoric/shelling.hpp"

using namespace rtoric;

namespace {

std::set<Face> as_set(const std::vector<Face>& v) { return {v.begin(), v.end()}; }
Face F(std::initializer_list<unsigned> vs) { return face_of(std::vector<unsigned>(vs), 64); }

/// All n×m characteristic matrices over K, grouped by row space. Exhaustive.
std::size_t count_classes(const SimplicialComplex& k, unsigned n) {
    std::set<std::vector<std::uint64_t>> keys;
    const std::uint64_t total = std::uint64_t(1) << (n * k.m());
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint64_t> rows(n, 0);
        for (unsigned i = 0; i < n; ++i) rows[i] = (code >> (i * k.m())) & full_set(k.m());
        const auto g = GF2Matrix::from_row_masks(rows, k.m());
        if (gf2_rank(g) < n) continue;
        const CharacteristicFunction lam(g);
        if (!check_nonsingular(k, lam)) keys.insert(lambda_class_key(lam));
    }
    return keys.size();
}

}  // namespace

TEST_CASE("non-singularity") {
    const auto rp2 = projective_instance(2);
    CHECK(!check_nonsingular(rp2.k, rp2.lambda));
    CHECK_THROWS_AS(CharacteristicFunction::from_bitstrings({"101", "101"}), InvalidInput);
    CHECK(!check_nonsingular(polygon(4), torus_instance().lambda));
    // columns 1 and 2 equal: the edge {1,2} is the smallest violating face
    const auto bad = CharacteristicFunction::from_bitstrings({"1101", "0011"});
    REQUIRE(check_nonsingular(polygon(4), bad));
    CHECK(*check_nonsingular(polygon(4), bad) == F({1, 2}));
    CHECK_THROWS_AS(check_nonsingular(simplex_boundary(2), bad), InvalidInput);
}

TEST_CASE("row space and kernel") {
    const auto torus = torus_instance().lambda;
    CHECK(as_set(torus.row_space_faces()) == std::set<Face>{0, F({1, 3}), F({2, 4}), F({1, 2, 3, 4})});
    CHECK(as_set(torus.kernel()) == std::set<Face>{0, F({1, 3}), F({2, 4}), F({1, 2, 3, 4})});
    const auto klein = klein_instance().lambda;
    CHECK(as_set(klein.row_space_faces()) == std::set<Face>{0, F({1, 3, 4}), F({2, 4}), F({1, 2, 3})});
    // row space in face order
    CHECK(torus.row_space_faces() == std::vector<Face>{0, F({1, 3}), F({2, 4}), F({1, 2, 3, 4})});
}

TEST_CASE("orientability") {
    CHECK(projective_instance(3).lambda.is_orientable());
    CHECK(!projective_instance(2).lambda.is_orientable());
    CHECK(!klein_instance().lambda.is_orientable());
    CHECK(torus_instance().lambda.is_orientable());
}

TEST_CASE("parity of kernel against row space") {
    for (const auto& lam : {torus_instance().lambda, klein_instance().lambda, projective_instance(3).lambda,
                            cube_lambda(3)})
        CHECK(!parity_check(lam));
    // exhaustive reference for the Klein matrix
    const auto klein = klein_instance().lambda;
    for (Face g = 0; g < 16; ++g) {
        bool in_kernel = true;
        for (std::size_t i = 1; i <= 2; ++i) in_kernel = in_kernel && card(g & klein.row(i)) % 2 == 0;
        CHECK(in_kernel == (as_set(klein.kernel()).count(g) == 1));
    }
}

TEST_CASE("basis change leaves the row space alone") {
    const auto lam = projective_instance(3).lambda;
    const auto m = GF2Matrix::from_bitstrings({"110", "010", "011"});
    const auto lam2 = lam.transformed(m);
    CHECK(lam2.row_space_faces() == lam.row_space_faces());
    CHECK(lam2.kernel() == lam.kernel());
    CHECK(lam2.is_orientable() == lam.is_orientable());
    CHECK_THROWS_AS(lam.transformed(GF2Matrix::from_bitstrings({"110", "110", "001"})), InvalidInput);
}

TEST_CASE("stellar extension") {
    const auto rp2 = projective_instance(2);
    const auto [k2, lam2] = extend_for_stellar(rp2.k, rp2.lambda, F({1, 2}));
    CHECK(k2.m() == 4);
    CHECK(lam2.column(4) == (lam2.column(1) ^ lam2.column(2)));
    CHECK(lam2.column(4) == 3);
    CHECK_THROWS_AS(extend_for_stellar(rp2.k, rp2.lambda, 0), InvalidInput);
    for (const auto& inst : default_corpus()) CHECK(!check_nonsingular(inst.k, inst.lambda));
}

TEST_CASE("restriction faces determine a unique omega") {
    const auto torus = torus_instance();
    const auto cert = verify_shelling(torus.k, {F({1, 2}), F({2, 3}), F({3, 4}), F({1, 4})});
    const auto w = unique_omega_for_restriction(torus.k, torus.lambda, cert);
    CHECK(w.front() == 0);
    CHECK(w.back() == F({1, 2, 3, 4}));
    const auto rp2 = projective_instance(2);
    const auto cert2 = verify_shelling(rp2.k, {F({1, 2}), F({2, 3}), F({1, 3})});
    CHECK(unique_omega_for_restriction(rp2.k, rp2.lambda, cert2)[1] == F({1, 3}));
    // uniqueness on every shellable corpus member, checked against brute force
    for (const auto& inst : default_corpus()) {
        const auto s = find_shelling(inst.k, 64);
        REQUIRE(s);
        const auto om = unique_omega_for_restriction(inst.k, inst.lambda, *s);
        for (std::size_t j = 0; j < om.size(); ++j) {
            std::size_t hits = 0;
            for (Face x = 0; x < (Face(1) << inst.k.m()); ++x)
                if (inst.lambda.in_row_space(x) && (x & s->facet_order[j]) == s->restrictions[j]) ++hits;
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("polygon characteristic classes found by sampling are complete") {
    for (unsigned m = 3; m <= 6; ++m) {
        INFO("m = " << m);
        CHECK(sampled_lambda_classes(polygon(m), 2, 100 + m).size() == count_classes(polygon(m), 2));
    }
    // sizes 1, 3, 5, 11, 21, 43 follow from 3-colourings of the m-cycle in the
    // three nonzero vectors, (2^m + 2(-1)^m) of them, six per class
    const std::vector<std::size_t> expect{1, 3, 5, 11, 21, 43};
    for (unsigned m = 3; m <= 8; ++m)
        CHECK(sampled_lambda_classes(polygon(m), 2, 7 + m).size() == expect[m - 3]);
}

TEST_CASE("random lambda is deterministic and reports exhaustion") {
    std::mt19937_64 a(42), b(42);
    CHECK(random_lambda(polygon(5), 2, a) == random_lambda(polygon(5), 2, b));
    std::mt19937_64 c(1);
    // a triangle cannot carry a rank-1 characteristic matrix
    CHECK_THROWS_AS(random_lambda(simplex_boundary(2), 1, c, 50), BoundExceeded);
}
