#include <random>

#include <catch_amalgamated.hpp>

#include "rtoric/shelling.hpp"
#include "rtoric/simplicial_cochains.hpp"
#include "rtoric/simplicial_complex.hpp"

using namespace rtoric;

namespace {

using Lists = std::vector<std::vector<unsigned>>;

SimplicialComplex sc(unsigned m, const Lists& f) { return SimplicialComplex::from_facets(m, f); }

std::vector<Face> faces(const SimplicialComplex& k) {
    std::vector<Face> out;
    for (int s = 0; s <= k.dim() + 1; ++s)
        for (Face f : k.faces_of_size(s)) out.push_back(f);
    return out;
}

std::vector<Face> fl(unsigned m, const Lists& f) {
    std::vector<Face> out;
    for (const auto& x : f) out.push_back(face_of(x, m));
    return out;
}

const SimplicialComplex triangle = sc(3, {{1, 2}, {2, 3}, {1, 3}});
const SimplicialComplex square = sc(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});

}  // namespace

TEST_CASE("from_facets canonicalizes and answers closure") {
    CHECK(triangle.face_count() == 7);
    CHECK(triangle.dim() == 1);
    CHECK(square.dim() == 1);
    const auto ghosts = sc(5, {{1, 2}, {2, 3}, {1, 3}});
    CHECK(ghosts.ghost_vertices() == std::vector<unsigned>{4, 5});
    CHECK(ghosts.face_count() == 7);
    const auto redundant = sc(3, {{1, 2}, {1}, {1, 2}, {2, 3}});
    CHECK(redundant.facets() == fl(3, {{1, 2}, {2, 3}}));
    CHECK(sc(2, {{}}).face_count() == 1);
    CHECK(sc(2, {{}}).dim() == -1);
    CHECK_THROWS_AS(sc(3, {}), InvalidInput);
    CHECK_THROWS_AS(sc(3, {{1, 4}}), InvalidInput);
    CHECK_THROWS_AS(sc(3, {{1, 1}}), InvalidInput);
}

TEST_CASE("full subcomplexes") {
    CHECK(faces(triangle.full_subcomplex(face_of({1, 3}, 3))) == fl(3, {{}, {1}, {3}, {1, 3}}));
    CHECK(faces(square.full_subcomplex(face_of({1, 3}, 4))) == fl(4, {{}, {1}, {3}}));
    CHECK(faces(square.full_subcomplex(0)) == std::vector<Face>{0});
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const Face w1 = rng() & 15, w2 = rng() & 15;
        CHECK(square.full_subcomplex(w1).full_subcomplex(w2) == square.full_subcomplex(w1 & w2));
    }
}

TEST_CASE("link, star, join") {
    CHECK(faces(triangle.link(face_of({1}, 3))) == fl(3, {{}, {2}, {3}}));
    CHECK(square.star(face_of({1}, 4)).facets() == fl(4, {{1, 2}, {1, 4}}));
    const auto pt = sc(1, {{1}});
    const auto edge = SimplicialComplex::join(pt, pt);
    CHECK(edge.m() == 2);
    CHECK(edge.facets() == fl(2, {{1, 2}}));
    CHECK_THROWS_AS(square.link(face_of({1, 3}, 4)), InvalidInput);
    // join of two S^0 is the square
    const auto s0 = sc(2, {{1}, {2}});
    const auto j = SimplicialComplex::join(s0, s0);
    CHECK(j.facets() == fl(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
}

TEST_CASE("stellar subdivision") {
    const auto t = triangle.stellar_subdivision(face_of({1, 2}, 3));
    CHECK(t.m() == 4);
    CHECK(t.facets() == fl(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
    const auto s = square.stellar_subdivision(face_of({1}, 4));
    CHECK(s.m() == 5);
    CHECK(s.facets() == fl(5, {{2, 3}, {2, 5}, {3, 4}, {4, 5}}));
    CHECK(s.ghost_vertices() == std::vector<unsigned>{1});
    CHECK_THROWS_AS(square.stellar_subdivision(0), InvalidInput);
    CHECK_THROWS_AS(square.stellar_subdivision(face_of({1, 3}, 4)), InvalidInput);
}

TEST_CASE("stellar subdivision preserves Euler characteristic and sphere homology") {
    auto k = sc(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    std::mt19937_64 rng(11);
    for (int step = 0; step < 6; ++step) {
        const auto& pool = k.faces_of_size(int(1 + rng() % 3));
        const Face sigma = pool[rng() % pool.size()];
        const auto k2 = k.stellar_subdivision(sigma);
        CHECK(k2.euler_characteristic() == k.euler_characteristic());
        CHECK(reduced_cohomology(k2) == reduced_cohomology(k));
        CHECK(is_homology_sphere(k2));
        k = k2;
    }
}

TEST_CASE("closure holds for random faces") {
    auto k = sc(6, {{1, 2, 3, 4}, {3, 4, 5}, {5, 6}, {1, 6}});
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const Face f = rng() & 63;
        if (!k.is_face(f)) continue;
        for_each_subset(f, [&](Face s) { CHECK(k.is_face(s)); });
    }
}

TEST_CASE("f and h vectors") {
    const auto d3 = sc(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    auto fh = d3.f_h_vectors();
    CHECK(fh.f == std::vector<std::int64_t>{1, 4, 6, 4});
    CHECK(fh.h == std::vector<std::int64_t>{1, 1, 1, 1});
    fh = square.f_h_vectors();
    CHECK(fh.f == std::vector<std::int64_t>{1, 4, 4});
    CHECK(fh.h == std::vector<std::int64_t>{1, 2, 1});
    CHECK(sc(3, {{1, 2, 3}}).f_h_vectors().h == std::vector<std::int64_t>{1, 0, 0, 0});
}

TEST_CASE("reduced cochains and B complexes") {
    const auto c = reduced_cochain_complex(square);
    CHECK(cohomology(c, 1) == AbelianGroup::integers());
    CHECK(cohomology(c, 0).is_trivial());
    CHECK(cohomology(c, -1).is_trivial());
    const auto s0 = sc(2, {{1}, {2}});
    const auto b = b_complex(s0, 3);
    CHECK(cohomology(b, 0).is_trivial());
    CHECK(cohomology(b, 1) == AbelianGroup(1, {2}));
    const auto b0 = b_complex(square, 0);
    CHECK(b0.max_degree() == 0);
    CHECK(cohomology(b0, 0) == AbelianGroup::integers());
    for (Face w = 0; w < 16; ++w) {
        const auto bw = b_complex(square, w);  // constructor asserts d∘d = 0
        CHECK(bw.min_degree() == 0);
    }
}

TEST_CASE("shelling verification") {
    auto cert = verify_shelling(triangle, fl(3, {{1, 2}, {2, 3}, {1, 3}}));
    CHECK(cert.restrictions == fl(3, {{}, {3}, {1, 3}}));
    cert = verify_shelling(square, fl(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}));
    CHECK(cert.restrictions == fl(4, {{}, {3}, {4}, {1, 4}}));
    const auto two_edges = sc(4, {{1, 2}, {3, 4}});
    try {
        verify_shelling(two_edges, fl(4, {{1, 2}, {3, 4}}));
        FAIL("expected rejection");
    } catch (const NotAShelling& e) {
        CHECK(e.index() == 1);
        CHECK(e.minimal_faces() == fl(4, {{3}, {4}}));
    }
    CHECK_THROWS_AS(verify_shelling(sc(3, {{1, 2}, {3}}), fl(3, {{1, 2}, {3}})), InvalidInput);
}

TEST_CASE("shelling search") {
    const auto d3 = sc(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    auto cert = find_shelling(d3);
    REQUIRE(cert);
    CHECK(verify_shelling(d3, cert->facet_order).restrictions == cert->restrictions);
    CHECK(cert->restrictions.front() == 0);
    for (unsigned m = 3; m <= 8; ++m) {
        Lists f;
        for (unsigned i = 1; i <= m; ++i) f.push_back({i, i % m + 1});
        const auto poly = sc(m, f);
        auto c = find_shelling(poly);
        REQUIRE(c);
        CHECK(verify_shelling(poly, c->facet_order).restrictions == c->restrictions);
    }
    const auto two = sc(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    CHECK_FALSE(find_shelling(two));
    Lists big;
    for (unsigned i = 1; i <= 21; ++i) big.push_back({i, i % 21 + 1});
    CHECK_THROWS_AS(find_shelling(sc(21, big)), BoundExceeded);
}
