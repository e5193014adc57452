#include <catch_amalgamated.hpp>

#include "rtoric/generators.hpp"
#include "rtoric/spinc.hpp"
#include "rtoric/star_product.hpp"
#include "rtoric/toric_cohomology.hpp"

using namespace rtoric;

namespace {

AbelianGroup z(std::size_t r = 1) { return AbelianGroup::integers(r); }
AbelianGroup tor(std::vector<BigInt> t) { return AbelianGroup(0, std::move(t)); }
Face F(std::initializer_list<unsigned> vs) { return face_of(std::vector<unsigned>(vs), 64); }

AbelianGroup summand(const GTable& t, int i, Face w) {
    for (const auto& s : t.degrees[std::size_t(i)])
        if (s.omega == w) return s.group;
    FAIL("omega missing");
    return {};
}

Monomial mono(unsigned m, std::initializer_list<unsigned> vs) {
    Monomial x(m, 0);
    for (unsigned v : vs) ++x[v - 1];
    return x;
}

}  // namespace

TEST_CASE("G tables of the named instances") {
    const auto t = g_table(torus_instance().k, torus_instance().lambda);
    CHECK(t.total(0) == z());
    CHECK(summand(t, 0, 0) == z());
    CHECK(t.total(1) == z(2));
    CHECK(summand(t, 1, F({1, 3})) == z());
    CHECK(summand(t, 1, F({2, 4})) == z());
    CHECK(t.total(2) == z());
    CHECK(summand(t, 2, F({1, 2, 3, 4})) == z());

    const auto k = g_table(klein_instance().k, klein_instance().lambda);
    CHECK(k.total(0) == z());
    CHECK(k.total(1) == z());
    CHECK(summand(k, 1, F({2, 4})) == z());
    CHECK(summand(k, 1, F({1, 3, 4})).is_trivial());
    CHECK(k.total(2).is_trivial());

    const auto r = g_table(projective_instance(2).k, projective_instance(2).lambda);
    CHECK(r.total(0) == z());
    CHECK(r.total(1).is_trivial());
    CHECK(r.total(2).is_trivial());
    for (const auto& tab : {t, k, r}) CHECK(tab.omegas.size() == 4);
}

TEST_CASE("assembly reproduces the classical answers") {
    auto h = [](const Instance& i) { return assemble_integral_cohomology(i.k, i.lambda).groups; };
    CHECK(h(projective_instance(2)) == std::vector{z(), AbelianGroup(), tor({2})});
    CHECK(h(projective_instance(3)) == std::vector{z(), AbelianGroup(), tor({2}), z()});
    CHECK(h(projective_instance(4)) == std::vector{z(), AbelianGroup(), tor({2}), AbelianGroup(), tor({2})});
    CHECK(h(projective_instance(5)) == std::vector{z(), AbelianGroup(), tor({2}), AbelianGroup(), tor({2}), z()});
    CHECK(h(torus_instance()) == std::vector{z(), z(2), z()});
    CHECK(h(klein_instance()) == std::vector{z(), z(), tor({2})});
}

TEST_CASE("assembly ledger and consistency") {
    const auto rp3 = projective_instance(3);
    const auto res = assemble_integral_cohomology(rp3.k, rp3.lambda);
    std::size_t residual = 0, free = 0;
    for (const auto& e : res.ledger) {
        residual += e.origin == "h-vector-residual";
        free += e.origin == "free";
    }
    CHECK(residual == 1);
    CHECK(free == 2);
    for (const auto& inst : default_corpus()) {
        INFO(inst.name);
        const auto out = assemble_integral_cohomology(inst.k, inst.lambda);
        const auto hv = inst.k.f_h_vectors().h;
        std::int64_t alt = 0;
        for (std::size_t i = 0; i < hv.size(); ++i) {
            alt += (i % 2 ? -1 : 1) * hv[i];
            const std::size_t next = i + 1 < out.groups.size() ? out.groups[i + 1].even_torsion_count() : 0;
            CHECK(std::int64_t(out.groups[i].free_rank() + out.groups[i].even_torsion_count() + next) == hv[i]);
        }
        CHECK(euler_characteristic(out.groups) == alt);
        // basis change invariance
        const auto m = GF2Matrix::from_row_masks([&] {
            std::vector<std::uint64_t> rows;
            for (std::size_t i = 0; i < inst.lambda.n(); ++i) rows.push_back((1u << i) | (i ? 1u : 0u));
            return rows;
        }(), inst.lambda.n());
        CHECK(assemble_integral_cohomology(inst.k, inst.lambda.transformed(m)).groups == out.groups);
    }
}

TEST_CASE("assembly preconditions") {
    // two disjoint edges: not a sphere
    const SimplicialComplex k(4, {F({1, 2}), F({3, 4})});
    const auto lam = CharacteristicFunction::from_bitstrings({"1010", "0101"});
    CHECK_THROWS_AS(assemble_integral_cohomology(k, lam), PreconditionFailed);
    const auto rank1 = CharacteristicFunction::from_bitstrings({"1111"});
    CHECK_THROWS_AS(assemble_integral_cohomology(polygon(4), rank1), PreconditionFailed);
}

TEST_CASE("mod-2 Betti numbers and the ring") {
    CHECK(mod2_betti(projective_instance(2).k, projective_instance(2).lambda) == std::vector<std::int64_t>{1, 1, 1});
    CHECK(mod2_betti(torus_instance().k, torus_instance().lambda) == std::vector<std::int64_t>{1, 2, 1});
    CHECK(mod2_betti(klein_instance().k, klein_instance().lambda) == std::vector<std::int64_t>{1, 2, 1});
    CHECK(mod2_betti(projective_instance(3).k, projective_instance(3).lambda) == std::vector<std::int64_t>{1, 1, 1, 1});

    const auto rp2 = projective_instance(2);
    const Mod2Ring r(rp2.k, rp2.lambda);
    CHECK(r.dims() == std::vector<std::size_t>{1, 1, 1, 0});
    CHECK(r.str(r.variable(1)) == "x3");
    CHECK(r.variable(1) == r.variable(3));
    const auto sq = r.multiply(r.variable(3), r.variable(3));
    CHECK(!sq.is_zero());
    CHECK(sq == r.monomial_class(mono(3, {3, 3})));
    CHECK(sq == r.monomial_class(mono(3, {2, 3})));
    CHECK(r.multiply(sq, r.variable(3)).is_zero());

    const auto torus = torus_instance();
    const Mod2Ring t(torus.k, torus.lambda);
    CHECK(!t.monomial_class(mono(4, {1, 2})).is_zero());
    CHECK(t.monomial_class(mono(4, {1, 3})).is_zero());
    CHECK(!t.lookup(2, mono(4, {1, 3})));
    CHECK_THROWS_AS(t.multiply(t.monomial_class(mono(4, {1, 2})), t.monomial_class(mono(4, {1, 2}))), BoundExceeded);

    for (const auto& inst : default_corpus()) {
        const Mod2Ring ring(inst.k, inst.lambda);
        const auto hv = inst.k.f_h_vectors().h;
        for (int d = 0; d <= ring.max_degree(); ++d)
            CHECK(std::int64_t(ring.dim(d)) == (d < int(hv.size()) ? hv[std::size_t(d)] : 0));
    }
}

TEST_CASE("Stiefel-Whitney classes") {
    const auto tw = stiefel_whitney_w1_w2(Mod2Ring(torus_instance().k, torus_instance().lambda));
    CHECK(tw.w1.is_zero());
    CHECK(tw.w2.is_zero());
    const Mod2Ring r2(projective_instance(2).k, projective_instance(2).lambda);
    CHECK(r2.str(stiefel_whitney_w1_w2(r2).w1) == "x3");
    const auto r3 = stiefel_whitney_w1_w2(Mod2Ring(projective_instance(3).k, projective_instance(3).lambda));
    CHECK(r3.w1.is_zero());
    // RP^n: w1 = (n+1) x and w2 = C(n+1,2) x^2
    const Mod2Ring r4(projective_instance(4).k, projective_instance(4).lambda);
    const auto w4 = stiefel_whitney_w1_w2(r4);
    CHECK(!w4.w1.is_zero());
    CHECK(w4.w2.is_zero());
    const Mod2Ring r5(projective_instance(5).k, projective_instance(5).lambda);
    CHECK(stiefel_whitney_w1_w2(r5).w1.is_zero());
    CHECK(!stiefel_whitney_w1_w2(r5).w2.is_zero());
}

TEST_CASE("spin^c suite") {
    CHECK(spin_c(torus_instance().k, torus_instance().lambda).spin_c);
    const auto rp3 = spin_c(projective_instance(3).k, projective_instance(3).lambda);
    CHECK(rp3.orientable);
    CHECK(rp3.spin_c);
    CHECK(!spin_c(projective_instance(2).k, projective_instance(2).lambda).spin_c);
    const auto kl = spin_c(klein_instance().k, klein_instance().lambda);
    CHECK(!kl.orientable);
    CHECK(!kl.spin_c);
    const auto rp4 = spin_c(projective_instance(4).k, projective_instance(4).lambda);
    CHECK(!rp4.orientable);
    CHECK(!rp4.spin_c);
    // RP^5 is orientable with w2 = 15 x^2 ≠ 0, but x^2 reduces an integral class
    const auto rp5 = spin_c(projective_instance(5).k, projective_instance(5).lambda);
    CHECK(rp5.orientable);
    CHECK(rp5.spin_c);
    CHECK(!rp5.w2.is_zero());
    CHECK(!rp5.combination.empty());
}

TEST_CASE("star product on the torus") {
    const auto inst = torus_instance();
    const StarRing s(inst.k, inst.lambda);
    const auto g1 = s.generators(1);
    REQUIRE(g1.size() == 2);
    const auto& a = g1[0].cls;
    const auto& b = g1[1].cls;
    CHECK(a.omega == F({1, 3}));
    CHECK(b.omega == F({2, 4}));
    const auto ab = s.product(a, b);
    const auto ba = s.product(b, a);
    CHECK(ab.omega == F({1, 2, 3, 4}));
    const auto top = s.generators(2);
    REQUIRE(top.size() == 1);
    const auto c = s.class_coordinates(ab);
    REQUIRE(c.size() == 1);
    CHECK(abs(c[0]) == 1);
    CHECK(s.class_coordinates(ba)[0] == -c[0]);
    CHECK(s.is_coboundary(s.product(a, a)));
    CHECK(s.is_coboundary(s.product(b, b)));
    // the unit
    CHECK(s.product(s.unit(), a).cochain == a.cochain);
    CHECK(s.product(a, s.unit()).cochain == a.cochain);
}

TEST_CASE("star product: commutativity, associativity and coboundary inputs") {
    std::mt19937_64 rng(17);
    for (const auto& inst : default_corpus()) {
        if (inst.k.m() > 8) continue;
        INFO(inst.name);
        const StarRing s(inst.k, inst.lambda);
        std::vector<StarGenerator> all;
        for (int i = 0; i <= s.top_degree(); ++i)
            for (const auto& g : s.generators(i)) all.push_back(g);
        for (const auto& ga : all)
            for (const auto& gb : all) {
                const auto& a = ga.cls;
                const auto& b = gb.cls;
                if (a.degree + b.degree > s.top_degree()) continue;
                const auto ab = s.product(a, b);
                const auto ba = s.product(b, a);
                CHECK(s.is_coboundary(s.add(ab, ba, (a.degree * b.degree) % 2 ? 1 : -1)));
                // perturbing a by a coboundary changes a*b by a coboundary
                if (a.degree >= 1) {
                    IntVector x(s.full_subcomplex(a.omega).faces_of_size(a.degree - 1).size());
                    for (auto& v : x) v = BigInt(int(rng() % 5) - 2);
                    const auto a2 = s.add_coboundary(a, x);
                    CHECK(s.is_coboundary(s.add(s.product(a2, b), ab, -1)));
                }
                for (const auto& gc : all) {
                    const auto& c = gc.cls;
                    if (a.degree + b.degree + c.degree > s.top_degree()) continue;
                    const auto l = s.product(ab, c);
                    const auto r = s.product(a, s.product(b, c));
                    CHECK(s.is_coboundary(s.add(l, r, -1)));
                }
            }
    }
}
