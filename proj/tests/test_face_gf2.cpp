#include <catch_amalgamated.hpp>

#include "rtoric/face.hpp"
#include "rtoric/gf2.hpp"

using namespace rtoric;

TEST_CASE("face order is by size then lexicographic") {
    const Face a = face_of({1, 3}, 4), b = face_of({2, 3}, 4), c = face_of({1, 2, 3}, 4);
    CHECK(face_less(0, a));
    CHECK(face_less(a, b));
    CHECK_FALSE(face_less(b, a));
    CHECK(face_less(b, c));
    CHECK(face_less(face_of({1, 4}, 4), face_of({2, 3}, 4)));
    CHECK(vertices(c) == std::vector<unsigned>{1, 2, 3});
    CHECK(face_str(0) == "{}");
    CHECK(face_str(a) == "{1,3}");
}

TEST_CASE("face parsing rejects bad vertices") {
    CHECK_THROWS_AS(face_of({0}, 3), InvalidInput);
    CHECK_THROWS_AS(face_of({4}, 3), InvalidInput);
    CHECK_THROWS_AS(face_of({2, 2}, 3), InvalidInput);
}

TEST_CASE("insertion and shuffle signs") {
    CHECK(insertion_sign(face_of({2, 3}, 4), 1) == 1);
    CHECK(insertion_sign(face_of({1, 3}, 4), 2) == -1);
    CHECK(insertion_sign(face_of({1, 2}, 4), 4) == 1);
    CHECK(shuffle_sign(face_of({1}, 4), face_of({2}, 4)) == 1);
    CHECK(shuffle_sign(face_of({2}, 4), face_of({1}, 4)) == -1);
    CHECK(shuffle_sign(face_of({2, 4}, 4), face_of({1, 3}, 4)) == -1);  // 3 inversions
    CHECK(shuffle_sign(face_of({3, 4}, 4), face_of({1, 2}, 4)) == 1);   // 4 inversions
    // sign(a,b) sign(b,a) = (-1)^{|a||b|}
    for (Face a = 0; a < 16; ++a)
        for (Face b = 0; b < 16; ++b) {
            if (a & b) continue;
            CHECK(shuffle_sign(a, b) * shuffle_sign(b, a) == ((card(a) * card(b)) % 2 ? -1 : 1));
        }
}

TEST_CASE("subset enumeration") {
    std::vector<Face> subs;
    for_each_subset(face_of({1, 3}, 4), [&](Face s) { subs.push_back(s); });
    CHECK(subs == std::vector<Face>{0, 1, 4, 5});
}

TEST_CASE("GF(2) row space, kernel, rank") {
    const auto a = GF2Matrix::from_bitstrings({"101", "011"});
    auto rs = gf2_row_space(a);
    std::sort(rs.begin(), rs.end(), FaceLess{});
    CHECK(rs == std::vector<Face>{0, face_of({1, 2}, 3), face_of({1, 3}, 3), face_of({2, 3}, 3)});
    auto ker = gf2_kernel(a);
    std::sort(ker.begin(), ker.end(), FaceLess{});
    CHECK(ker == std::vector<Face>{0, face_of({1, 2, 3}, 3)});
    CHECK(gf2_rank(GF2Matrix::from_bitstrings({"1010", "0101"})) == 2);
    CHECK(gf2_rank(GF2Matrix::from_bitstrings({"101", "101"})) == 1);
    const auto basis = gf2_rref(a.row_masks());
    CHECK(gf2_membership(basis, face_of({1, 2}, 3)));
    CHECK_FALSE(gf2_membership(basis, face_of({1, 2, 3}, 3)));
}

TEST_CASE("GF(2) kernel is annihilated and has the right size") {
    const auto a = GF2Matrix::from_bitstrings({"110100", "011010", "101001"});
    const auto kb = gf2_kernel_basis(a);
    CHECK(kb.size() == 6 - gf2_rank(a));
    for (auto x : kb)
        for (std::size_t i = 0; i < a.rows(); ++i) CHECK(card(a.row(i) & x) % 2 == 0);
}

TEST_CASE("enumeration bound is enforced") {
    std::vector<std::uint64_t> basis(25);
    for (unsigned i = 0; i < 25; ++i) basis[i] = std::uint64_t(1) << i;
    CHECK_THROWS_AS(gf2_span(basis), BoundExceeded);
    CHECK(gf2_span(basis, 25).size() == (std::size_t(1) << 25));
}

TEST_CASE("bit-matrix column bound") {
    CHECK_THROWS_AS(GF2Matrix(2, 65), BoundExceeded);
    CHECK_THROWS_AS(GF2Matrix(2, 10, 8), BoundExceeded);
    CHECK_THROWS_AS(GF2Matrix::from_bitstrings({"10", "2"}), InvalidInput);
}

TEST_CASE("eliminator certificates") {
    GF2Eliminator e(5);
    auto vec = [](std::initializer_list<int> bits) {
        BitVector v(5);
        for (int b : bits) v.set(std::size_t(b));
        return v;
    };
    CHECK(e.insert(vec({0, 1})));
    CHECK(e.insert(vec({1, 2})));
    CHECK_FALSE(e.insert(vec({0, 2})));
    CHECK(e.insert(vec({3})));
    CHECK(e.rank() == 3);
    const auto target = vec({0, 2, 3});
    auto combo = e.express(target);
    REQUIRE(combo);
    BitVector sum(5);
    const std::vector<BitVector> gens{vec({0, 1}), vec({1, 2}), vec({0, 2}), vec({3})};
    for (auto i : *combo) sum ^= gens[i];
    CHECK(sum == target);
    CHECK_FALSE(e.express(vec({4})));
    CHECK(e.reduce(vec({4, 0, 1})) == vec({4}));
}
