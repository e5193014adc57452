#include <catch_amalgamated.hpp>

#include "rtoric/falsify.hpp"
#include "rtoric/generators.hpp"
#include "rtoric/instance.hpp"

using namespace rtoric;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_instance(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("emitted instances parse back to themselves") {
    auto all = default_corpus();
    for (auto& i : generate_instances(12, 3)) all.push_back(i);
    all.push_back(torus_instance());
    all.push_back(klein_instance());
    for (const auto& inst : all) {
        INFO(inst.name);
        const Instance back = parse_instance(emit_instance(inst));
        CHECK(same_instance(back, inst));
        CHECK(emit_instance(back) == emit_instance(inst));
    }
}

TEST_CASE("instance file layout") {
    const Json j = instance_to_json(torus_instance());
    CHECK(j["m"] == 4);
    CHECK(j["lambda"] == Json{"1010", "0101"});
    CHECK(j["facets"].size() == 4);
    CHECK(j["facets"][0] == Json{1, 2});
    CHECK(!j.contains("seed"));
    const auto s = stellar_chain(projective_instance(3), 2, 9);
    CHECK(instance_to_json(s)["seed"] == 9);
}

TEST_CASE("parse errors name the line or field") {
    CHECK(error_of("{\"m\": 4,\n \"facets\": [[1,2]\n \"lambda\": []}").find("line 3") != std::string::npos);
    CHECK(error_of("{\"facets\": [], \"lambda\": []}") == "missing field 'm'");
    CHECK(error_of("{\"m\": 3, \"facets\": [[1,2],[2,\"x\"]], \"lambda\": [\"110\"]}").find("facets[1][1]") !=
          std::string::npos);
    CHECK(error_of("{\"m\": 3, \"facets\": [[1,2]], \"lambda\": [\"11\"]}").find("lambda[0]") != std::string::npos);
    CHECK(error_of("{\"m\": 3, \"facets\": [[1,5]], \"lambda\": [\"110\"]}").find("facets") != std::string::npos);
    // rank-deficient rows
    CHECK(error_of("{\"m\": 3, \"facets\": [[1,2]], \"lambda\": [\"110\", \"110\"]}").find("lambda") != std::string::npos);
    CHECK(error_of("[1, 2]") == "instance must be a JSON object");
    // K alone parses without Λ
    CHECK(complex_from_json(parse_json_text("{\"m\": 3, \"facets\": [[1,2],[2,3],[1,3]]}")) == simplex_boundary(2));
}

TEST_CASE("instance hash") {
    const auto a = torus_instance();
    Instance b = a;
    b.name = "renamed";
    b.seed = 5;
    CHECK(instance_hash(a) == instance_hash(b));
    CHECK(instance_hash(a).size() == 16);
    CHECK(instance_hash(a) != instance_hash(klein_instance()));
    CHECK(instance_hash(a) == instance_hash(parse_instance(emit_instance(a))));
    // pinned: reports from different builds must agree
    CHECK(instance_hash(a) == "ab0f1240eaa04953");
}

TEST_CASE("generated instance lists are deterministic") {
    const auto a = generate_instances(10, 7), b = generate_instances(10, 7);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_instance(a[i], b[i]));
    CHECK(!same_instance(generate_instances(1, 8)[0], a[0]));
}

TEST_CASE("falsify rejects invalid instances without counting findings") {
    const SimplicialComplex k(4, {0b0011, 0b1100});  // two disjoint edges
    const Instance not_sphere{"two-edges", k, torus_instance().lambda, std::nullopt};
    const Instance singular{"singular", polygon(4), CharacteristicFunction::from_bitstrings({"1101", "0011"}), std::nullopt};
    const auto rep = falsify({not_sphere, singular, torus_instance()});
    CHECK(rep.findings() == 0);
    CHECK(rep.rejected() == 2);
    const Json j = report_json(rep, {}, Json("test"));
    CHECK(j["summary"]["instances"] == 3);
    CHECK(j["findings"].empty());
    // verdicts are sorted by hash whatever the input order
    const auto rev = falsify({torus_instance(), singular, not_sphere});
    CHECK(report_json(rev, {}, Json("test")).dump() == j.dump());
}

TEST_CASE("falsify report shape") {
    const auto rep = falsify({klein_instance()});
    const Json j = report_json(rep, {}, Json{{"kind", "test"}});
    CHECK(j["tool"] == "rtoric");
    CHECK(j["version"] == kToolVersion);
    const Json& inst = j["instances"][0];
    CHECK(inst["hash"] == instance_hash(klein_instance()));
    CHECK(!inst.contains("seconds"));
    for (const auto& [name, verdict] : inst["checks"].items()) {
        INFO(name);
        CHECK(verdict.get<std::string>().rfind("pass", 0) == 0);
    }
    CHECK(inst["cohomology"][2] == Json{{"free_rank", 0}, {"torsion", {"2"}}});
    FalsifyOptions timed;
    timed.timing = true;
    CHECK(report_json(rep, timed, Json{})["instances"][0].contains("seconds"));
}
