#pragma once

// InstanceFile JSON: {"name", "m", "facets", "lambda", "seed"}. Key order on
// output is fixed by nlohmann::json's sorted object map.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtoric/generators.hpp"

namespace rtoric {

using Json = nlohmann::json;

class ParseError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

inline Json instance_to_json(const Instance& inst) {
    Json j;
    if (!inst.name.empty()) j["name"] = inst.name;
    j["m"] = inst.k.m();
    j["facets"] = inst.k.facet_lists();
    j["lambda"] = inst.lambda.bitstrings();
    if (inst.seed) j["seed"] = *inst.seed;
    return j;
}

inline std::string emit_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace detail

/// The `m` and `facets` fields alone; `lambda` is not read.
inline SimplicialComplex complex_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    const Json& jm = detail::field(j, "m");
    if (!jm.is_number_unsigned()) throw ParseError("field 'm': expected a positive integer");
    const unsigned m = jm.get<unsigned>();

    const Json& jf = detail::field(j, "facets");
    if (!jf.is_array()) throw ParseError("field 'facets': expected a list of vertex lists");
    std::vector<std::vector<unsigned>> facets;
    for (std::size_t i = 0; i < jf.size(); ++i) {
        const Json& f = jf[i];
        if (!f.is_array()) throw ParseError("field 'facets[" + std::to_string(i) + "]': expected a list");
        std::vector<unsigned> vs;
        for (std::size_t t = 0; t < f.size(); ++t) {
            if (!f[t].is_number_unsigned())
                throw ParseError("field 'facets[" + std::to_string(i) + "][" + std::to_string(t) + "]': expected a vertex number");
            vs.push_back(f[t].get<unsigned>());
        }
        facets.push_back(std::move(vs));
    }
    try {
        return SimplicialComplex::from_facets(m, facets);
    } catch (const InvalidInput& e) {
        throw ParseError(std::string("field 'facets': ") + e.what());
    }
}

inline Instance instance_from_json(const Json& j) {
    Instance inst{"", complex_from_json(j), CharacteristicFunction::from_bitstrings({"1"}), std::nullopt};
    const unsigned m = inst.k.m();

    const Json& jl = detail::field(j, "lambda");
    if (!jl.is_array()) throw ParseError("field 'lambda': expected a list of bitstrings");
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < jl.size(); ++i) {
        if (!jl[i].is_string()) throw ParseError("field 'lambda[" + std::to_string(i) + "]': expected a bitstring");
        rows.push_back(jl[i].get<std::string>());
        if (rows.back().size() != m)
            throw ParseError("field 'lambda[" + std::to_string(i) + "]': length " + std::to_string(rows.back().size()) +
                             ", expected m = " + std::to_string(m));
    }

    try {
        inst.lambda = CharacteristicFunction::from_bitstrings(rows);
    } catch (const Error& e) {
        throw ParseError(std::string("field 'lambda': ") + e.what());
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("field 'name': expected a string");
        inst.name = j["name"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ParseError("field 'seed': expected a non-negative integer");
        inst.seed = j["seed"].get<std::uint64_t>();
    }
    return inst;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // e.byte is a 1-based offset; translate to line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
    }
}

inline Instance parse_instance(const std::string& text) { return instance_from_json(parse_json_text(text)); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

inline bool same_instance(const Instance& a, const Instance& b) {
    return a.name == b.name && a.k == b.k && a.lambda == b.lambda && a.seed == b.seed;
}

/// FNV-1a over the canonical emission (name excluded).
inline std::string instance_hash(const Instance& inst) {
    Instance anon = inst;
    anon.name.clear();
    anon.seed.reset();
    const std::string s = instance_to_json(anon).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[std::size_t(i)] = hex[h & 15];
    return out;
}

}  // namespace rtoric
