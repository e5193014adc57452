#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "rtoric/rtoric.hpp"

using namespace rtoric;

namespace {

constexpr int kExitOk = 0, kExitUsage = 1, kExitInvalid = 2, kExitFinding = 3;

constexpr const char* kPlWarning =
    "warning: the homology-sphere check is a proxy; PL-ness of K is assumed, not verified";

struct Common {
    bool json = false;
    bool text = false;
    bool timing = false;
    std::string out;  ///< write to this file instead of stdout
};

void add_format_flags(CLI::App* cmd, Common& c) {
    auto* j = cmd->add_flag("--json", c.json, "machine-readable JSON output");
    cmd->add_flag("--text", c.text, "human-readable output (default)")->excludes(j);
}

void emit(const Common& c, const std::string& s) {
    if (c.out.empty()) {
        std::cout << s;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw InvalidInput("cannot write " + c.out);
    f << s;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_term(const BigInt& c, const std::string& label) {
    if (c == 1) return label;
    if (c == -1) return "-" + label;
    return c.str() + " " + label;
}

Json base_report(const Instance& inst) {
    Json j;
    j["tool"] = "rtoric";
    j["version"] = kToolVersion;
    j["instance"] = {{"name", inst.name}, {"hash", instance_hash(inst)}, {"m", inst.k.m()}, {"n", inst.lambda.n()}};
    return j;
}

// validate

int cmd_validate(const std::string& path, const Common& c) {
    const Instance inst = load_instance(path);
    const auto& k = inst.k;
    Json j = base_report(inst);
    bool ok = true;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        ok = ok && pass;
        j["checks"][name] = {{"pass", pass}, {"detail", detail}};
    };
    check("closure", true, "generated by " + std::to_string(k.facets().size()) + " maximal faces, " +
                               std::to_string(k.face_count()) + " faces in all");
    check("purity", k.is_pure(), k.is_pure() ? "all facets have size " + std::to_string(k.dim() + 1) : "facet sizes differ");
    const bool sphere = is_homology_sphere(k);
    check("homology_sphere", sphere,
          sphere ? "reduced cohomology of S^" + std::to_string(k.dim()) : "reduced cohomology differs from a sphere");
    std::optional<Face> bad;
    if (inst.lambda.m() != k.m()) {
        check("non_singularity", false, "characteristic matrix has " + std::to_string(inst.lambda.m()) + " columns");
    } else {
        bad = check_nonsingular(k, inst.lambda);
        check("non_singularity", !bad, bad ? "columns dependent on face " + face_str(*bad) : "independent on every facet");
    }
    const bool rank_ok = inst.lambda.n() == std::size_t(k.dim() + 1);
    check("rank", rank_ok, "n = " + std::to_string(inst.lambda.n()) + ", dim K + 1 = " + std::to_string(k.dim() + 1));
    j["orientable"] = inst.lambda.is_orientable();
    if (bad) j["violating_face"] = vertices(*bad);
    j["warning"] = kPlWarning;
    j["valid"] = ok;

    if (c.json) {
        emit(c, dump(j));
    } else {
        std::ostringstream s;
        s << (inst.name.empty() ? path : inst.name) << " (m = " << k.m() << ", hash " << instance_hash(inst) << ")\n";
        for (const auto& [name, r] : j["checks"].items())
            s << "  " << (r["pass"].get<bool>() ? "pass" : "FAIL") << "  " << name << ": " << r["detail"].get<std::string>()
              << "\n";
        s << "  orientable: " << (inst.lambda.is_orientable() ? "true" : "false") << "\n";
        emit(c, s.str());
        std::cerr << kPlWarning << "\n";
    }
    return ok ? kExitOk : kExitInvalid;
}

// cohomology

int cmd_cohomology(const std::string& path, bool assembly, bool oracle, bool both, const Common& c) {
    const Instance inst = load_instance(path);
    if (both || (!assembly && !oracle)) assembly = oracle = true;
    Json j = base_report(inst);
    j["mode"] = assembly && oracle ? "both" : assembly ? "assembly" : "oracle";
    std::vector<AbelianGroup> a, o;
    IntegralCohomology assembled;
    const auto t0 = std::chrono::steady_clock::now();
    if (assembly) {
        assembled = assemble_integral_cohomology(inst.k, inst.lambda);
        a = assembled.groups;
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (oracle) {
        require_characteristic(inst.k, inst.lambda);
        o = oracle_cohomology(inst.k, inst.lambda);
    }
    const auto t2 = std::chrono::steady_clock::now();

    const std::size_t top = std::max(a.size(), o.size());
    bool match = true;
    Json degrees = Json::array();
    std::ostringstream s;
    s << (inst.name.empty() ? path : inst.name) << "\n";
    for (std::size_t i = 0; i < top; ++i) {
        Json d{{"degree", i}};
        const AbelianGroup ga = i < a.size() ? a[i] : AbelianGroup(), go = i < o.size() ? o[i] : AbelianGroup();
        s << "  H^" << i << " =";
        if (assembly) {
            d["assembly"] = group_json(ga);
            s << " " << ga.str();
        }
        if (oracle) {
            d["oracle"] = group_json(go);
            if (!assembly) s << " " << go.str();
        }
        if (assembly && oracle) {
            const bool same = ga == go;
            match = match && same;
            d["verdict"] = same ? "MATCH" : "MISMATCH";
            s << (same ? "  MATCH" : "  MISMATCH (oracle " + go.str() + ")");
        }
        s << "\n";
        degrees.push_back(d);
    }
    j["degrees"] = degrees;
    if (assembly) {
        Json ledger = Json::array();
        for (const auto& e : assembled.ledger) {
            Json x{{"degree", e.degree}, {"summand", e.summand}, {"origin", e.origin}, {"source", e.source}};
            if (e.omega) x["omega"] = vertices(*e.omega);
            ledger.push_back(x);
        }
        j["ledger"] = ledger;
    }
    if (c.timing)
        j["timing"] = {{"assembly_seconds", std::chrono::duration<double>(t1 - t0).count()},
                       {"oracle_seconds", std::chrono::duration<double>(t2 - t1).count()}};
    emit(c, c.json ? dump(j) : s.str());
    if (assembly) std::cerr << kPlWarning << "\n";
    return match ? kExitOk : kExitFinding;
}

// ring

int cmd_ring(const std::string& path, int truncation, bool verify, const Common& c) {
    const Instance inst = load_instance(path);
    require_full_rank(inst.k, inst.lambda);
    const StarRing star(inst.k, inst.lambda);
    std::vector<StarGenerator> all;
    for (int i = 0; i <= star.top_degree(); ++i)
        for (const auto& g : star.generators(i)) all.push_back(g);

    Json j = base_report(inst);
    Json gens = Json::array(), products = Json::array();
    std::ostringstream s;
    s << "generators of G^*:\n";
    for (const auto& g : all) {
        const std::string order = g.order == 0 ? "Z" : "Z/" + g.order.str();
        gens.push_back({{"label", generator_label(g)}, {"degree", g.cls.degree}, {"omega", vertices(g.cls.omega)}, {"order", order}});
        s << "  " << generator_label(g) << "  degree " << g.cls.degree << ", omega " << face_str(g.cls.omega) << ", " << order << "\n";
    }
    s << "products:\n";
    for (const auto& ga : all)
        for (const auto& gb : all) {
            const int deg = ga.cls.degree + gb.cls.degree;
            if (deg > star.top_degree()) continue;
            const StarClass p = star.product(ga.cls, gb.cls);
            const IntVector coords = star.class_coordinates(p);
            const auto& targets = star.basis(p.omega, deg).generators();
            Json terms = Json::array();
            std::string rhs;
            for (std::size_t t = 0; t < coords.size(); ++t) {
                if (coords[t] == 0) continue;
                const std::string label = generator_label({StarClass{deg, p.omega, targets[t].cocycle}, targets[t].order, t});
                terms.push_back({{"coefficient", coords[t].str()}, {"generator", label}});
                const std::string term = format_term(coords[t], label);
                rhs += rhs.empty() ? term : (term[0] == '-' ? " - " + term.substr(1) : " + " + term);
            }
            products.push_back({{"a", generator_label(ga)}, {"b", generator_label(gb)}, {"product", terms}});
            s << "  " << generator_label(ga) << " * " << generator_label(gb) << " = " << (rhs.empty() ? "0" : rhs) << "\n";
        }
    j["generators"] = gens;
    j["products"] = products;

    int code = kExitOk;
    if (verify) {
        const InvariantQ q(inst.k, inst.lambda, truncation);
        const auto rep = ring_comparison(star, q);
        Json pairs = Json::array();
        for (const auto& p : rep.pairs)
            pairs.push_back({{"a", p.a}, {"b", p.b}, {"degree", p.degree}, {"exact", p.exact}, {"order_two", p.order_two}});
        j["verification"] = {{"truncation", rep.truncation}, {"product_cap", rep.product_cap}, {"pairs", pairs},
                             {"failures", rep.failures()}};
        s << "verification against the cochain model (D = " << rep.truncation << "): " << rep.pairs.size() << " pairs, "
          << rep.failures() << " failures\n";
        if (rep.failures()) code = kExitFinding;
    }
    emit(c, c.json ? dump(j) : s.str());
    return code;
}

// mod2

int cmd_mod2(const std::string& path, const Common& c) {
    const Instance inst = load_instance(path);
    require_characteristic(inst.k, inst.lambda);
    const Mod2Ring ring(inst.k, inst.lambda, std::max(2, int(inst.lambda.n()) + 1));
    const auto h = inst.k.f_h_vectors().h;
    const auto sw = stiefel_whitney_w1_w2(ring);
    Json j = base_report(inst);
    j["h_vector"] = h;
    j["ring_dims"] = ring.dims();
    j["w1"] = ring.str(sw.w1);
    j["w2"] = ring.str(sw.w2);
    std::ostringstream s;
    s << "h-vector:";
    for (auto x : h) s << " " << x;
    s << "\nring dims:";
    for (auto x : ring.dims()) s << " " << x;
    s << "\nw1 = " << ring.str(sw.w1) << "\nw2 = " << ring.str(sw.w2) << "\n";
    emit(c, c.json ? dump(j) : s.str());
    return kExitOk;
}

// spinc

int cmd_spinc(const std::string& path, const Common& c) {
    const Instance inst = load_instance(path);
    require_full_rank(inst.k, inst.lambda);
    const SpincResult r = spin_c(inst.k, inst.lambda);
    const Mod2Ring ring(inst.k, inst.lambda, std::max(2, int(inst.lambda.n()) + 1));
    Json j = base_report(inst);
    j["orientable"] = r.orientable;
    j["spin_c"] = r.spin_c;
    j["w2"] = ring.str(r.w2);
    std::ostringstream s;
    s << "spin^c: " << (r.spin_c ? "true" : "false") << "\n";
    if (!r.reason.empty()) {
        j["reason"] = r.reason;
        s << "  " << r.reason << "\n";
    }
    s << "  w2 = " << ring.str(r.w2) << "\n";
    if (r.spin_c) {
        Json comb = Json::array();
        for (auto i : r.combination) {
            const auto& g = r.generators[i];
            comb.push_back({{"omega", vertices(g.omega)}, {"p", ring.str(g.p)}});
            s << "  + P from omega " << face_str(g.omega) << ": " << ring.str(g.p) << "\n";
        }
        j["combination"] = comb;
    } else if (r.orientable) {
        j["residual"] = ring.str(r.residual);
        s << "  w2 is not a sum of mod-2 reductions; residual " << ring.str(r.residual) << "\n";
    }
    emit(c, c.json ? dump(j) : s.str());
    return kExitOk;
}

// generate

Instance named_base(const std::string& base) {
    auto number = [&](std::size_t skip) { return unsigned(std::stoul(base.substr(skip))); };
    if (base == "torus") return torus_instance();
    if (base == "klein") return klein_instance();
    if (base.rfind("rp", 0) == 0) return projective_instance(number(2));
    if (base.rfind("cross", 0) == 0) {
        const unsigned n = number(5);
        return {"cross" + std::to_string(n) + "-cube", cross_polytope(n), cube_lambda(n), std::nullopt};
    }
    return load_instance(base);
}

int cmd_generate(const std::string& kind, const std::vector<std::string>& params, std::uint64_t seed, unsigned rank,
                 std::size_t attempts, const Common& c) {
    auto need = [&](std::size_t k, const char* usage) {
        if (params.size() != k) throw CLI::ValidationError("generate " + kind, std::string("expected ") + usage);
    };
    auto number = [&](std::size_t i) { return unsigned(std::stoul(params.at(i))); };
    Instance inst;
    if (kind == "simplex-boundary") {
        need(1, "N");
        inst = projective_instance(number(0));
    } else if (kind == "cross-polytope") {
        need(1, "N");
        inst = {"cross" + params[0] + "-cube", cross_polytope(number(0)), cube_lambda(number(0)), std::nullopt};
    } else if (kind == "polygon") {
        need(1, "M");
        std::mt19937_64 rng(seed);
        const auto k = polygon(number(0));
        inst = {"polygon" + params[0] + "-s" + std::to_string(seed), k, random_lambda(k, 2, rng, attempts), seed};
    } else if (kind == "stellar-chain") {
        need(2, "BASE STEPS (BASE: rpN, crossN, torus, klein or an instance file)");
        inst = stellar_chain(named_base(params[0]), number(1), seed);
    } else if (kind == "random-lambda") {
        need(1, "FILE with m and facets");
        const auto k = complex_from_json(parse_json_text(read_file(params[0])));
        std::mt19937_64 rng(seed);
        const unsigned n = rank ? rank : unsigned(k.dim() + 1);
        inst = {std::filesystem::path(params[0]).stem().string() + "-s" + std::to_string(seed), k,
                random_lambda(k, n, rng, attempts), seed};
    } else {
        throw CLI::ValidationError("generate", "unknown kind '" + kind + "'");
    }
    emit(c, emit_instance(inst));
    return kExitOk;
}

// falsify

int cmd_falsify(const std::string& dir, std::size_t generate, std::uint64_t seed, const FalsifyOptions& opt,
                const std::string& report_path, const Common& c) {
    std::vector<Instance> instances;
    std::vector<RejectedInput> rejected;
    Json source;
    if (!dir.empty()) {
        if (generate) throw CLI::ValidationError("falsify", "give a corpus directory or --generate, not both");
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            try {
                Instance inst = load_instance(f.string());
                if (inst.name.empty()) inst.name = f.stem().string();
                instances.push_back(std::move(inst));
            } catch (const InvalidInput& e) {
                rejected.push_back({f.filename().string(), e.what()});
            }
        }
        source = {{"kind", "corpus-dir"}, {"files", files.size()}};
    } else if (generate) {
        instances = generate_instances(generate, seed);
        source = {{"kind", "generate"}, {"count", generate}, {"seed", seed}};
    } else {
        instances = default_corpus(seed);
        source = {{"kind", "default-corpus"}, {"seed", seed}};
    }

    FalsifyReport rep = falsify(instances, opt);
    rep.rejected_inputs = rejected;
    const Json j = report_json(rep, opt, source);
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) throw InvalidInput("cannot write " + report_path);
        f << dump(j);
    }
    if (c.json) {
        emit(c, dump(j));
    } else {
        std::ostringstream s;
        for (const auto& v : rep.verdicts) {
            const bool rej = v.checks.count("validate") && v.checks.at("validate") != "pass";
            s << (rej ? "REJECTED " : v.findings.empty() ? "ok       " : "FINDING  ") << v.hash << "  " << v.instance.name
              << "\n";
            for (const auto& f : v.findings) s << "    " << f << "\n";
            if (rej) s << "    " << v.checks.at("validate") << "\n";
        }
        for (const auto& r : rep.rejected_inputs) s << "REJECTED " << r.source << ": " << r.reason << "\n";
        s << rep.verdicts.size() << " instances, " << rep.rejected() << " rejected, " << rep.findings() << " findings\n";
        emit(c, s.str());
    }
    return rep.findings() ? kExitFinding : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral cohomology of real toric manifolds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Common common;
    std::string path;

    auto* validate = app.add_subcommand("validate", "check an instance file");
    validate->add_option("file", path, "instance JSON")->required();

    bool assembly = false, oracle = false, both = false;
    auto* cohom = app.add_subcommand("cohomology", "integral cohomology groups");
    cohom->add_option("file", path, "instance JSON")->required();
    auto* fa = cohom->add_flag("--assembly", assembly, "assemble from the G table");
    auto* fo = cohom->add_flag("--oracle", oracle, "brute-force cochain oracle");
    cohom->add_flag("--both", both, "both, with a MATCH/MISMATCH verdict per degree (default)")->excludes(fa)->excludes(fo);
    cohom->add_flag("--timing", common.timing, "include timings in JSON");

    int truncation = -1;
    bool verify = false;
    auto* ring = app.add_subcommand("ring", "the *-product on generator pairs");
    ring->add_option("file", path, "instance JSON")->required();
    ring->add_flag("--verify", verify, "compare with the cochain model up to order-2 classes");
    ring->add_option("--truncation", truncation, "truncation degree D of the cochain model (default n+2)");

    auto* mod2 = app.add_subcommand("mod2", "h-vector, mod-2 ring dimensions, w1 and w2");
    mod2->add_option("file", path, "instance JSON")->required();

    auto* spinc = app.add_subcommand("spinc", "spin^c verdict with certificate");
    spinc->add_option("file", path, "instance JSON")->required();

    std::string kind;
    std::vector<std::string> params;
    std::uint64_t seed = 7;
    unsigned rank = 0;
    std::size_t attempts = kDefaultSamplingAttempts;
    auto* gen = app.add_subcommand("generate", "emit an instance file");
    gen->add_option("kind", kind, "simplex-boundary N | cross-polytope N | polygon M | stellar-chain BASE STEPS | random-lambda FILE")
        ->required()
        ->check(CLI::IsMember({"simplex-boundary", "cross-polytope", "polygon", "stellar-chain", "random-lambda"}));
    gen->add_option("params", params, "kind parameters");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--rank", rank, "rows of a random Λ (default dim K + 1)");
    gen->add_option("--attempts", attempts, "sampling budget for random Λ");
    gen->add_option("-o,--output", common.out, "write here instead of stdout");

    std::string dir, report_path;
    std::size_t generate = 0;
    FalsifyOptions fopt;
    auto* fals = app.add_subcommand("falsify", "run the invariant suite over a corpus");
    fals->add_option("corpus-dir", dir, "directory of instance files (default: built-in corpus)");
    fals->add_option("--generate", generate, "generate N instances from --seed instead");
    fals->add_option("--seed", seed, "seed for --generate and the built-in corpus");
    fals->add_option("--max-m", fopt.max_m, "largest m for the ring comparison");
    fals->add_option("--truncation", fopt.truncation, "truncation degree D (default n+2)");
    fals->add_option("--threads", fopt.threads, "worker threads")->check(CLI::PositiveNumber);
    fals->add_option("--report", report_path, "also write the JSON report here");
    fals->add_flag("--timing", fopt.timing, "include per-instance timings (breaks byte-identity)");

    for (auto* cmd : {validate, cohom, ring, mod2, spinc, fals}) add_format_flags(cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(path, common);
        if (*cohom) return cmd_cohomology(path, assembly, oracle, both, common);
        if (*ring) return cmd_ring(path, truncation, verify, common);
        if (*mod2) return cmd_mod2(path, common);
        if (*spinc) return cmd_spinc(path, common);
        if (*gen) return cmd_generate(kind, params, seed, rank, attempts, common);
        if (*fals) return cmd_falsify(dir, generate, seed, fopt, report_path, common);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number in arguments\n";
        return kExitUsage;
    } catch (const PreconditionFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const FalsificationFinding& e) {
        std::cerr << "finding: " << e.what() << "\n";
        return kExitFinding;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}
