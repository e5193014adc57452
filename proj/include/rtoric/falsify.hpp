#pragma once

// The falsification runner: every checkable identity on one instance, and a
// deterministic report over a list of instances.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rtoric/instance.hpp"
#include "rtoric/oracle_q.hpp"
#include "rtoric/oracle_r.hpp"
#include "rtoric/ring_comparison.hpp"
#include "rtoric/shelling.hpp"
#include "rtoric/spinc.hpp"
#include "rtoric/star_product.hpp"
#include "rtoric/toric_cohomology.hpp"

namespace rtoric {

inline constexpr const char* kToolVersion = "0.1.0";

struct FalsifyOptions {
    unsigned max_m = kDefaultQBound;  ///< ring comparison only up to this m
    int truncation = -1;              ///< Q truncation, default n+2
    std::size_t shelling_bound = 64;
    std::size_t samples = 24;  ///< random vectors / pairs per sampled check
    unsigned threads = 1;
    bool timing = false;
};

inline Json group_json(const AbelianGroup& g) {
    return Json{{"free_rank", g.free_rank()}, {"torsion", g.torsion_strings()}};
}

inline Json groups_json(const std::vector<AbelianGroup>& gs) {
    Json a = Json::array();
    for (const auto& g : gs) a.push_back(group_json(g));
    return a;
}

struct InstanceVerdict {
    Instance instance;
    std::string hash;
    std::map<std::string, std::string> checks;  ///< "pass", "fail: ...", "skipped: ..."
    std::vector<std::string> findings;
    std::vector<AbelianGroup> cohomology;
    double seconds = 0;
};

namespace detail {

inline void run_check(InstanceVerdict& v, const std::string& name, const std::function<std::string()>& f) {
    try {
        const std::string r = f();
        v.checks[name] = r;
        if (r.rfind("fail", 0) == 0) v.findings.push_back(name + ": " + r);
    } catch (const FalsificationFinding& e) {
        v.checks[name] = std::string("fail: ") + e.what();
        v.findings.push_back(name + ": " + e.what());
    } catch (const BoundExceeded& e) {
        v.checks[name] = std::string("skipped: ") + e.what();
    } catch (const PreconditionFailed& e) {
        v.checks[name] = std::string("skipped: ") + e.what();
    } catch (const Error& e) {
        v.checks[name] = std::string("fail: ") + e.what();
        v.findings.push_back(name + ": " + e.what());
    }
}

inline std::string verdict(bool ok, const std::string& why = "") { return ok ? "pass" : "fail: " + why; }

/// A random u_σ t_τ-basis vector of degree |σ|.
inline RVector random_r_vector(const SimplicialComplex& k, std::mt19937_64& rng, int terms = 3) {
    const int d = int(rng() % std::uint64_t(k.dim() + 2));
    const auto& faces = k.faces_of_size(d);
    RVector v;
    for (int t = 0; t < terms; ++t) {
        const Face s = faces[rng() % faces.size()];
        add_term(v, {s, Face(rng()) & full_set(k.m()) & ~s}, std::int64_t(rng() % 7) - 3);
    }
    return v;
}

}  // namespace detail

/// Runs the invariant suite on one instance. Findings are collected, never thrown.
inline InstanceVerdict check_instance(const Instance& inst, const FalsifyOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    InstanceVerdict v{inst, instance_hash(inst), {}, {}, {}, 0};
    const auto& k = inst.k;
    const auto& lam = inst.lambda;
    std::mt19937_64 rng(std::stoull(v.hash, nullptr, 16));
    using detail::run_check;
    using detail::verdict;

    run_check(v, "validate", [&] {
        require_characteristic(k, lam);
        require_full_rank(k, lam);
        require_homology_sphere(k);
        return std::string("pass");
    });
    if (v.checks["validate"] != "pass") {
        v.checks["validate"] = "rejected: " + v.checks["validate"];
        v.findings.clear();
        return v;
    }

    run_check(v, "d_squared", [&] {
        // construction asserts d∘d = 0 for every complex built here
        reduced_cochain_complex(k);
        for (Face w : lam.row_space_faces()) b_complex(k, w);
        for (std::size_t s = 0; s < opt.samples; ++s) {
            const RVector x = detail::random_r_vector(k, rng);
            if (!r_differential(k, r_differential(k, x)).empty()) return verdict(false, "R_K");
        }
        return std::string("pass");
    });

    run_check(v, "phi_g_action", [&] {
        for (std::size_t s = 0; s < opt.samples; ++s) {
            const RVector x = detail::random_r_vector(k, rng);
            const Face g = vertex_bit(unsigned(rng() % k.m()) + 1), h = vertex_bit(unsigned(rng() % k.m()) + 1);
            if (phi_g_apply(g, phi_g_apply(g, x)) != x) return verdict(false, "phi_g not an involution");
            if (phi_g_apply(g, phi_g_apply(h, x)) != phi_g_apply(g ^ h, x)) return verdict(false, "composition table");
            if (phi_g_apply(g, r_differential(k, x)) != r_differential(k, phi_g_apply(g, x)))
                return verdict(false, "phi_g does not commute with d");
        }
        return std::string("pass");
    });

    run_check(v, "parity", [&] {
        if (auto bad = parity_check(lam)) return verdict(false, face_str(bad->first) + " vs " + face_str(bad->second));
        return std::string("pass");
    });

    run_check(v, "f_invariance", [&] {
        for (Face w : lam.row_space_faces()) {
            const SimplicialComplex kw = k.full_subcomplex(w);
            for (int d = 0; d <= kw.dim() + 1; ++d) {
                const auto& faces = kw.faces_of_size(d);
                if (faces.empty()) continue;
                const Face s = faces[rng() % faces.size()];
                const RVector f = f_element_t(s, w);
                for (Face g : lam.kernel_basis())
                    if (phi_g_apply(g, f) != f) return verdict(false, "f" + face_str(s) + face_str(w));
            }
        }
        return std::string("pass");
    });

    run_check(v, "shelling_uniqueness", [&] {
        const auto sh = find_shelling(k, opt.shelling_bound);
        if (!sh) return std::string("skipped: no shelling found");
        unique_omega_for_restriction(k, lam, *sh);
        return std::string("pass");
    });

    std::optional<InvariantR> r;
    run_check(v, "oracle_vs_assembly", [&] {
        r.emplace(k, lam);
        v.cohomology = cohomology_all(r->complex());
        const auto a = assemble_integral_cohomology(k, lam).groups;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != v.cohomology.at(i))
                return verdict(false, "degree " + std::to_string(i) + ": assembly " + a[i].str() + ", oracle " +
                                          v.cohomology[i].str());
        return std::string("pass");
    });

    run_check(v, "mod2_ledger", [&] {
        const auto h = mod2_betti(k, lam);
        if (!r) return std::string("skipped: no oracle");
        for (int d = 0; d <= r->complex().max_degree(); ++d)
            if (std::int64_t(betti_mod_p(r->complex(), d, 2)) != h[std::size_t(d)])
                return verdict(false, "GF(2) Betti of R in degree " + std::to_string(d));
        return std::string("pass");
    });

    run_check(v, "phi_surjectivity", [&] {
        if (!r) return std::string("skipped: no oracle");
        const auto rep = phi_surjectivity_check(*r);
        for (const auto& d : rep.degrees) {
            const std::string at = " in degree " + std::to_string(d.degree);
            if (!d.chain_map) return verdict(false, "chain map" + at);
            if (!d.surjective || !d.generators_hit) return verdict(false, "not surjective" + at);
            if (!d.doubled_match) return verdict(false, "2H(B) = " + d.h_b.doubled().str() + " vs 2H(R) = " +
                                                            d.h_r.doubled().str() + at);
        }
        return std::string("pass");
    });

    std::optional<InvariantQ> q;
    run_check(v, "q_structure", [&] {
        q.emplace(k, lam, opt.truncation, opt.max_m);
        if (auto bad = q->leibniz_check(opt.samples, rng()); bad) return verdict(false, std::to_string(bad) + " Leibniz failures");
        if (!psi_chain_map_check(*q)) return verdict(false, "psi chain map");
        // h_{σ,ω} expands to the coefficient (-1)^{|P∩ω|} at every prime mask P
        for (Face w : lam.row_space_faces()) {
            const SimplicialComplex kw = k.full_subcomplex(w);
            const int d = int(rng() % std::uint64_t(kw.dim() + 2));
            const auto& faces = kw.faces_of_size(d);
            if (faces.empty()) continue;
            const Face s = faces[rng() % faces.size()];
            const QElement e = q->expand(d, q->h_element(s, w));
            if (e.size() != (std::size_t(1) << k.m())) return verdict(false, "h" + face_str(s) + face_str(w) + " support");
            for (const auto& [c, x] : e)
                if (x != ((card(c.primes & w) % 2) ? -1 : 1)) return verdict(false, "h" + face_str(s) + face_str(w));
            for (Face g : lam.kernel_basis())
                if (q_act(g, e) != e) return verdict(false, "h not invariant");
        }
        return std::string("pass");
    });

    run_check(v, "h_product", [&] {
        if (!q) return std::string("skipped: no Q model");
        const auto [checked, bad] = h_product_check(*q, 200);
        return verdict(bad == 0, std::to_string(bad) + " of " + std::to_string(checked));
    });

    run_check(v, "ring_comparison", [&] {
        if (!q) return std::string("skipped: no Q model");
        const auto rep = ring_comparison(StarRing(k, lam), *q);
        for (const auto& p : rep.pairs)
            if (!p.order_two) return verdict(false, p.a + " * " + p.b);
        return "pass (" + std::to_string(rep.pairs.size()) + " pairs, cap " + std::to_string(rep.product_cap) + ")";
    });

    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

inline Json verdict_json(const InstanceVerdict& v, bool timing) {
    Json j;
    j["name"] = v.instance.name;
    j["hash"] = v.hash;
    j["m"] = v.instance.k.m();
    j["n"] = v.instance.lambda.n();
    j["checks"] = v.checks;
    if (!v.cohomology.empty()) j["cohomology"] = groups_json(v.cohomology);
    if (timing) j["seconds"] = v.seconds;
    return j;
}

struct RejectedInput {
    std::string source;
    std::string reason;
};

struct FalsifyReport {
    std::vector<InstanceVerdict> verdicts;  ///< sorted by hash, then name
    std::vector<RejectedInput> rejected_inputs;  ///< files that did not parse
    std::size_t findings() const {
        std::size_t f = 0;
        for (const auto& v : verdicts) f += v.findings.size();
        return f;
    }
    std::size_t rejected() const {
        std::size_t r = 0;
        for (const auto& v : verdicts) r += v.checks.count("validate") && v.checks.at("validate") != "pass";
        return r + rejected_inputs.size();
    }
};

inline FalsifyReport falsify(const std::vector<Instance>& instances, const FalsifyOptions& opt = {},
                             const std::function<void(const InstanceVerdict&)>& progress = {}) {
    FalsifyReport rep;
    rep.verdicts.resize(instances.size());
    std::atomic<std::size_t> next{0};
    std::mutex lock;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < instances.size();) {
            rep.verdicts[i] = check_instance(instances[i], opt);
            if (progress) {
                std::lock_guard<std::mutex> g(lock);
                progress(rep.verdicts[i]);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, opt.threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::stable_sort(rep.verdicts.begin(), rep.verdicts.end(), [](const auto& a, const auto& b) {
        return a.hash != b.hash ? a.hash < b.hash : a.instance.name < b.instance.name;
    });
    return rep;
}

inline Json report_json(const FalsifyReport& rep, const FalsifyOptions& opt, const Json& source) {
    Json j;
    j["tool"] = "rtoric";
    j["version"] = kToolVersion;
    j["source"] = source;
    j["options"] = {{"max_m", opt.max_m}, {"truncation", opt.truncation < 0 ? Json("n+2") : Json(opt.truncation)}};
    Json inst = Json::array(), findings = Json::array();
    for (const auto& v : rep.verdicts) {
        inst.push_back(verdict_json(v, opt.timing));
        for (const auto& f : v.findings)
            findings.push_back({{"hash", v.hash}, {"finding", f}, {"instance", instance_to_json(v.instance)}});
    }
    j["instances"] = inst;
    j["findings"] = findings;
    Json rej = Json::array();
    for (const auto& r : rep.rejected_inputs) rej.push_back({{"source", r.source}, {"reason", r.reason}});
    j["rejected_inputs"] = rej;
    j["summary"] = {{"instances", rep.verdicts.size()}, {"rejected", rep.rejected()}, {"findings", rep.findings()}};
    return j;
}

/// N instances from a seed: polygons with random Λ and stellar chains.
inline std::vector<Instance> generate_instances(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    const Instance rp3 = projective_instance(3);
    const Instance cube{"cross3-cube", cross_polytope(3), cube_lambda(3), std::nullopt};
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t s = rng();
        switch (i % 3) {
        case 0: {
            const unsigned m = 4 + unsigned(rng() % 5);
            std::mt19937_64 r2(s);
            out.push_back({"polygon" + std::to_string(m) + "-s" + std::to_string(s), polygon(m), random_lambda(polygon(m), 2, r2), s});
            break;
        }
        case 1:
            out.push_back(stellar_chain(rp3, 1 + unsigned(rng() % 5), s));
            break;
        default:
            out.push_back(stellar_chain(cube, 1 + unsigned(rng() % 3), s));
            break;
        }
    }
    return out;
}

}  // namespace rtoric
