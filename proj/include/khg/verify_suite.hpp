#pragma once

#include <chrono>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "khg/analysis.hpp"
#include "khg/coex.hpp"
#include "khg/colouring.hpp"
#include "khg/constructions.hpp"
#include "khg/containment.hpp"
#include "khg/embedding.hpp"
#include "khg/extension.hpp"
#include "khg/greedy_embed.hpp"
#include "khg/isomorphism.hpp"
#include "khg/khg_io.hpp"
#include "khg/sat_backend.hpp"

namespace khg {

// Bundled end-to-end claim checks, shared by the `khg verify` subcommand
// and the acceptance test binary. Each check prints one PASS/FAIL line.

struct VerifyOptions {
    bool full = false;           // exercise the external SAT backend
    std::string sat_cmd;         // external solver command (full suite)
    std::string cli_path;        // khg binary, for byte-determinism checks
    bool corrupt_fr = false;     // test hook: drop the last edge of F^3_2
    std::set<std::string> only;  // run only these checks when non-empty
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace verify_detail {

// The hook exists so the suite can be shown to catch a corrupted build.
inline Hypergraph suite_fr32(bool corrupt) {
    Hypergraph h = gen_fr(3, 2);
    if (!corrupt) return h;
    auto edges = h.edges();
    edges.pop_back();
    return Hypergraph::create(3, h.vertex_count(), std::move(edges));
}

struct Ctx {
    const VerifyOptions& opts;
    std::vector<CheckResult>& out;

    bool enabled(const std::string& name) const {
        return opts.only.empty() || opts.only.count(name) > 0;
    }

    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        if (!enabled(name)) return;
        CheckResult r;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            std::string detail;
            r.pass = fn(detail);
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
};

inline bool expect(bool cond, const std::string& msg, std::string& detail) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

// ---- criterion 1: construction counts ------------------------------------
inline bool check_construction_counts(const VerifyOptions& opts, std::string& detail) {
    bool ok = true;
    const auto f31 = gen_fr(3, 1);
    ok &= expect(f31.vertex_count() == 3 && f31.edge_count() == 1, "fr(3,1) counts", detail);
    const auto f32 = suite_fr32(opts.corrupt_fr);
    ok &= expect(f32.vertex_count() == 12 && f32.edge_count() == 12,
                 "fr(3,2) expected 12 vertices / 12 edges, got " + std::to_string(f32.vertex_count()) +
                     "/" + std::to_string(f32.edge_count()),
                 detail);
    const auto f33 = gen_fr(3, 3);
    ok &= expect(f33.vertex_count() == 76 && f33.edge_count() == 144, "fr(3,3) counts", detail);
    const auto f42 = gen_fr(4, 2);
    ok &= expect(f42.vertex_count() == 45 && f42.edge_count() == 50, "fr(4,2) counts", detail);
    for (int t = 1; t <= 8; ++t) {
        const auto k = gen_ktt(t, 3);
        const std::uint64_t want = 2ULL * t * binom(t, 2);
        ok &= expect(k.edge_count() == want, "ktt(" + std::to_string(t) + ",3) edge count", detail);
    }
    // extension members obey |E(F)| + r*t
    const Hypergraph edge3 = complete_hypergraph(3, 3);
    {
        ExtensionFamily fam(edge3, 2, 1);
        fam.for_each([&](std::uint64_t, const Hypergraph& m) {
            ok &= expect(m.edge_count() == 1 + fam.r() * 1 && m.vertex_count() == 3 + static_cast<int>(fam.r()),
                         "edge(2,1) member counts", detail);
            return true;
        });
    }
    {
        ExtensionFamily fam(complete_hypergraph(3, 4), 2, 2);
        const auto m0 = fam.member(0);
        ok &= expect(m0.edge_count() == 4 + fam.r() * 2, "K4(2,2) member edge count", detail);
    }
    return ok;
}

// ---- criterion 2: G_{a,b,n} codegree bounds -------------------------------
inline bool check_gabn_bounds(const VerifyOptions&, std::string& detail) {
    const std::vector<std::pair<int, int>> abs = {{2, 1}, {3, 1}, {3, 2}, {4, 3}};
    for (const auto& [a, b] : abs) {
        for (int n = 2 * a; n <= 30; ++n) {
            const auto g = gen_gabn({a, b, n, 3});
            const int delta = min_codegree(g);
            if (static_cast<long long>(delta) * a < static_cast<long long>(b) * n - a * b - 2 * a) {
                detail = "codegree bound fails for a=" + std::to_string(a) + " b=" + std::to_string(b) +
                         " n=" + std::to_string(n) + " (delta=" + std::to_string(delta) + ")";
                return false;
            }
            const auto part_of = even_partition(n, a);
            std::vector<std::vector<int>> parts(static_cast<std::size_t>(a));
            for (int v = 0; v < n; ++v) parts[static_cast<std::size_t>(part_of[static_cast<std::size_t>(v)])].push_back(v);
            bool ok_pairs = true;
            for_each_combination(n, 2, [&](const std::vector<int>& s) -> bool {
                const auto nb = neighbourhood(g, s);
                auto covers_part = [&](int p) {
                    for (int v : parts[static_cast<std::size_t>(p)]) {
                        if (v == s[0] || v == s[1]) continue;
                        if (!std::binary_search(nb.begin(), nb.end(), v)) return false;
                    }
                    return true;
                };
                const int p0 = part_of[static_cast<std::size_t>(s[0])], p1 = part_of[static_cast<std::size_t>(s[1])];
                if (p0 == p1) {
                    // exactly the forward window parts
                    for (int j = 1; j <= b; ++j)
                        if (!covers_part((p0 + j) % a)) {
                            ok_pairs = false;
                            return false;
                        }
                } else {
                    int covered = 0;
                    for (int p = 0; p < a; ++p)
                        if (covers_part(p)) ++covered;
                    if (covered < b) {
                        ok_pairs = false;
                        return false;
                    }
                }
                return true;
            });
            if (!ok_pairs) {
                detail = "neighbourhood superset fails for a=" + std::to_string(a) + " b=" + std::to_string(b) +
                         " n=" + std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

// ---- criterion 3: colourability -------------------------------------------
inline bool check_colourability(const VerifyOptions& opts, std::string& detail) {
    bool ok = true;
    const auto f32 = suite_fr32(opts.corrupt_fr);
    const auto brute2 = colour(f32, 2, ColourBackend::Brute);
    ok &= expect(brute2.status == ColourOutcome::Status::NotColourable, "fr(3,2) should be brute-UNSAT at r=2",
                 detail);
    const auto sat2 = colour(f32, 2, ColourBackend::Sat);
    ok &= expect(sat2.status == ColourOutcome::Status::NotColourable, "fr(3,2) should be sat-UNSAT at r=2", detail);

    ColourOptions copts;
    if (opts.full) copts.sat_backend = SatBackend::external(opts.sat_cmd);
    const auto sat33 = colour(gen_fr(3, 3), 3, ColourBackend::Sat, copts);
    ok &= expect(sat33.status == ColourOutcome::Status::NotColourable, "fr(3,3) should be UNSAT at r=3", detail);

    const auto b3 = colour(f32, 3, ColourBackend::Brute);
    const auto s3 = colour(f32, 3, ColourBackend::Sat);
    ok &= expect(b3.status == s3.status, "fr(3,2) r=3: brute and sat disagree", detail);
    if (b3.status == ColourOutcome::Status::Colourable)
        ok &= expect(valid_colouring(f32, b3.colouring.part, 3) && valid_colouring(f32, s3.colouring.part, 3),
                     "fr(3,2) r=3 certificates invalid", detail);
    return ok;
}

// ---- criterion 4: freeness ------------------------------------------------
inline bool check_freeness(const VerifyOptions&, std::string& detail) {
    bool ok = true;
    const auto f32 = gen_fr(3, 2);
    for (int n : {12, 13}) {
        const auto r = find_embedding(gen_rpartite(n, 2, 3), f32);
        ok &= expect(r.status == SearchStatus::None,
                     "rpartite(" + std::to_string(n) + ",2,3) must be F^3_2-free by exhaustion", detail);
    }
    const auto host = gen_rpartite(8, 2, 3);
    const auto k4 = complete_hypergraph(3, 4);
    const auto r = find_embedding(host, k4);
    ok &= expect(r.status == SearchStatus::Found, "K_4^(3) must embed into rpartite(8,2,3)", detail);
    if (r.status == SearchStatus::Found)
        ok &= expect(verify_embedding(host, k4, r.embedding.map).ok, "positive control certificate invalid", detail);
    return ok;
}

// ---- criterion 5: extension blocking ---------------------------------------
inline bool check_extension_blocking(const VerifyOptions&, std::string& detail) {
    bool ok = true;
    const auto host = gen_gabn({2, 1, 12, 3});
    const auto k4 = complete_hypergraph(3, 4);
    ok &= expect(find_embedding(host, k4).status == SearchStatus::Found, "K_4^(3) should embed into gabn(2,1,12)",
                 detail);
    const auto blocked = contains_extension_member(host, k4, 2, 2);
    ok &= expect(blocked.status == SearchStatus::None, "gabn(2,1,12) must be K4(2,2)-extension-free", detail);

    const auto big = complete_hypergraph(3, 10);
    const auto edge3 = complete_hypergraph(3, 3);
    const auto found = contains_extension_member(big, edge3, 2, 1);
    ok &= expect(found.status == SearchStatus::Found, "complete K10 must contain an edge(2,1) member", detail);
    if (found.status == SearchStatus::Found) {
        // independent re-verification: rebuild the member and check edges
        const auto& cert = found.certificate;
        std::vector<std::vector<int>> P;
        for (const auto& linked : cert.linked_sets)
            P.push_back({linked.begin(), linked.begin() + 1});
        const auto member = extension_member(make_extension_spec(edge3, 2, 1, P));
        std::vector<int> full = cert.base_embedding.map;
        full.insert(full.end(), cert.chosen_vertex.begin(), cert.chosen_vertex.end());
        ok &= expect(verify_embedding(big, member, full).ok, "containment certificate failed re-verification",
                     detail);
    }
    return ok;
}

// ---- criterion 6: solver oracle equivalence --------------------------------
inline bool check_coex_equivalence(const VerifyOptions& opts, std::string& detail) {
    const Hypergraph edge3 = complete_hypergraph(3, 3);
    const Hypergraph k4 = complete_hypergraph(3, 4);
    const Hypergraph k4m = Hypergraph::create(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
    const std::vector<std::pair<std::string, Hypergraph>> families = {
        {"edge", edge3}, {"K4", k4}, {"K4-", k4m}};
    bool ok = true;
    for (int n = 4; n <= 6; ++n) {
        for (const auto& [fname, f] : families) {
            const std::vector<Hypergraph> fam = {f};
            const int oracle = brute_force_coex(n, 3, fam);
            CoexOptions internal_opts;
            const CoexResult ri = coex_exact(n, 3, fam, internal_opts);
            ok &= expect(ri.t_star == oracle,
                         "internal coex(" + std::to_string(n) + "," + fname + ") = " +
                             std::to_string(ri.t_star) + " != oracle " + std::to_string(oracle),
                         detail);
            ok &= expect(min_codegree(ri.witness) >= ri.t_star &&
                             find_embedding(ri.witness, f).status == SearchStatus::None,
                         "internal witness fails re-verification", detail);
            if (opts.full) {
                CoexOptions ext_opts;
                ext_opts.backend = SatBackend::external(opts.sat_cmd);
                const CoexResult re = coex_exact(n, 3, fam, ext_opts);
                ok &= expect(re.t_star == oracle,
                             "external coex(" + std::to_string(n) + "," + fname + ") = " +
                                 std::to_string(re.t_star) + " != oracle " + std::to_string(oracle),
                             detail);
                ok &= expect(min_codegree(re.witness) >= re.t_star &&
                                 find_embedding(re.witness, f).status == SearchStatus::None,
                             "external witness fails re-verification", detail);
            }
            if (!ok) return false;
        }
    }
    return ok;
}

// ---- criterion 7: closed-form parameters -----------------------------------
inline bool check_formulas(const VerifyOptions&, std::string& detail) {
    bool ok = true;
    ok &= expect(std::abs(compute_rho(3, 2) - std::pow(2.0, -1.5)) <= 1e-12, "rho(3,2) != 2^{-3/2}", detail);
    for (int k = 3; k <= 5; ++k)
        for (int ell = k - 1; ell <= 10; ++ell) {
            const double rho = compute_rho(k, ell);
            ok &= expect(rho < 0.5, "rho(" + std::to_string(k) + "," + std::to_string(ell) + ") >= 1/2", detail);
            const auto np = nonprincipality_params(k, ell);
            ok &= expect(np.epsilon > 0.0 && std::abs(np.epsilon - (0.5 - rho) / 6.0) <= 1e-15,
                         "epsilon formula mismatch", detail);
        }
    for (double delta : {0.25, 0.5, 1.0}) {
        for (int k : {3, 4}) {
            const int M = compute_M(delta, k);
            ok &= expect(compute_M_conditions(M, delta, k), "conditions fail at M", detail);
            ok &= expect(!compute_M_conditions(M - 1, delta, k), "conditions should fail at M-1", detail);
            for (int i = 1; i <= 100; ++i)
                ok &= expect(compute_M_conditions(M + i, delta, k, false),
                             "inequalities fail beyond M at m=M+" + std::to_string(i), detail);
            ok &= expect(static_cast<double>(M) >= 2.0 * (k - 1) / delta - 1e-12, "M below 2(k-1)/delta", detail);
        }
    }
    return ok;
}

// ---- criterion 8: greedy embedders -----------------------------------------
inline std::vector<Hypergraph> greedy_agreement_corpus() {
    std::vector<Hypergraph> hosts;
    for (int n = 12; n <= 15; ++n) hosts.push_back(complete_hypergraph(3, n));
    for (int n = 12; n <= 15; ++n) hosts.push_back(empty_hypergraph(3, n));
    for (int n = 12; n <= 15; ++n) hosts.push_back(gen_rpartite(n, 2, 3));
    for (int n = 12; n <= 15; ++n) hosts.push_back(gen_gabn({2, 1, n, 3}));
    hosts.push_back(gen_ktt(6, 3));
    hosts.push_back(gen_ktt(7, 3));
    hosts.push_back(gen_fr(3, 2));
    {
        auto edges = complete_hypergraph(3, 12).edges();
        edges.erase(edges.begin()); // drop {0,1,2}
        hosts.push_back(Hypergraph::create(3, 12, std::move(edges)));
    }
    return hosts;
}

inline bool check_greedy_embedders(const VerifyOptions&, std::string& detail) {
    bool ok = true;
    const auto k20 = complete_hypergraph(3, 20);
    const auto g1 = greedy_embed_f2(k20);
    ok &= expect(g1.found, "greedy_embed_f2 should succeed on complete K20", detail);
    if (g1.found)
        ok &= expect(verify_embedding(k20, gen_fr(3, 2), g1.embedding.map).ok, "greedy K20 certificate invalid",
                     detail);
    const auto g2 = greedy_embed_f2(gen_rpartite(20, 2, 3));
    ok &= expect(!g2.found, "greedy_embed_f2 should fail on rpartite(20,2,3)", detail);

    const auto fr2 = gen_fr(3, 2);
    const auto hosts = greedy_agreement_corpus();
    for (std::size_t i = 0; i < hosts.size(); ++i) {
        const auto rec = embed_fr_recursive(hosts[i], 2);
        const auto exact = find_embedding(hosts[i], fr2);
        if (exact.status == SearchStatus::Budget) {
            detail = "corpus host " + std::to_string(i) + ": exhaustive search hit budget";
            return false;
        }
        const bool exact_found = exact.status == SearchStatus::Found;
        ok &= expect(rec.found == exact_found,
                     "corpus host " + std::to_string(i) + ": recursive=" + std::to_string(rec.found) +
                         " exhaustive=" + std::to_string(exact_found),
                     detail);
    }
    return ok;
}

// ---- criterion 9: estimator equivalence ------------------------------------
inline bool check_estimator(const VerifyOptions&, std::string& detail) {
    struct Case {
        Hypergraph g;
        int m;
        double alpha;
    };
    const std::vector<Case> cases = {
        {complete_hypergraph(3, 8), 5, 0.4},
        {empty_hypergraph(3, 8), 5, 0.1},
        {gen_gabn({2, 1, 8, 3}), 5, 0.3},
        {gen_gabn({2, 1, 10, 3}), 5, 0.3},
        {gen_gabn({3, 2, 9, 3}), 5, 0.3},
        {gen_rpartite(9, 2, 3), 5, 0.3},
        {gen_rpartite(10, 2, 3), 6, 0.3},
        {gen_ktt(4, 3), 5, 0.25},
        {gen_ktt(5, 3), 6, 0.3},
        {gen_fr(3, 2), 5, 0.1},
    };
    const std::uint64_t trials = 100'000, seed = 2026;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const auto exact = sample_dense_msets(c.g, c.m, c.alpha, 1, seed, SampleMode::Exact);
        const auto sampled = sample_dense_msets(c.g, c.m, c.alpha, trials, seed, SampleMode::Sampled);
        const double diff = std::abs(exact.fraction - sampled.fraction);
        if (diff > 3.0 * sampled.stderr_est) {
            detail = "case " + std::to_string(i) + ": |" + format_g10(exact.fraction) + " - " +
                     format_g10(sampled.fraction) + "| > 3 stderr (" + format_g10(sampled.stderr_est) + ")";
            return false;
        }
    }
    return true;
}

// ---- criterion 10: round-trip and determinism -------------------------------
inline bool check_roundtrip_determinism(const VerifyOptions& opts, std::string& detail) {
    bool ok = true;
    std::vector<Hypergraph> corpus = greedy_agreement_corpus();
    corpus.push_back(gen_fr(4, 2));
    corpus.push_back(gen_gabn({4, 3, 17, 4}));
    corpus.push_back(gen_ktt(4, 4));
    corpus.push_back(empty_hypergraph(3, 0));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& h = corpus[i];
        if (!(parse_khg(write_khg(h)) == h)) {
            detail = "round-trip failed on corpus graph " + std::to_string(i);
            return false;
        }
    }
    if (opts.cli_path.empty()) {
        detail = "no CLI path supplied for the determinism check";
        return false;
    }
    std::string tmp = (std::filesystem::temp_directory_path() / "khg_verify_XXXXXX").string();
    {
        const int fd = mkstemp(tmp.data());
        if (fd < 0) {
            detail = "cannot create temp file";
            return false;
        }
        close(fd);
        save_khg_file(gen_gabn({2, 1, 10, 3}), tmp);
    }
    const std::vector<std::vector<std::string>> invocations = {
        {opts.cli_path, "gen", "fr", "--k", "3", "--r", "2"},
        {opts.cli_path, "params", "rho", "--k", "3", "--ell", "2"},
        {opts.cli_path, "sample", "--input", tmp, "--m", "5", "--alpha", "0.3", "--trials", "500", "--seed",
         "7", "--mode", "sampled"},
    };
    for (const auto& argv : invocations) {
        const auto r1 = run_process(argv, 60.0);
        const auto r2 = run_process(argv, 60.0);
        if (!r1.started || !r2.started || !r1.exited || !r2.exited || r1.exit_code != 0 ||
            r2.exit_code != 0) {
            detail = "CLI invocation failed: " + argv[1];
            std::filesystem::remove(tmp);
            return false;
        }
        if (r1.out != r2.out) {
            detail = "CLI output not byte-identical for: " + argv[1];
            std::filesystem::remove(tmp);
            return false;
        }
    }
    std::filesystem::remove(tmp);
    // generated file content is canonical
    const auto r = run_process({opts.cli_path, "gen", "fr", "--k", "3", "--r", "2"}, 60.0);
    ok &= expect(r.out == write_khg(gen_fr(3, 2)), "CLI gen output differs from canonical serialization", detail);
    return ok;
}

} // namespace verify_detail

inline std::vector<CheckResult> run_verify_suite(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    verify_detail::Ctx ctx{opts, out};
    ctx.run("construction_counts", [&](std::string& d) { return verify_detail::check_construction_counts(opts, d); });
    ctx.run("gabn_codegree_bounds", [&](std::string& d) { return verify_detail::check_gabn_bounds(opts, d); });
    ctx.run("colourability", [&](std::string& d) { return verify_detail::check_colourability(opts, d); });
    ctx.run("freeness", [&](std::string& d) { return verify_detail::check_freeness(opts, d); });
    ctx.run("extension_blocking", [&](std::string& d) { return verify_detail::check_extension_blocking(opts, d); });
    ctx.run("coex_oracle_equivalence", [&](std::string& d) { return verify_detail::check_coex_equivalence(opts, d); });
    ctx.run("formulas", [&](std::string& d) { return verify_detail::check_formulas(opts, d); });
    ctx.run("greedy_embedders", [&](std::string& d) { return verify_detail::check_greedy_embedders(opts, d); });
    ctx.run("estimator_equivalence", [&](std::string& d) { return verify_detail::check_estimator(opts, d); });
    ctx.run("roundtrip_determinism",
            [&](std::string& d) { return verify_detail::check_roundtrip_determinism(opts, d); });
    return out;
}

} // namespace khg
