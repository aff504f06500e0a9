#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "khg/cnf.hpp"
#include "khg/combinatorics.hpp"
#include "khg/embedding.hpp"
#include "khg/error.hpp"
#include "khg/hypergraph.hpp"
#include "khg/sat_backend.hpp"

namespace khg {

struct CoexOptions {
    SatBackend backend = SatBackend::internal();
    std::uint64_t max_embedding_images = 5'000'000; // guard on blocking-clause enumeration
    std::uint64_t brute_max_edge_slots = 24;        // guard on 2^C(n,k) oracle
};

namespace detail {

// Every distinct edge-set image of every injective embedding of a family
// member into the complete k-graph on [n]. Images, not vertex maps:
// automorphisms would otherwise repeat the same clause factorially.
inline std::set<std::vector<std::uint64_t>> forbidden_images(int n, int k,
                                                             const std::vector<Hypergraph>& family,
                                                             std::uint64_t guard) {
    const Hypergraph complete = complete_hypergraph(k, n);
    std::set<std::vector<std::uint64_t>> images;
    for (const auto& f : family) {
        if (f.uniformity() != k) throw_invalid("coex: family member uniformity mismatch");
        if (f.vertex_count() > n) continue; // cannot fit; no copies to block
        // coarse guard on the number of injective maps
        unsigned __int128 maps = 1;
        for (int i = 0; i < f.vertex_count(); ++i) maps *= static_cast<unsigned>(n - i);
        if (maps > guard) throw_guard("coex: embedding enumeration exceeds guard");
        enumerate_embeddings(complete, f, [&](const std::vector<int>& map) {
            std::vector<std::uint64_t> image;
            image.reserve(f.edge_count());
            std::vector<int> img(static_cast<std::size_t>(k));
            for (const auto& e : f.edges()) {
                for (std::size_t i = 0; i < e.size(); ++i) img[i] = map[static_cast<std::size_t>(e[i])];
                std::sort(img.begin(), img.end());
                image.push_back(colex_rank(img));
            }
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            images.insert(std::move(image));
            return true;
        });
    }
    return images;
}

} // namespace detail

// Models "there is an n-vertex, family-free k-graph H with
// delta_{k-1}(H) >= t": one variable per potential edge (colex rank + 1);
// per (k-1)-set an at-least-t cardinality constraint over its n-k+1
// extensions; per forbidden image a blocking clause requiring one absent
// edge.
inline CnfInstance encode_coex_cnf(int n, int k, const std::vector<Hypergraph>& family, int t,
                                   const CoexOptions& opts = {}) {
    if (n < k) throw_invalid("encode_coex_cnf: need n >= k");
    if (t < 0) throw_invalid("encode_coex_cnf: need t >= 0");
    if (t > n - k + 1) throw_invalid("encode_coex_cnf: t exceeds the maximum possible codegree n-k+1");
    const std::uint64_t n_edges = binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    CnfBuilder b(static_cast<int>(n_edges));
    // cardinality constraints
    if (t > 0) {
        for_each_combination(n, k - 1, [&](const std::vector<int>& s) {
            std::vector<int> ext;
            ext.reserve(static_cast<std::size_t>(n - k + 1));
            for (int v = 0; v < n; ++v) {
                if (std::binary_search(s.begin(), s.end(), v)) continue;
                std::vector<int> e = s;
                e.push_back(v);
                std::sort(e.begin(), e.end());
                ext.push_back(static_cast<int>(colex_rank(e)) + 1);
            }
            b.add_at_least(ext, t);
            ++b.instance().n_cardinality_groups;
        });
    }
    // blocking clauses
    const auto images = detail::forbidden_images(n, k, family, opts.max_embedding_images);
    for (const auto& image : images) {
        if (image.empty())
            throw_invalid("encode_coex_cnf: family member with no edges embeds in every graph (no F-free graph exists)");
        std::vector<int> cl;
        cl.reserve(image.size());
        for (std::uint64_t rank : image) cl.push_back(-(static_cast<int>(rank) + 1));
        b.add_clause(std::move(cl));
        ++b.instance().n_blocking_clauses;
    }
    return b.take();
}

struct CoexDecision {
    SolverVerdict verdict;
    std::optional<Hypergraph> witness; // decoded + independently re-verified when SAT
};

// SAT => witness with delta >= t and no family member embedded (both
// re-checked here, never trusted from the solver). UNKNOWN is surfaced,
// never coerced to UNSAT.
inline CoexDecision coex_decision(int n, int k, const std::vector<Hypergraph>& family, int t,
                                  const CoexOptions& opts = {}) {
    CoexDecision out;
    for (const auto& f : family) {
        if (f.uniformity() != k) throw_invalid("coex: family member uniformity mismatch");
        if (f.edge_count() == 0 && f.vertex_count() <= n)
            throw_invalid("coex: family member with no edges embeds in every graph (no F-free graph exists)");
    }
    if (t > n - k + 1) {
        out.verdict.status = SolverVerdict::Status::Unsat;
        out.verdict.backend = "trivial";
        out.verdict.message = "t exceeds the maximum possible codegree n-k+1";
        return out;
    }
    const CnfInstance inst = encode_coex_cnf(n, k, family, t, opts);
    out.verdict = run_backend(inst, opts.backend);
    if (out.verdict.status == SolverVerdict::Status::Sat) {
        std::vector<std::vector<int>> edges;
        for (int v = 1; v <= inst.n_payload_vars; ++v)
            if (out.verdict.model[static_cast<std::size_t>(v)])
                edges.push_back(colex_unrank(static_cast<std::uint64_t>(v - 1), k));
        Hypergraph witness = Hypergraph::create(k, n, std::move(edges));
        if (min_codegree(witness) < t) throw_logic("coex witness fails the codegree bound");
        for (const auto& f : family) {
            const auto emb = find_embedding(witness, f);
            if (emb.status != SearchStatus::None) throw_logic("coex witness contains a forbidden member");
        }
        out.witness = std::move(witness);
    }
    return out;
}

struct CoexResult {
    int t_star = -1;
    Hypergraph witness;
    std::map<int, SolverVerdict::Status> verdicts; // binary-search cache
};

// Largest t with a SAT decision, by binary search over [0, n-k+1].
// UNKNOWN at any probed t is a hard error naming that t.
inline CoexResult coex_exact(int n, int k, const std::vector<Hypergraph>& family,
                             const CoexOptions& opts = {}) {
    CoexResult res;
    std::map<int, CoexDecision> cache;
    auto decide = [&](int t) -> const CoexDecision& {
        auto it = cache.find(t);
        if (it == cache.end()) {
            CoexDecision d = coex_decision(n, k, family, t, opts);
            if (d.verdict.status == SolverVerdict::Status::Unknown)
                throw_backend("coex_exact: backend returned UNKNOWN at t = " + std::to_string(t) + ": " +
                              d.verdict.message);
            it = cache.emplace(t, std::move(d)).first;
        }
        return it->second;
    };
    int lo = 0, hi = n - k + 1;
    if (decide(0).verdict.status != SolverVerdict::Status::Sat)
        throw_logic("coex_exact: t = 0 must be satisfiable (empty graph)");
    while (lo < hi) {
        const int mid = lo + (hi - lo + 1) / 2;
        if (decide(mid).verdict.status == SolverVerdict::Status::Sat)
            lo = mid;
        else
            hi = mid - 1;
    }
    res.t_star = lo;
    res.witness = *decide(lo).witness;
    for (const auto& [t, d] : cache) res.verdicts[t] = d.verdict.status;
    // anti-monotonicity sanity: no SAT above an UNSAT
    int last_sat = -1, first_unsat = n - k + 2;
    for (const auto& [t, s] : res.verdicts) {
        if (s == SolverVerdict::Status::Sat) last_sat = std::max(last_sat, t);
        if (s == SolverVerdict::Status::Unsat) first_unsat = std::min(first_unsat, t);
    }
    if (last_sat >= first_unsat) throw_logic("coex_exact: verdict cache violates anti-monotonicity");
    return res;
}

namespace detail {

// Independent copy detection for the brute-force oracle: plain injective
// assignment enumeration, no shared machinery with the search engine.
inline void naive_images(int n, const Hypergraph& f, std::set<std::vector<std::uint64_t>>& out) {
    if (f.vertex_count() > n) return;
    std::vector<int> map(static_cast<std::size_t>(f.vertex_count()), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    auto rec = [&](auto&& self, int u) -> void {
        if (u == f.vertex_count()) {
            std::vector<std::uint64_t> image;
            std::vector<int> img(static_cast<std::size_t>(f.uniformity()));
            for (const auto& e : f.edges()) {
                for (std::size_t i = 0; i < e.size(); ++i) img[i] = map[static_cast<std::size_t>(e[i])];
                std::sort(img.begin(), img.end());
                image.push_back(colex_rank(img));
            }
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            out.insert(std::move(image));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = true;
            map[static_cast<std::size_t>(u)] = v;
            self(self, u + 1);
            used[static_cast<std::size_t>(v)] = false;
        }
        map[static_cast<std::size_t>(u)] = -1;
    };
    rec(rec, 0);
}

} // namespace detail

// Exhaustive oracle for co-ex(n, family): branch-and-bound over all edge
// subsets, pruning branches that form a forbidden copy or can no longer
// beat the best codegree found. Fixes desk-scale values before the SAT
// path is trusted.
inline int brute_force_coex(int n, int k, const std::vector<Hypergraph>& family,
                            const CoexOptions& opts = {}) {
    if (n < k) throw_invalid("brute_force_coex: need n >= k");
    const std::uint64_t slots = binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    if (slots > opts.brute_max_edge_slots)
        throw_guard("brute_force_coex: C(n,k) = " + std::to_string(slots) + " exceeds guard " +
                    std::to_string(opts.brute_max_edge_slots));
    for (const auto& f : family) {
        if (f.uniformity() != k) throw_invalid("coex: family member uniformity mismatch");
        if (f.edge_count() == 0 && f.vertex_count() <= n)
            throw_invalid("coex: family member with no edges embeds in every graph (no F-free graph exists)");
    }
    const int num_edges = static_cast<int>(slots);
    const auto edge_of_rank = combinations_colex(n, k);

    std::set<std::vector<std::uint64_t>> images;
    for (const auto& f : family) detail::naive_images(n, f, images);
    // per edge rank, the forbidden images (as bit masks) that use it
    std::vector<std::vector<std::uint64_t>> images_at(static_cast<std::size_t>(num_edges));
    for (const auto& image : images) {
        std::uint64_t mask = 0;
        for (std::uint64_t r : image) mask |= std::uint64_t{1} << r;
        for (std::uint64_t r : image) images_at[static_cast<std::size_t>(r)].push_back(mask);
    }

    const int num_subs = static_cast<int>(binom(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k - 1)));
    std::vector<std::vector<int>> subs_of_edge(static_cast<std::size_t>(num_edges));
    for (int e = 0; e < num_edges; ++e) {
        std::vector<int> sub(static_cast<std::size_t>(k - 1));
        const auto& ev = edge_of_rank[static_cast<std::size_t>(e)];
        for (int skip = 0; skip < k; ++skip) {
            std::size_t t = 0;
            for (int i = 0; i < k; ++i)
                if (i != skip) sub[t++] = ev[static_cast<std::size_t>(i)];
            subs_of_edge[static_cast<std::size_t>(e)].push_back(static_cast<int>(colex_rank(sub)));
        }
    }

    std::vector<int> d(static_cast<std::size_t>(num_subs), 0);
    std::vector<int> remaining(static_cast<std::size_t>(num_subs), n - k + 1);
    int best = -1;
    std::uint64_t cur_mask = 0;

    auto upper_bound = [&]() {
        int ub = num_subs == 0 ? 0 : std::numeric_limits<int>::max();
        for (int s = 0; s < num_subs; ++s)
            ub = std::min(ub, d[static_cast<std::size_t>(s)] + remaining[static_cast<std::size_t>(s)]);
        return ub;
    };

    auto dfs = [&](auto&& self, int i) -> void {
        if (upper_bound() <= best) return;
        if (i == num_edges) {
            int delta = std::numeric_limits<int>::max();
            for (int s = 0; s < num_subs; ++s) delta = std::min(delta, d[static_cast<std::size_t>(s)]);
            best = std::max(best, delta);
            return;
        }
        const auto& subs = subs_of_edge[static_cast<std::size_t>(i)];
        for (int s : subs) --remaining[static_cast<std::size_t>(s)];
        // include edge i unless it completes a forbidden image
        bool forms_copy = false;
        const std::uint64_t with_edge = cur_mask | (std::uint64_t{1} << i);
        for (const std::uint64_t img : images_at[static_cast<std::size_t>(i)])
            if ((img & with_edge) == img) {
                forms_copy = true;
                break;
            }
        if (!forms_copy) {
            cur_mask = with_edge;
            for (int s : subs) ++d[static_cast<std::size_t>(s)];
            self(self, i + 1);
            for (int s : subs) --d[static_cast<std::size_t>(s)];
            cur_mask &= ~(std::uint64_t{1} << i);
        }
        // exclude edge i
        self(self, i + 1);
        for (int s : subs) ++remaining[static_cast<std::size_t>(s)];
    };
    dfs(dfs, 0);
    return best;
}

} // namespace khg
