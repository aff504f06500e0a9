#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "khg/bitset.hpp"
#include "khg/error.hpp"
#include "khg/hypergraph.hpp"

namespace khg {

enum class SearchStatus { Found, None, Budget };

struct EmbedOptions {
    std::optional<std::uint64_t> node_budget; // nodes = candidate assignments tried
};

struct EmbedResult {
    SearchStatus status = SearchStatus::None;
    Embedding embedding;
    std::uint64_t nodes = 0;
};

namespace detail {

// max over (k-1)-subsets containing v of the subset's codegree; 0 for
// vertices on no edge. An embedding can only map a vertex onto a host
// vertex whose value is at least as large.
inline std::vector<int> max_codegree_at_vertex(const Hypergraph& h) {
    std::map<std::vector<int>, int> cod;
    std::vector<int> sub(static_cast<std::size_t>(h.uniformity() - 1));
    for (const auto& e : h.edges()) {
        for (int skip = 0; skip < h.uniformity(); ++skip) {
            std::size_t t = 0;
            for (int i = 0; i < h.uniformity(); ++i)
                if (i != skip) sub[t++] = e[static_cast<std::size_t>(i)];
            ++cod[sub];
        }
    }
    std::vector<int> out(static_cast<std::size_t>(h.vertex_count()), 0);
    for (const auto& [s, c] : cod)
        for (int v : s) out[static_cast<std::size_t>(v)] = std::max(out[static_cast<std::size_t>(v)], c);
    return out;
}

class EmbedSearcher {
public:
    EmbedSearcher(const Hypergraph& host, const Hypergraph& pattern, const EmbedOptions& opts)
        : host_(host), pattern_(pattern), opts_(opts) {
        hn_ = host.vertex_count();
        pn_ = pattern.vertex_count();
        host_edge_bits_.reserve(host.edge_count());
        for (const auto& e : host.edges()) {
            Bitset b(hn_);
            for (int v : e) b.set(v);
            host_edge_bits_.push_back(std::move(b));
        }
        pat_incident_.assign(static_cast<std::size_t>(pn_), {});
        for (std::size_t ei = 0; ei < pattern.edge_count(); ++ei)
            for (int v : pattern.edges()[ei]) pat_incident_[static_cast<std::size_t>(v)].push_back(static_cast<int>(ei));
        build_order();
        build_base_domains();
    }

    // Visits every embedding (as pattern->host maps) in deterministic
    // order. fn returns false to stop. Returns None on full exhaustion,
    // Found if stopped by fn, Budget if the node budget ran out.
    template <typename Fn>
    SearchStatus enumerate(Fn&& fn, std::uint64_t* nodes_out = nullptr) {
        nodes_ = 0;
        stopped_ = false;
        budget_hit_ = false;
        if (pn_ > hn_) {
            if (nodes_out) *nodes_out = 0;
            return SearchStatus::None;
        }
        map_.assign(static_cast<std::size_t>(pn_), -1);
        used_ = Bitset(hn_);
        unmapped_count_.assign(pattern_.edge_count(), 0);
        for (std::size_t ei = 0; ei < pattern_.edge_count(); ++ei)
            unmapped_count_[ei] = static_cast<int>(pattern_.edges()[ei].size());
        dfs(0, base_domains_, fn);
        if (nodes_out) *nodes_out = nodes_;
        if (stopped_) return SearchStatus::Found;
        if (budget_hit_) return SearchStatus::Budget;
        return SearchStatus::None;
    }

private:
    // Constraint-degree order: highest-degree vertex first, then greedily
    // the vertex sharing the most edges with the placed prefix.
    void build_order() {
        auto deg = pattern_.degrees();
        order_.clear();
        std::vector<bool> placed(static_cast<std::size_t>(pn_), false);
        for (int step = 0; step < pn_; ++step) {
            int best = -1;
            long best_conn = -1, best_deg = -1;
            for (int u = 0; u < pn_; ++u) {
                if (placed[static_cast<std::size_t>(u)]) continue;
                long conn = 0;
                for (int ei : pat_incident_[static_cast<std::size_t>(u)])
                    for (int w : pattern_.edges()[static_cast<std::size_t>(ei)])
                        if (placed[static_cast<std::size_t>(w)]) {
                            ++conn;
                            break;
                        }
                const long d = deg[static_cast<std::size_t>(u)];
                if (conn > best_conn || (conn == best_conn && d > best_deg)) {
                    best = u;
                    best_conn = conn;
                    best_deg = d;
                }
            }
            order_.push_back(best);
            placed[static_cast<std::size_t>(best)] = true;
        }
    }

    void build_base_domains() {
        const auto host_deg = host_.degrees();
        const auto pat_deg = pattern_.degrees();
        const auto host_mc = max_codegree_at_vertex(host_);
        const auto pat_mc = max_codegree_at_vertex(pattern_);
        base_domains_.assign(static_cast<std::size_t>(pn_), Bitset(hn_));
        for (int u = 0; u < pn_; ++u)
            for (int v = 0; v < hn_; ++v)
                if (host_deg[static_cast<std::size_t>(v)] >= pat_deg[static_cast<std::size_t>(u)] &&
                    host_mc[static_cast<std::size_t>(v)] >= pat_mc[static_cast<std::size_t>(u)])
                    base_domains_[static_cast<std::size_t>(u)].set(v);
    }

    // Host vertices w with image ∪ {w} an edge; image has k-1 vertices.
    Bitset neighbourhood_mask(const std::vector<int>& image_sorted) {
        auto it = neigh_cache_.find(image_sorted);
        if (it != neigh_cache_.end()) return it->second;
        Bitset key(hn_);
        for (int v : image_sorted) key.set(v);
        Bitset out(hn_);
        for (const auto& hb : host_edge_bits_) {
            if (key.subset_of(hb)) {
                Bitset rest = hb;
                rest.and_not(key);
                out |= rest;
            }
        }
        neigh_cache_.emplace(image_sorted, out);
        return out;
    }

    template <typename Fn>
    void dfs(int depth, const std::vector<Bitset>& domains, Fn&& fn) {
        if (stopped_ || budget_hit_) return;
        if (depth == pn_) {
            if (!fn(static_cast<const std::vector<int>&>(map_))) stopped_ = true;
            return;
        }
        const int u = order_[static_cast<std::size_t>(depth)];
        Bitset cand = domains[static_cast<std::size_t>(u)];
        cand.and_not(used_);
        for (int v = cand.next_set(0); v >= 0; v = cand.next_set(v + 1)) {
            if (opts_.node_budget && nodes_ >= *opts_.node_budget) {
                budget_hit_ = true;
                return;
            }
            ++nodes_;
            if (!try_assign(u, v, domains, fn)) continue;
            if (stopped_ || budget_hit_) return;
        }
    }

    template <typename Fn>
    bool try_assign(int u, int v, const std::vector<Bitset>& domains, Fn&& fn) {
        map_[static_cast<std::size_t>(u)] = v;
        used_.set(v);
        for (int ei : pat_incident_[static_cast<std::size_t>(u)]) --unmapped_count_[static_cast<std::size_t>(ei)];

        bool ok = true;
        // fully mapped edges must land on host edges
        std::vector<int> img;
        for (int ei : pat_incident_[static_cast<std::size_t>(u)]) {
            if (unmapped_count_[static_cast<std::size_t>(ei)] != 0) continue;
            img.clear();
            for (int w : pattern_.edges()[static_cast<std::size_t>(ei)]) img.push_back(map_[static_cast<std::size_t>(w)]);
            std::sort(img.begin(), img.end());
            if (!host_.has_edge(img)) {
                ok = false;
                break;
            }
        }

        std::vector<Bitset> next;
        if (ok) {
            next = domains;
            for (int w = 0; w < pn_; ++w)
                if (map_[static_cast<std::size_t>(w)] < 0) next[static_cast<std::size_t>(w)].reset(v);
            // narrow the domain of the single missing vertex of each edge
            for (int ei : pat_incident_[static_cast<std::size_t>(u)]) {
                if (unmapped_count_[static_cast<std::size_t>(ei)] != 1) continue;
                int missing = -1;
                img.clear();
                for (int w : pattern_.edges()[static_cast<std::size_t>(ei)]) {
                    if (map_[static_cast<std::size_t>(w)] < 0)
                        missing = w;
                    else
                        img.push_back(map_[static_cast<std::size_t>(w)]);
                }
                std::sort(img.begin(), img.end());
                Bitset nb = neighbourhood_mask(img);
                next[static_cast<std::size_t>(missing)] &= nb;
                if (next[static_cast<std::size_t>(missing)].none()) {
                    ok = false;
                    break;
                }
            }
        }

        // every partially mapped edge still needs a live host edge:
        // mapped part contained, free part unused and inside the union of
        // the missing vertices' domains
        if (ok) {
            for (std::size_t ei = 0; ei < pattern_.edge_count() && ok; ++ei) {
                const int um = unmapped_count_[ei];
                if (um < 2) continue;
                Bitset mapped_img(hn_);
                Bitset dom_union(hn_);
                for (int w : pattern_.edges()[ei]) {
                    const int mv = map_[static_cast<std::size_t>(w)];
                    if (mv >= 0)
                        mapped_img.set(mv);
                    else
                        dom_union |= next[static_cast<std::size_t>(w)];
                }
                bool supported = false;
                for (const auto& hb : host_edge_bits_) {
                    if (!mapped_img.subset_of(hb)) continue;
                    Bitset free = hb;
                    free.and_not(mapped_img);
                    if (free.intersects(used_)) continue;
                    if (free.subset_of(dom_union)) {
                        supported = true;
                        break;
                    }
                }
                if (!supported) ok = false;
            }
        }

        if (ok) dfs_next(u, next, fn);

        for (int ei : pat_incident_[static_cast<std::size_t>(u)]) ++unmapped_count_[static_cast<std::size_t>(ei)];
        used_.reset(v);
        map_[static_cast<std::size_t>(u)] = -1;
        return ok;
    }

    template <typename Fn>
    void dfs_next(int u, const std::vector<Bitset>& next, Fn&& fn) {
        int depth = 0;
        while (order_[static_cast<std::size_t>(depth)] != u) ++depth;
        dfs(depth + 1, next, fn);
    }

    const Hypergraph& host_;
    const Hypergraph& pattern_;
    EmbedOptions opts_;
    int hn_ = 0, pn_ = 0;
    std::vector<Bitset> host_edge_bits_;
    std::vector<std::vector<int>> pat_incident_;
    std::vector<int> order_;
    std::vector<Bitset> base_domains_;
    std::map<std::vector<int>, Bitset> neigh_cache_;

    std::vector<int> map_;
    Bitset used_;
    std::vector<int> unmapped_count_;
    std::uint64_t nodes_ = 0;
    bool stopped_ = false;
    bool budget_hit_ = false;
};

} // namespace detail

// Decides pattern ⊆ host (subgraph sense) and returns a verified
// embedding. A spent node budget is reported as Budget, never as None.
inline EmbedResult find_embedding(const Hypergraph& host, const Hypergraph& pattern,
                                  const EmbedOptions& opts = {}) {
    if (host.uniformity() != pattern.uniformity())
        throw_invalid("find_embedding: uniformity mismatch");
    detail::EmbedSearcher searcher(host, pattern, opts);
    EmbedResult res;
    std::vector<int> found;
    const SearchStatus st = searcher.enumerate(
        [&](const std::vector<int>& m) {
            found = m;
            return false; // stop at first
        },
        &res.nodes);
    if (st == SearchStatus::Found) {
        res.status = SearchStatus::Found;
        res.embedding.map = found;
        const auto check = verify_embedding(host, pattern, found);
        if (!check.ok) throw_logic("find_embedding produced an invalid embedding");
    } else {
        res.status = st;
    }
    return res;
}

// Enumerates all embeddings; fn(map) -> bool (false stops early).
// Returns None when the search space was exhausted.
template <typename Fn>
inline SearchStatus enumerate_embeddings(const Hypergraph& host, const Hypergraph& pattern, Fn&& fn,
                                         const EmbedOptions& opts = {}) {
    if (host.uniformity() != pattern.uniformity())
        throw_invalid("enumerate_embeddings: uniformity mismatch");
    detail::EmbedSearcher searcher(host, pattern, opts);
    return searcher.enumerate(fn);
}

} // namespace khg
