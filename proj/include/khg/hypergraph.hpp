#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "khg/combinatorics.hpp"
#include "khg/error.hpp"

namespace khg {

// k-uniform hypergraph on vertices 0..n-1. Immutable after construction:
// edges are sorted tuples, the edge list is sorted lexicographically, and
// every operation below is a pure function of its inputs.
class Hypergraph {
public:
    Hypergraph() : k_(2), n_(0) {}

    // Canonicalizing factory. Throws InvalidArgument on wrong arity,
    // out-of-range or repeated vertices, or duplicate edges.
    static Hypergraph create(int k, int n, std::vector<std::vector<int>> edges) {
        if (k < 2) throw_invalid("uniformity k must be >= 2");
        if (n < 0) throw_invalid("vertex count must be >= 0");
        for (auto& e : edges) {
            if (static_cast<int>(e.size()) != k)
                throw_invalid("edge arity " + std::to_string(e.size()) + " != k = " + std::to_string(k));
            std::sort(e.begin(), e.end());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] < 0 || e[i] >= n)
                    throw_invalid("vertex " + std::to_string(e[i]) + " out of range [0," + std::to_string(n) + ")");
                if (i > 0 && e[i] == e[i - 1])
                    throw_invalid("repeated vertex " + std::to_string(e[i]) + " within an edge");
            }
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i] == edges[i - 1]) throw_invalid("duplicate edge after canonicalization");
        Hypergraph h;
        h.k_ = k;
        h.n_ = n;
        h.edges_ = std::move(edges);
        h.build_masks();
        return h;
    }

    int uniformity() const { return k_; }
    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::vector<int>>& edges() const { return edges_; }

    // Per-edge bit vectors, available when n <= 64 (empty otherwise).
    bool has_masks() const { return n_ <= 64; }
    const std::vector<std::uint64_t>& edge_masks() const { return masks_; }

    bool has_edge(const std::vector<int>& sorted_edge) const {
        return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
    }

    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<std::size_t>(n_), 0);
        for (const auto& e : edges_)
            for (int v : e) ++d[static_cast<std::size_t>(v)];
        return d;
    }

    bool operator==(const Hypergraph& o) const {
        return k_ == o.k_ && n_ == o.n_ && edges_ == o.edges_;
    }

private:
    void build_masks() {
        masks_.clear();
        if (n_ > 64) return;
        masks_.reserve(edges_.size());
        for (const auto& e : edges_) {
            std::uint64_t m = 0;
            for (int v : e) m |= 1ULL << v;
            masks_.push_back(m);
        }
    }

    int k_;
    int n_;
    std::vector<std::vector<int>> edges_;
    std::vector<std::uint64_t> masks_;
};

inline std::uint64_t vertex_set_mask(const std::vector<int>& vs) {
    std::uint64_t m = 0;
    for (int v : vs) m |= 1ULL << v;
    return m;
}

// Codegrees of all (k-1)-subsets. counts is indexed by colex rank and is
// materialized eagerly when C(n,k-1) fits the cap; for larger graphs only
// the minimum and its witness are kept and d() falls back to an edge scan.
struct CodegreeProfile {
    int k = 0;
    int n = 0;
    bool materialized = false;
    std::vector<int> counts; // by colex rank of the (k-1)-subset
    int min_value = 0;
    std::vector<int> witness; // first (in colex order) subset attaining min

    int d(const std::vector<int>& subset, const Hypergraph& h) const {
        if (materialized) return counts[static_cast<std::size_t>(colex_rank(subset))];
        int c = 0;
        for (const auto& e : h.edges())
            if (std::includes(e.begin(), e.end(), subset.begin(), subset.end())) ++c;
        return c;
    }
};

inline constexpr std::uint64_t kProfileMaterializeCap = 1'000'000;

inline CodegreeProfile codegree_profile(const Hypergraph& h) {
    const int k = h.uniformity(), n = h.vertex_count();
    if (n < k - 1) throw_invalid("codegree profile needs n >= k-1");
    CodegreeProfile p;
    p.k = k;
    p.n = n;
    const std::uint64_t total = binom_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k - 1),
                                             kProfileMaterializeCap + 1);
    if (total <= kProfileMaterializeCap) {
        p.materialized = true;
        p.counts.assign(static_cast<std::size_t>(total), 0);
        std::vector<int> sub(static_cast<std::size_t>(k - 1));
        for (const auto& e : h.edges()) {
            // each edge contains exactly k of the (k-1)-subsets
            for (int skip = 0; skip < k; ++skip) {
                std::size_t t = 0;
                for (int i = 0; i < k; ++i)
                    if (i != skip) sub[t++] = e[static_cast<std::size_t>(i)];
                ++p.counts[static_cast<std::size_t>(colex_rank(sub))];
            }
        }
        auto it = std::min_element(p.counts.begin(), p.counts.end());
        p.min_value = *it;
        p.witness = colex_unrank(static_cast<std::uint64_t>(it - p.counts.begin()), k - 1);
    } else {
        // streaming: min + witness only
        bool first = true;
        for_each_combination(n, k - 1, [&](const std::vector<int>& s) {
            int c = 0;
            for (const auto& e : h.edges())
                if (std::includes(e.begin(), e.end(), s.begin(), s.end())) ++c;
            if (first || c < p.min_value) {
                p.min_value = c;
                p.witness = s;
                first = false;
            }
        });
    }
    return p;
}

inline int min_codegree(const Hypergraph& h) { return codegree_profile(h).min_value; }

// N_H(S) = { v : S ∪ {v} ∈ E(H) } for a (k-1)-subset S.
inline std::vector<int> neighbourhood(const Hypergraph& h, std::vector<int> s) {
    if (static_cast<int>(s.size()) != h.uniformity() - 1)
        throw_invalid("neighbourhood: |S| must be k-1");
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= h.vertex_count()) throw_invalid("neighbourhood: vertex out of range");
        if (i > 0 && s[i] == s[i - 1]) throw_invalid("neighbourhood: repeated vertex in S");
    }
    std::vector<int> out;
    if (h.has_masks()) {
        const std::uint64_t sm = vertex_set_mask(s);
        for (std::size_t i = 0; i < h.edge_count(); ++i) {
            const std::uint64_t em = h.edge_masks()[i];
            if ((em & sm) == sm) {
                std::uint64_t rest = em & ~sm;
                out.push_back(std::countr_zero(rest));
            }
        }
    } else {
        for (const auto& e : h.edges()) {
            if (std::includes(e.begin(), e.end(), s.begin(), s.end())) {
                for (int v : e)
                    if (!std::binary_search(s.begin(), s.end(), v)) out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Induced subhypergraph on W, relabelled order-preservingly to 0..|W|-1.
inline Hypergraph induced(const Hypergraph& h, std::vector<int> w) {
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    for (int v : w)
        if (v < 0 || v >= h.vertex_count()) throw_invalid("induced: vertex out of range");
    std::vector<int> relabel(static_cast<std::size_t>(h.vertex_count()), -1);
    for (std::size_t i = 0; i < w.size(); ++i) relabel[static_cast<std::size_t>(w[i])] = static_cast<int>(i);
    std::vector<std::vector<int>> edges;
    for (const auto& e : h.edges()) {
        bool inside = true;
        for (int v : e)
            if (relabel[static_cast<std::size_t>(v)] < 0) {
                inside = false;
                break;
            }
        if (!inside) continue;
        std::vector<int> ne;
        ne.reserve(e.size());
        for (int v : e) ne.push_back(relabel[static_cast<std::size_t>(v)]);
        edges.push_back(std::move(ne));
    }
    return Hypergraph::create(h.uniformity(), static_cast<int>(w.size()), std::move(edges));
}

// Injective vertex map certifying pattern-in-host containment
// (subgraph semantics; host may have extra edges).
struct Embedding {
    std::vector<int> map; // pattern vertex -> host vertex
};

enum class EmbeddingDefect {
    Ok,
    NotTotal,       // some pattern vertex unmapped (-1) or map too short
    OutOfRange,     // image vertex outside the host
    NotInjective,   // two pattern vertices share an image
    MissingEdge,    // a pattern edge maps to a non-edge of the host
    UniformityMismatch,
};

struct EmbeddingCheck {
    bool ok = false;
    EmbeddingDefect defect = EmbeddingDefect::Ok;
    int detail = -1; // offending vertex or edge index, when applicable
};

inline EmbeddingCheck verify_embedding(const Hypergraph& host, const Hypergraph& pattern,
                                       const std::vector<int>& map) {
    if (host.uniformity() != pattern.uniformity())
        return {false, EmbeddingDefect::UniformityMismatch, -1};
    if (static_cast<int>(map.size()) < pattern.vertex_count())
        return {false, EmbeddingDefect::NotTotal, static_cast<int>(map.size())};
    std::vector<int> seen(static_cast<std::size_t>(host.vertex_count()), -1);
    for (int u = 0; u < pattern.vertex_count(); ++u) {
        const int v = map[static_cast<std::size_t>(u)];
        if (v < 0) return {false, EmbeddingDefect::NotTotal, u};
        if (v >= host.vertex_count()) return {false, EmbeddingDefect::OutOfRange, u};
        if (seen[static_cast<std::size_t>(v)] >= 0) return {false, EmbeddingDefect::NotInjective, u};
        seen[static_cast<std::size_t>(v)] = u;
    }
    std::vector<int> img(static_cast<std::size_t>(pattern.uniformity()));
    for (std::size_t ei = 0; ei < pattern.edge_count(); ++ei) {
        const auto& e = pattern.edges()[ei];
        for (std::size_t i = 0; i < e.size(); ++i) img[i] = map[static_cast<std::size_t>(e[i])];
        std::sort(img.begin(), img.end());
        if (!host.has_edge(img)) return {false, EmbeddingDefect::MissingEdge, static_cast<int>(ei)};
    }
    return {true, EmbeddingDefect::Ok, -1};
}

// r-part vertex partition; valid when no edge is monochromatic.
struct Colouring {
    std::vector<int> part; // vertex -> part index in 0..r-1
};

// Returns index of a monochromatic edge, or -1 if the colouring is valid.
inline int monochromatic_edge(const Hypergraph& h, const std::vector<int>& part, int r) {
    if (static_cast<int>(part.size()) != h.vertex_count()) return h.edges().empty() ? -1 : 0;
    for (int v = 0; v < h.vertex_count(); ++v)
        if (part[static_cast<std::size_t>(v)] < 0 || part[static_cast<std::size_t>(v)] >= r) return 0;
    for (std::size_t ei = 0; ei < h.edge_count(); ++ei) {
        const auto& e = h.edges()[ei];
        bool mono = true;
        for (std::size_t i = 1; i < e.size(); ++i)
            if (part[static_cast<std::size_t>(e[i])] != part[static_cast<std::size_t>(e[0])]) {
                mono = false;
                break;
            }
        if (mono) return static_cast<int>(ei);
    }
    return -1;
}

inline bool valid_colouring(const Hypergraph& h, const std::vector<int>& part, int r) {
    if (static_cast<int>(part.size()) != h.vertex_count()) return false;
    for (int v = 0; v < h.vertex_count(); ++v)
        if (part[static_cast<std::size_t>(v)] < 0 || part[static_cast<std::size_t>(v)] >= r) return false;
    return monochromatic_edge(h, part, r) < 0;
}

// Complete k-graph on n vertices.
inline Hypergraph complete_hypergraph(int k, int n) {
    std::vector<std::vector<int>> edges;
    for_each_combination(n, k, [&](const std::vector<int>& c) { edges.push_back(c); });
    return Hypergraph::create(k, n, std::move(edges));
}

inline Hypergraph empty_hypergraph(int k, int n) { return Hypergraph::create(k, n, {}); }

// Relabel by a permutation of the vertices (perm[v] = new label of v).
inline Hypergraph relabelled(const Hypergraph& h, const std::vector<int>& perm) {
    std::vector<std::vector<int>> edges;
    edges.reserve(h.edge_count());
    for (const auto& e : h.edges()) {
        std::vector<int> ne;
        ne.reserve(e.size());
        for (int v : e) ne.push_back(perm[static_cast<std::size_t>(v)]);
        edges.push_back(std::move(ne));
    }
    return Hypergraph::create(h.uniformity(), h.vertex_count(), std::move(edges));
}

} // namespace khg
