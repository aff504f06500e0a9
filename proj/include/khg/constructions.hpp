#pragma once

#include <cstdint>
#include <vector>

#include "khg/combinatorics.hpp"
#include "khg/error.hpp"
#include "khg/hypergraph.hpp"

namespace khg {

// Splits 0..n-1 into `parts` contiguous blocks, as evenly as possible;
// the first n mod parts blocks take the extra vertex. Returns part of each
// vertex.
inline std::vector<int> even_partition(int n, int parts) {
    std::vector<int> part_of(static_cast<std::size_t>(n));
    const int q = n / parts, rem = n % parts;
    int v = 0;
    for (int p = 0; p < parts; ++p) {
        const int size = q + (p < rem ? 1 : 0);
        for (int i = 0; i < size; ++i) part_of[static_cast<std::size_t>(v++)] = p;
    }
    return part_of;
}

struct GabnParams {
    int a = 2; // part count
    int b = 1; // forward span, 1 <= b < a
    int n = 0;
    int k = 3;
};

// The a-part construction whose minimum codegree is about (b/a)n.
// Edge rules on the even partition V_1..V_a:
//   - (k-1) vertices in V_i plus one vertex in V_j, j in {i+1..i+b} mod a
//   - any k-set meeting at least three parts
//   - any k-set inside exactly two parts, meeting both in >= 2 vertices
inline Hypergraph gen_gabn(const GabnParams& p) {
    if (p.k < 3) throw_invalid("gen_gabn: k must be >= 3");
    if (p.a < 2) throw_invalid("gen_gabn: a must be >= 2");
    if (p.b < 1 || p.b >= p.a) throw_invalid("gen_gabn: b must satisfy 1 <= b < a");
    if (p.n < p.a) throw_invalid("gen_gabn: n must be >= a");
    const auto part_of = even_partition(p.n, p.a);
    std::vector<std::vector<int>> edges;
    std::vector<int> cnt(static_cast<std::size_t>(p.a));
    for_each_combination(p.n, p.k, [&](const std::vector<int>& e) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int v : e) ++cnt[static_cast<std::size_t>(part_of[static_cast<std::size_t>(v)])];
        int distinct = 0;
        for (int c : cnt)
            if (c > 0) ++distinct;
        if (distinct >= 3) {
            edges.push_back(e);
            return;
        }
        if (distinct == 1) return;
        int p1 = -1, p2 = -1;
        for (int i = 0; i < p.a; ++i)
            if (cnt[static_cast<std::size_t>(i)] > 0) (p1 < 0 ? p1 : p2) = i;
        const int c1 = cnt[static_cast<std::size_t>(p1)], c2 = cnt[static_cast<std::size_t>(p2)];
        if (c1 >= 2 && c2 >= 2) {
            edges.push_back(e);
            return;
        }
        // split is (k-1, 1): keep iff the singleton part is in the forward
        // window of the big part
        const int big = (c1 == p.k - 1) ? p1 : p2;
        const int single = (big == p1) ? p2 : p1;
        const int fwd = ((single - big) % p.a + p.a) % p.a;
        if (fwd >= 1 && fwd <= p.b) edges.push_back(e);
    });
    return Hypergraph::create(p.k, p.n, std::move(edges));
}

// r near-equal parts; edges are all k-sets meeting at least two parts.
inline Hypergraph gen_rpartite(int n, int r, int k) {
    if (k < 2) throw_invalid("gen_rpartite: k must be >= 2");
    if (r < 1) throw_invalid("gen_rpartite: r must be >= 1");
    if (n < r) throw_invalid("gen_rpartite: n must be >= r");
    const auto part_of = even_partition(n, r);
    std::vector<std::vector<int>> edges;
    for_each_combination(n, k, [&](const std::vector<int>& e) {
        const int p0 = part_of[static_cast<std::size_t>(e[0])];
        for (std::size_t i = 1; i < e.size(); ++i)
            if (part_of[static_cast<std::size_t>(e[i])] != p0) {
                edges.push_back(e);
                return;
            }
    });
    return Hypergraph::create(k, n, std::move(edges));
}

// K^k(t,t): A = {0..t-1}, B = {t..2t-1}; edges are the k-sets S with
// |S ∩ A| = 1 or |S ∩ B| = 1.
inline Hypergraph gen_ktt(int t, int k) {
    if (t < 1) throw_invalid("gen_ktt: t must be >= 1");
    if (k < 3) throw_invalid("gen_ktt: k must be >= 3");
    std::vector<std::vector<int>> edges;
    for_each_combination(2 * t, k, [&](const std::vector<int>& e) {
        int in_a = 0;
        for (int v : e)
            if (v < t) ++in_a;
        if (in_a == 1 || static_cast<int>(e.size()) - in_a == 1) edges.push_back(e);
    });
    return Hypergraph::create(k, 2 * t, std::move(edges));
}

struct FrParams {
    int k = 3;
    int r = 1;
};

struct FrCounts {
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
};

// |V_1| = k, |E_1| = 1; for r >= 2 with s = r(k-2)+1 and m = C(s, k-1):
// |V_r| = s + m|V_{r-1}|, |E_r| = m(|V_{r-1}| + |E_{r-1}|).
inline FrCounts fr_counts(int k, int r) {
    if (k < 3) throw_invalid("fr: k must be >= 3");
    if (r < 1) throw_invalid("fr: r must be >= 1");
    FrCounts c{static_cast<std::uint64_t>(k), 1};
    for (int level = 2; level <= r; ++level) {
        const std::uint64_t s = static_cast<std::uint64_t>(level) * (k - 2) + 1;
        const std::uint64_t m = binom(s, static_cast<std::uint64_t>(k - 1));
        unsigned __int128 nv = s + static_cast<unsigned __int128>(m) * c.vertices;
        unsigned __int128 ne = static_cast<unsigned __int128>(m) * (c.vertices + c.edges);
        if (nv > (std::uint64_t{1} << 62) || ne > (std::uint64_t{1} << 62))
            throw_guard("fr_counts: size overflows");
        c.vertices = static_cast<std::uint64_t>(nv);
        c.edges = static_cast<std::uint64_t>(ne);
    }
    return c;
}

inline constexpr std::uint64_t kFrDefaultSizeLimit = 1'000'000;

// Recursive construction F^k_r: the core set S = {0..r(k-2)} takes the
// lowest indices; each (k-1)-subset X_j of S (colex order) gets a disjoint
// copy of F^k_{r-1} whose block follows sequentially, fully joined to X_j.
inline Hypergraph gen_fr(int k, int r, std::uint64_t size_limit = kFrDefaultSizeLimit) {
    const auto c = fr_counts(k, r);
    if (c.vertices > size_limit || c.edges > size_limit)
        throw_guard("gen_fr: " + std::to_string(c.vertices) + " vertices / " + std::to_string(c.edges) +
                    " edges exceeds limit " + std::to_string(size_limit));
    if (r == 1) return complete_hypergraph(k, k); // a single edge
    const Hypergraph sub = gen_fr(k, r - 1, size_limit);
    const int s_size = r * (k - 2) + 1;
    const auto xs = combinations_colex(s_size, k - 1);
    std::vector<std::vector<int>> edges;
    int base = s_size;
    for (const auto& x : xs) {
        // link edges X_j ∪ {v} for every v in the block
        for (int v = 0; v < sub.vertex_count(); ++v) {
            std::vector<int> e = x;
            e.push_back(base + v);
            edges.push_back(std::move(e));
        }
        // the block's own copy of F^k_{r-1}
        for (const auto& se : sub.edges()) {
            std::vector<int> e;
            e.reserve(se.size());
            for (int v : se) e.push_back(base + v);
            edges.push_back(std::move(e));
        }
        base += sub.vertex_count();
    }
    return Hypergraph::create(k, base, std::move(edges));
}

} // namespace khg
