#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "khg/error.hpp"
#include "khg/hypergraph.hpp"

namespace khg {

inline constexpr int kIsoDefaultGuard = 14;

namespace detail {

// Invariant fingerprint: (degree, sorted codegrees of incident (k-1)-sets).
inline std::vector<std::vector<int>> vertex_signatures(const Hypergraph& h) {
    const int n = h.vertex_count();
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
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    auto deg = h.degrees();
    for (int v = 0; v < n; ++v) sig[static_cast<std::size_t>(v)].push_back(deg[static_cast<std::size_t>(v)]);
    for (const auto& [s, c] : cod)
        for (int v : s) sig[static_cast<std::size_t>(v)].push_back(c);
    for (auto& s : sig) std::sort(s.begin() + 1, s.end());
    return sig;
}

struct IsoSearch {
    const Hypergraph* a;
    const Hypergraph* b;
    std::vector<int> map;     // a-vertex -> b-vertex or -1
    std::vector<bool> used;   // b-vertex taken
    std::vector<std::vector<int>> sig_a, sig_b;
    std::vector<int> order;   // a-vertices, rarest signature first

    // On the mapped prefix, edge sets must correspond exactly in both
    // directions, so check every fully-mapped k-subset.
    bool consistent(int just_mapped) const {
        std::vector<int> mapped;
        for (std::size_t v = 0; v < map.size(); ++v)
            if (map[v] >= 0) mapped.push_back(static_cast<int>(v));
        const int k = a->uniformity();
        if (static_cast<int>(mapped.size()) < k) return true;
        // iterate k-subsets of mapped that contain just_mapped
        std::vector<int> rest;
        for (int v : mapped)
            if (v != just_mapped) rest.push_back(v);
        bool ok = true;
        for_each_combination(static_cast<int>(rest.size()), k - 1, [&](const std::vector<int>& idx) -> bool {
            std::vector<int> ea, eb;
            ea.reserve(static_cast<std::size_t>(k));
            for (int i : idx) ea.push_back(rest[static_cast<std::size_t>(i)]);
            ea.push_back(just_mapped);
            std::sort(ea.begin(), ea.end());
            eb.reserve(static_cast<std::size_t>(k));
            for (int v : ea) eb.push_back(map[static_cast<std::size_t>(v)]);
            std::sort(eb.begin(), eb.end());
            if (a->has_edge(ea) != b->has_edge(eb)) {
                ok = false;
                return false;
            }
            return true;
        });
        return ok;
    }

    bool search(std::size_t depth) {
        if (depth == order.size()) return true;
        const int u = order[depth];
        for (int v = 0; v < b->vertex_count(); ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            if (sig_a[static_cast<std::size_t>(u)] != sig_b[static_cast<std::size_t>(v)]) continue;
            map[static_cast<std::size_t>(u)] = v;
            used[static_cast<std::size_t>(v)] = true;
            if (consistent(u) && search(depth + 1)) return true;
            map[static_cast<std::size_t>(u)] = -1;
            used[static_cast<std::size_t>(v)] = false;
        }
        return false;
    }
};

} // namespace detail

// Exact isomorphism test by backtracking with degree/codegree-signature
// pruning. Intended for small instances; guarded by max_vertices.
inline bool is_isomorphic(const Hypergraph& a, const Hypergraph& b, int max_vertices = kIsoDefaultGuard) {
    if (a.uniformity() != b.uniformity()) return false;
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    if (a.vertex_count() > max_vertices)
        throw_guard("isomorphism guard: " + std::to_string(a.vertex_count()) + " vertices > " +
                    std::to_string(max_vertices));
    detail::IsoSearch s;
    s.a = &a;
    s.b = &b;
    s.sig_a = detail::vertex_signatures(a);
    s.sig_b = detail::vertex_signatures(b);
    {
        auto sa = s.sig_a, sb = s.sig_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    s.map.assign(static_cast<std::size_t>(a.vertex_count()), -1);
    s.used.assign(static_cast<std::size_t>(b.vertex_count()), false);
    s.order.resize(static_cast<std::size_t>(a.vertex_count()));
    for (int v = 0; v < a.vertex_count(); ++v) s.order[static_cast<std::size_t>(v)] = v;
    // rarest signature first cuts the branching factor early
    std::map<std::vector<int>, int> freq;
    for (const auto& sg : s.sig_a) ++freq[sg];
    std::stable_sort(s.order.begin(), s.order.end(), [&](int x, int y) {
        return freq[s.sig_a[static_cast<std::size_t>(x)]] < freq[s.sig_a[static_cast<std::size_t>(y)]];
    });
    return s.search(0);
}

} // namespace khg
