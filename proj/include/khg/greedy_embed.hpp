#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "khg/combinatorics.hpp"
#include "khg/constructions.hpp"
#include "khg/error.hpp"
#include "khg/hypergraph.hpp"

namespace khg {

// Greedy one-pass embedders lifted from the codegree proofs. Failure is a
// legitimate outcome: the greedy makes no backtracking attempt, so it may
// fail on hosts that do contain the pattern. Only exhaustive search
// (find_embedding) certifies non-containment.

struct GreedyFailure {
    int step = -1;               // 1-based index of the failing X_i, or -1
    std::vector<int> x_set;      // the (k-1)-set whose block could not be built
    std::vector<int> available;  // the deficient candidate set A
    std::string reason;
};

struct GreedyResult {
    bool found = false;
    Embedding embedding;
    GreedyFailure failure;
};

// Procedure for F^k_2: fix S = {0..2k-4}; for each (k-1)-subset X_i of S
// (colex order) let A = N(X_i) \ (S ∪ used); choose the lexicographically
// least (k-1)-subset Y of A with a vertex y in N(Y) ∩ A, and take
// X̃_i = Y ∪ {y}.
inline GreedyResult greedy_embed_f2(const Hypergraph& h) {
    const int k = h.uniformity();
    const Hypergraph pattern = gen_fr(k, 2);
    GreedyResult res;
    if (h.vertex_count() < pattern.vertex_count()) {
        res.failure.reason = "host has " + std::to_string(h.vertex_count()) + " vertices, needs " +
                             std::to_string(pattern.vertex_count());
        return res;
    }
    const int s_size = 2 * k - 3;
    std::vector<bool> used(static_cast<std::size_t>(h.vertex_count()), false);
    for (int v = 0; v < s_size; ++v) used[static_cast<std::size_t>(v)] = true;

    std::vector<int> map(static_cast<std::size_t>(pattern.vertex_count()), -1);
    for (int v = 0; v < s_size; ++v) map[static_cast<std::size_t>(v)] = v;

    const auto xs = combinations_colex(s_size, k - 1);
    int block_base = s_size;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<int> avail;
        for (int v : neighbourhood(h, xs[i]))
            if (!used[static_cast<std::size_t>(v)]) avail.push_back(v);
        // lexicographically least valid (Y, y)
        std::vector<int> block;
        bool found_block = false;
        for_each_combination(static_cast<int>(avail.size()), k - 1, [&](const std::vector<int>& idx) -> bool {
            std::vector<int> y_set;
            y_set.reserve(static_cast<std::size_t>(k - 1));
            for (int t : idx) y_set.push_back(avail[static_cast<std::size_t>(t)]);
            for (int y : neighbourhood(h, y_set)) {
                if (std::binary_search(y_set.begin(), y_set.end(), y)) continue;
                if (std::find(avail.begin(), avail.end(), y) == avail.end()) continue;
                block = y_set;
                block.push_back(y);
                std::sort(block.begin(), block.end());
                found_block = true;
                return false;
            }
            return true;
        });
        if (!found_block) {
            res.failure.step = static_cast<int>(i) + 1;
            res.failure.x_set = xs[i];
            res.failure.available = avail;
            res.failure.reason = "no edge fits inside the candidate set";
            return res;
        }
        for (int t = 0; t < k; ++t)
            map[static_cast<std::size_t>(block_base + t)] = block[static_cast<std::size_t>(t)];
        for (int v : block) used[static_cast<std::size_t>(v)] = true;
        block_base += k;
    }
    const auto check = verify_embedding(h, pattern, map);
    if (!check.ok) throw_logic("greedy_embed_f2: assembled map failed verification");
    res.found = true;
    res.embedding.map = std::move(map);
    return res;
}

struct EmbedFrResult {
    bool found = false;
    Embedding embedding;
    std::vector<int> failure_path; // X indices (1-based) down the recursion
    std::string reason;
};

namespace detail {

// Returns the embedding of F^k_r into h, or records the failing recursion
// path. used marks host vertices taken by sibling blocks.
inline bool embed_fr_rec(const Hypergraph& h, int k, int r, std::vector<int>& map_out,
                         std::vector<int>& path, std::string& reason) {
    const Hypergraph pattern = gen_fr(k, r);
    if (r == 1) {
        if (h.edges().empty()) {
            reason = "no edge available for the base case";
            return false;
        }
        map_out = h.edges().front();
        return true;
    }
    const int s_size = r * (k - 2) + 1;
    if (h.vertex_count() < s_size) {
        reason = "too few vertices for the core set";
        return false;
    }
    std::vector<bool> used(static_cast<std::size_t>(h.vertex_count()), false);
    for (int v = 0; v < s_size; ++v) used[static_cast<std::size_t>(v)] = true;
    map_out.assign(static_cast<std::size_t>(pattern.vertex_count()), -1);
    for (int v = 0; v < s_size; ++v) map_out[static_cast<std::size_t>(v)] = v;

    const auto xs = combinations_colex(s_size, k - 1);
    const Hypergraph sub_pattern = gen_fr(k, r - 1);
    int block_base = s_size;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<int> w;
        for (int v : neighbourhood(h, xs[i]))
            if (!used[static_cast<std::size_t>(v)]) w.push_back(v);
        const Hypergraph hi = induced(h, w);
        std::vector<int> sub_map;
        if (!embed_fr_rec(hi, k, r - 1, sub_map, path, reason)) {
            path.insert(path.begin(), static_cast<int>(i) + 1);
            return false;
        }
        for (std::size_t t = 0; t < sub_map.size(); ++t) {
            const int host_v = w[static_cast<std::size_t>(sub_map[t])];
            map_out[static_cast<std::size_t>(block_base) + t] = host_v;
            used[static_cast<std::size_t>(host_v)] = true;
        }
        block_base += sub_pattern.vertex_count();
    }
    return true;
}

} // namespace detail

// Induction procedure for F^k_r: core set S = {0..r(k-2)}, then for each
// X_i a recursive copy of F^k_{r-1} inside H[N(X_i) \ (S ∪ used)].
inline EmbedFrResult embed_fr_recursive(const Hypergraph& h, int r) {
    if (r < 1) throw_invalid("embed_fr_recursive: r must be >= 1");
    const int k = h.uniformity();
    EmbedFrResult res;
    std::vector<int> map;
    if (!detail::embed_fr_rec(h, k, r, map, res.failure_path, res.reason)) return res;
    const Hypergraph pattern = gen_fr(k, r);
    const auto check = verify_embedding(h, pattern, map);
    if (!check.ok) throw_logic("embed_fr_recursive: assembled map failed verification");
    res.found = true;
    res.embedding.map = std::move(map);
    return res;
}

} // namespace khg
