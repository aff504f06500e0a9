#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "khg/combinatorics.hpp"
#include "khg/error.hpp"
#include "khg/hypergraph.hpp"
#include "khg/isomorphism.hpp"

namespace khg {

// The (s,t)-extension data of a base k-graph F:
//   A  = all (k-1)-subsets of V(F), in colex order
//   T  = all s-subsets of A (by index), in colex order; r = |T|
//   P  = per index i, a t-subset of T_i (indices into A)
// Each choice of P yields one family member: r new vertices v_1..v_r, each
// v_i joined to every (k-1)-set in P_i.
struct ExtensionSpec {
    Hypergraph base;
    int s = 1;
    int t = 1;
    std::vector<std::vector<int>> A; // (k-1)-subsets of V(base)
    std::vector<std::vector<int>> T; // s-subsets of A indices
    std::vector<std::vector<int>> P; // P[i] ⊆ T[i], |P[i]| = t
};

namespace detail {

inline void build_extension_frame(const Hypergraph& base, int s, int t, std::vector<std::vector<int>>& A,
                                  std::vector<std::vector<int>>& T) {
    if (t < 1 || s < t) throw_invalid("extension: need s >= t >= 1");
    A = combinations_colex(base.vertex_count(), base.uniformity() - 1);
    if (A.empty()) throw_invalid("extension: A(F) is empty (|V(F)| < k-1)");
    if (static_cast<std::uint64_t>(s) > A.size())
        throw_invalid("extension: s exceeds |A(F)| = " + std::to_string(A.size()));
    const std::uint64_t r = binom(A.size(), static_cast<std::uint64_t>(s));
    T.clear();
    T.reserve(static_cast<std::size_t>(r));
    for (std::uint64_t i = 0; i < r; ++i) T.push_back(colex_unrank(i, s));
}

} // namespace detail

inline ExtensionSpec make_extension_spec(const Hypergraph& base, int s, int t,
                                         std::vector<std::vector<int>> P) {
    ExtensionSpec spec;
    spec.base = base;
    spec.s = s;
    spec.t = t;
    detail::build_extension_frame(base, s, t, spec.A, spec.T);
    if (P.size() != spec.T.size())
        throw_invalid("extension: P has " + std::to_string(P.size()) + " entries, expected r = " +
                      std::to_string(spec.T.size()));
    for (std::size_t i = 0; i < P.size(); ++i) {
        auto& pi = P[i];
        std::sort(pi.begin(), pi.end());
        if (static_cast<int>(pi.size()) != t) throw_invalid("extension: |P_i| != t at i = " + std::to_string(i));
        if (!std::includes(spec.T[i].begin(), spec.T[i].end(), pi.begin(), pi.end()))
            throw_invalid("extension: P_i is not a subset of T_i at i = " + std::to_string(i));
    }
    spec.P = std::move(P);
    return spec;
}

// Builds F(P_1..P_r): new vertex v_i gets index |V(F)| + i.
inline Hypergraph extension_member(const ExtensionSpec& spec) {
    const int base_n = spec.base.vertex_count();
    std::vector<std::vector<int>> edges = spec.base.edges();
    for (std::size_t i = 0; i < spec.P.size(); ++i) {
        const int vi = base_n + static_cast<int>(i);
        for (int a_idx : spec.P[i]) {
            std::vector<int> e = spec.A[static_cast<std::size_t>(a_idx)];
            e.push_back(vi);
            edges.push_back(std::move(e));
        }
    }
    return Hypergraph::create(spec.base.uniformity(), base_n + static_cast<int>(spec.P.size()),
                              std::move(edges));
}

inline constexpr std::uint64_t kExtensionFamilyDefaultCap = 1u << 20;

// Lazy view of the family F(s,t). Member ordering: each coordinate i picks
// one of the C(s,t) t-subsets of T_i (in colex order over positions of T_i);
// P-vectors are ranked mixed-radix lexicographically, first coordinate most
// significant. member(index) is always allowed; full iteration is guarded.
class ExtensionFamily {
public:
    ExtensionFamily(Hypergraph base, int s, int t) : base_(std::move(base)), s_(s), t_(t) {
        detail::build_extension_frame(base_, s, t, A_, T_);
        choice_positions_ = combinations_colex(s, t);
    }

    std::uint64_t r() const { return T_.size(); }
    std::uint64_t choices_per_coordinate() const { return choice_positions_.size(); }

    // |F(s,t)| before dedup = C(s,t)^r, capped for guard decisions.
    std::uint64_t count_capped(std::uint64_t cap) const {
        const std::uint64_t b = choices_per_coordinate();
        unsigned __int128 c = 1;
        for (std::uint64_t i = 0; i < r(); ++i) {
            c *= b;
            if (c >= cap) return cap;
        }
        return static_cast<std::uint64_t>(c);
    }

    ExtensionSpec spec_for_index(std::uint64_t index) const {
        const std::uint64_t b = choices_per_coordinate();
        const std::uint64_t total = count_capped(std::numeric_limits<std::uint64_t>::max());
        if (total != std::numeric_limits<std::uint64_t>::max() && index >= total)
            throw_invalid("extension family: index out of range");
        std::vector<std::vector<int>> P(T_.size());
        for (std::size_t i = T_.size(); i-- > 0;) {
            const std::uint64_t digit = index % b;
            index /= b;
            std::vector<int> pi;
            for (int pos : choice_positions_[static_cast<std::size_t>(digit)])
                pi.push_back(T_[i][static_cast<std::size_t>(pos)]);
            P[i] = std::move(pi);
        }
        ExtensionSpec spec;
        spec.base = base_;
        spec.s = s_;
        spec.t = t_;
        spec.A = A_;
        spec.T = T_;
        spec.P = std::move(P);
        return spec;
    }

    Hypergraph member(std::uint64_t index) const { return extension_member(spec_for_index(index)); }

    // Visits members in index order; with dedup, yields one representative
    // per isomorphism class. fn(index, graph) -> bool, false stops early.
    template <typename Fn>
    void for_each(Fn&& fn, bool dedup = false, std::uint64_t cap = kExtensionFamilyDefaultCap,
                  bool override_guard = false) const {
        const std::uint64_t total = count_capped(cap + 1);
        if (total > cap && !override_guard)
            throw_guard("extension family has more than " + std::to_string(cap) +
                        " members; pass the override to stream anyway");
        std::vector<Hypergraph> reps;
        const std::uint64_t limit = count_capped(std::numeric_limits<std::uint64_t>::max());
        for (std::uint64_t i = 0; i < limit; ++i) {
            Hypergraph m = member(i);
            if (dedup) {
                bool seen = false;
                for (const auto& rep : reps)
                    if (is_isomorphic(rep, m, m.vertex_count())) {
                        seen = true;
                        break;
                    }
                if (seen) continue;
                reps.push_back(m);
            }
            if (!fn(i, m)) return;
        }
    }

    const std::vector<std::vector<int>>& A() const { return A_; }
    const std::vector<std::vector<int>>& T() const { return T_; }

private:
    Hypergraph base_;
    int s_;
    int t_;
    std::vector<std::vector<int>> A_;
    std::vector<std::vector<int>> T_;
    std::vector<std::vector<int>> choice_positions_; // t-subsets of {0..s-1}, colex
};

inline constexpr std::uint64_t kHFamilyDefaultMaxEdgeSlots = 24;

// Streams all k-graphs on m vertices with minimum codegree >= threshold
// (one representative per iso class when dedup is set). Branch-and-bound
// over edge ranks: a branch dies once even including every undecided edge
// cannot lift the minimum codegree to the threshold.
template <typename Fn>
void enumerate_min_codegree_family(int m, int k, int threshold, Fn&& fn, bool dedup = false,
                                   std::uint64_t max_edge_slots = kHFamilyDefaultMaxEdgeSlots) {
    if (m < k) {
        // no edges possible; the empty graph qualifies iff threshold <= 0
        if (threshold <= 0 && m >= k - 1) fn(empty_hypergraph(k, m));
        return;
    }
    const std::uint64_t slots = binom(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));
    if (slots > max_edge_slots)
        throw_guard("enumerate_min_codegree_family: C(m,k) = " + std::to_string(slots) +
                    " edge slots exceeds guard " + std::to_string(max_edge_slots));
    const int num_edges = static_cast<int>(slots);
    const auto edge_of_rank = combinations_colex(m, k);
    const int num_subs = static_cast<int>(binom(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k - 1)));
    // (k-1)-subset ranks contained in each edge rank
    std::vector<std::vector<int>> subs_of_edge(static_cast<std::size_t>(num_edges));
    for (int e = 0; e < num_edges; ++e) {
        const auto& ev = edge_of_rank[static_cast<std::size_t>(e)];
        std::vector<int> sub(static_cast<std::size_t>(k - 1));
        for (int skip = 0; skip < k; ++skip) {
            std::size_t t = 0;
            for (int i = 0; i < k; ++i)
                if (i != skip) sub[t] = ev[static_cast<std::size_t>(i)], ++t;
            subs_of_edge[static_cast<std::size_t>(e)].push_back(static_cast<int>(colex_rank(sub)));
        }
    }
    std::vector<int> d(static_cast<std::size_t>(num_subs), 0);
    std::vector<int> remaining(static_cast<std::size_t>(num_subs), m - k + 1);
    std::vector<int> included;
    std::vector<Hypergraph> reps;
    bool stopped = false;

    auto bound_ok = [&]() {
        for (int s = 0; s < num_subs; ++s)
            if (d[static_cast<std::size_t>(s)] + remaining[static_cast<std::size_t>(s)] < threshold) return false;
        return true;
    };

    auto emit = [&]() {
        std::vector<std::vector<int>> edges;
        edges.reserve(included.size());
        for (int e : included) edges.push_back(edge_of_rank[static_cast<std::size_t>(e)]);
        Hypergraph h = Hypergraph::create(k, m, std::move(edges));
        if (dedup) {
            for (const auto& rep : reps)
                if (is_isomorphic(rep, h, m)) return;
            reps.push_back(h);
        }
        if (!fn(h)) stopped = true;
    };

    auto dfs = [&](auto&& self, int i) -> void {
        if (stopped) return;
        if (!bound_ok()) return;
        if (i == num_edges) {
            emit();
            return;
        }
        const auto& subs = subs_of_edge[static_cast<std::size_t>(i)];
        for (int s : subs) --remaining[static_cast<std::size_t>(s)];
        // include edge i
        for (int s : subs) ++d[static_cast<std::size_t>(s)];
        included.push_back(i);
        self(self, i + 1);
        included.pop_back();
        for (int s : subs) --d[static_cast<std::size_t>(s)];
        // exclude edge i
        self(self, i + 1);
        for (int s : subs) ++remaining[static_cast<std::size_t>(s)];
    };
    dfs(dfs, 0);
}

} // namespace khg
