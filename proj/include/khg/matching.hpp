#pragma once

#include <vector>

namespace khg {

// Maximum bipartite matching by augmenting paths (left side small).
// adj[l] lists right vertices in the order they should be tried, which
// keeps the result deterministic. Returns match_of_left (right index or -1).
struct MatchingResult {
    std::vector<int> match_of_left;
    int size = 0;
};

inline MatchingResult max_bipartite_matching(const std::vector<std::vector<int>>& adj, int right_count) {
    const int L = static_cast<int>(adj.size());
    std::vector<int> match_right(static_cast<std::size_t>(right_count), -1);
    std::vector<bool> visited;

    auto augment = [&](auto&& self, int l) -> bool {
        for (int rv : adj[static_cast<std::size_t>(l)]) {
            if (visited[static_cast<std::size_t>(rv)]) continue;
            visited[static_cast<std::size_t>(rv)] = true;
            if (match_right[static_cast<std::size_t>(rv)] < 0 || self(self, match_right[static_cast<std::size_t>(rv)])) {
                match_right[static_cast<std::size_t>(rv)] = l;
                return true;
            }
        }
        return false;
    };

    MatchingResult res;
    res.match_of_left.assign(static_cast<std::size_t>(L), -1);
    for (int l = 0; l < L; ++l) {
        visited.assign(static_cast<std::size_t>(right_count), false);
        if (augment(augment, l)) ++res.size;
    }
    for (int rv = 0; rv < right_count; ++rv)
        if (match_right[static_cast<std::size_t>(rv)] >= 0)
            res.match_of_left[static_cast<std::size_t>(match_right[static_cast<std::size_t>(rv)])] = rv;
    return res;
}

} // namespace khg
