#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "khg/embedding.hpp"
#include "khg/error.hpp"
#include "khg/extension.hpp"
#include "khg/hypergraph.hpp"
#include "khg/matching.hpp"

namespace khg {

// Witness that the host contains some member of F(s,t): a base embedding
// plus, per extension index j, a vertex v_j and the (>= t) sets of T_j it
// links to. The first t linked sets induce P_j.
struct ContainmentCertificate {
    Embedding base_embedding;
    std::vector<int> chosen_vertex;           // per index j
    std::vector<std::vector<int>> linked_sets; // per index j: A-indices linked by v_j
};

struct ContainResult {
    SearchStatus status = SearchStatus::None;
    ContainmentCertificate certificate; // valid when Found
};

struct ContainOptions {
    std::optional<std::uint64_t> node_budget;
    std::uint64_t max_indices = 100'000; // guard on r = C(C(|V(F)|,k-1), s)
};

namespace detail {

// Rebuilds the member identified by the certificate and re-checks it
// edge-by-edge against the host; never trusts the search.
inline bool recheck_containment(const Hypergraph& host, const Hypergraph& base, int s, int t,
                                const ContainmentCertificate& cert) {
    ExtensionFamily fam(base, s, t);
    const auto& T = fam.T();
    if (cert.chosen_vertex.size() != T.size()) return false;
    std::vector<std::vector<int>> P;
    P.reserve(T.size());
    for (std::size_t j = 0; j < T.size(); ++j) {
        if (static_cast<int>(cert.linked_sets[j].size()) < t) return false;
        std::vector<int> pj(cert.linked_sets[j].begin(), cert.linked_sets[j].begin() + t);
        P.push_back(std::move(pj));
    }
    Hypergraph member;
    try {
        member = extension_member(make_extension_spec(base, s, t, std::move(P)));
    } catch (const Error&) {
        return false;
    }
    std::vector<int> full_map = cert.base_embedding.map;
    full_map.insert(full_map.end(), cert.chosen_vertex.begin(), cert.chosen_vertex.end());
    return verify_embedding(host, member, full_map).ok;
}

} // namespace detail

// Decides whether the host contains ANY member of F(s,t). For each base
// embedding of F, vertex v is a candidate for index j if v lies outside the
// image and forms host edges with at least t of the sets in T_j's image;
// a system of distinct representatives (maximum bipartite matching covering
// all r indices) completes a member. Embeddings with the same vertex image
// induce the same candidacy relation (A and T range over all subsets), so
// images are visited once.
inline ContainResult contains_extension_member(const Hypergraph& host, const Hypergraph& base, int s,
                                               int t, const ContainOptions& opts = {}) {
    if (host.uniformity() != base.uniformity())
        throw_invalid("contains_extension_member: uniformity mismatch");
    if (t < 1 || s < t) throw_invalid("contains_extension_member: need s >= t >= 1");
    ExtensionFamily fam(base, s, t);
    if (fam.r() > opts.max_indices)
        throw_guard("contains_extension_member: r = " + std::to_string(fam.r()) + " exceeds guard " +
                    std::to_string(opts.max_indices));
    const auto& A = fam.A();
    const auto& T = fam.T();
    const int hn = host.vertex_count();

    ContainResult result;
    std::set<std::vector<int>> seen_images;

    EmbedOptions eopts;
    eopts.node_budget = opts.node_budget;
    const SearchStatus st = enumerate_embeddings(
        host, base,
        [&](const std::vector<int>& map) {
            std::vector<int> image = map;
            std::sort(image.begin(), image.end());
            if (!seen_images.insert(image).second) return true; // same candidacy relation

            // linked[a][v] = host has edge map(A[a]) ∪ {v}
            std::vector<std::vector<char>> linked(A.size(), std::vector<char>(static_cast<std::size_t>(hn), 0));
            std::vector<char> in_image(static_cast<std::size_t>(hn), 0);
            for (int v : image) in_image[static_cast<std::size_t>(v)] = 1;
            for (std::size_t a = 0; a < A.size(); ++a) {
                std::vector<int> img;
                img.reserve(A[a].size());
                for (int u : A[a]) img.push_back(map[static_cast<std::size_t>(u)]);
                std::sort(img.begin(), img.end());
                for (int v : neighbourhood(host, img))
                    if (!in_image[static_cast<std::size_t>(v)]) linked[a][static_cast<std::size_t>(v)] = 1;
            }
            std::vector<std::vector<int>> adj(T.size());
            for (std::size_t j = 0; j < T.size(); ++j) {
                for (int v = 0; v < hn; ++v) {
                    if (in_image[static_cast<std::size_t>(v)]) continue;
                    int links = 0;
                    for (int a : T[j])
                        if (linked[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)]) ++links;
                    if (links >= t) adj[j].push_back(v);
                }
            }
            const MatchingResult match = max_bipartite_matching(adj, hn);
            if (match.size != static_cast<int>(T.size())) return true; // keep searching

            ContainmentCertificate cert;
            cert.base_embedding.map = map;
            cert.chosen_vertex.resize(T.size());
            cert.linked_sets.resize(T.size());
            for (std::size_t j = 0; j < T.size(); ++j) {
                const int v = match.match_of_left[j];
                cert.chosen_vertex[j] = v;
                for (int a : T[j])
                    if (linked[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)])
                        cert.linked_sets[j].push_back(a);
            }
            if (!detail::recheck_containment(host, base, s, t, cert))
                throw_logic("contains_extension_member: certificate failed re-verification");
            result.status = SearchStatus::Found;
            result.certificate = std::move(cert);
            return false; // stop
        },
        eopts);

    if (result.status == SearchStatus::Found) return result;
    result.status = (st == SearchStatus::Budget) ? SearchStatus::Budget : SearchStatus::None;
    return result;
}

} // namespace khg
