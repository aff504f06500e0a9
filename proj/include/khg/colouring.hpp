#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "khg/cnf.hpp"
#include "khg/error.hpp"
#include "khg/hypergraph.hpp"
#include "khg/sat_backend.hpp"

namespace khg {

enum class ColourBackend { Brute, Sat };

struct ColourOptions {
    std::uint64_t brute_max_assignments = std::uint64_t{1} << 24;
    SatBackend sat_backend = SatBackend::internal();
};

struct ColourOutcome {
    enum class Status { Colourable, NotColourable, Unknown };
    Status status = Status::Unknown;
    Colouring colouring; // valid when Colourable
    std::string backend;
    std::string message;
};

// Variables x_{v,p} (one part per vertex via exactly-one), plus for every
// edge and part a clause forbidding the edge from sitting inside the part.
inline CnfInstance encode_colouring_cnf(const Hypergraph& h, int r) {
    const int n = h.vertex_count();
    CnfBuilder b(n * r);
    auto var = [r](int v, int p) { return v * r + p + 1; };
    for (int v = 0; v < n; ++v) {
        std::vector<int> alo;
        alo.reserve(static_cast<std::size_t>(r));
        for (int p = 0; p < r; ++p) alo.push_back(var(v, p));
        b.add_clause(alo);
        for (int p = 0; p < r; ++p)
            for (int q = p + 1; q < r; ++q) b.add_clause({-var(v, p), -var(v, q)});
    }
    for (const auto& e : h.edges()) {
        for (int p = 0; p < r; ++p) {
            std::vector<int> cl;
            cl.reserve(e.size());
            for (int v : e) cl.push_back(-var(v, p));
            b.add_clause(cl);
        }
    }
    return b.take();
}

namespace detail {

// Restricted-growth enumeration: vertex 0 sits in part 0 and a new part
// index may only follow all smaller ones, killing part-permutation symmetry.
inline bool brute_colour(const Hypergraph& h, int r, std::uint64_t max_assignments,
                         std::vector<int>& out) {
    const int n = h.vertex_count();
    if (n == 0) {
        out.clear();
        return true;
    }
    // edges fully determined once their max vertex is assigned
    std::vector<std::vector<int>> edges_closing_at(static_cast<std::size_t>(n));
    for (std::size_t ei = 0; ei < h.edge_count(); ++ei)
        edges_closing_at[static_cast<std::size_t>(h.edges()[ei].back())].push_back(static_cast<int>(ei));

    std::uint64_t visited = 0;
    std::vector<int> part(static_cast<std::size_t>(n), -1);
    auto dfs = [&](auto&& self, int v, int used_parts) -> bool {
        if (v == n) {
            out = part;
            return true;
        }
        const int limit = std::min(used_parts + 1, r);
        for (int p = 0; p < limit; ++p) {
            if (++visited > max_assignments)
                throw_guard("brute colouring guard: more than " + std::to_string(max_assignments) +
                            " assignments");
            part[static_cast<std::size_t>(v)] = p;
            bool ok = true;
            for (int ei : edges_closing_at[static_cast<std::size_t>(v)]) {
                const auto& e = h.edges()[static_cast<std::size_t>(ei)];
                bool mono = true;
                for (std::size_t i = 1; i < e.size(); ++i)
                    if (part[static_cast<std::size_t>(e[i])] != part[static_cast<std::size_t>(e[0])]) {
                        mono = false;
                        break;
                    }
                if (mono) {
                    ok = false;
                    break;
                }
            }
            if (ok && self(self, v + 1, std::max(used_parts, p + 1))) return true;
            part[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    return dfs(dfs, 0, 0);
}

} // namespace detail

// Weak r-colouring: no edge inside a single part. A positive answer is
// re-verified by an independent monochromatic-edge scan before returning;
// NotColourable comes only from brute-force exhaustion or a solver UNSAT.
inline ColourOutcome colour(const Hypergraph& h, int r, ColourBackend backend,
                            const ColourOptions& opts = {}) {
    if (r < 1) throw_invalid("colour: r must be >= 1");
    ColourOutcome out;
    if (backend == ColourBackend::Brute) {
        out.backend = "brute";
        std::vector<int> part;
        if (detail::brute_colour(h, r, opts.brute_max_assignments, part)) {
            if (!valid_colouring(h, part, r)) throw_logic("colour: brute search returned invalid colouring");
            out.status = ColourOutcome::Status::Colourable;
            out.colouring.part = std::move(part);
        } else {
            out.status = ColourOutcome::Status::NotColourable;
        }
        return out;
    }
    const CnfInstance inst = encode_colouring_cnf(h, r);
    const SolverVerdict v = run_backend(inst, opts.sat_backend);
    out.backend = "sat/" + v.backend;
    switch (v.status) {
        case SolverVerdict::Status::Sat: {
            std::vector<int> part(static_cast<std::size_t>(h.vertex_count()), -1);
            for (int vtx = 0; vtx < h.vertex_count(); ++vtx)
                for (int p = 0; p < r; ++p)
                    if (v.model[static_cast<std::size_t>(vtx * r + p + 1)]) {
                        part[static_cast<std::size_t>(vtx)] = p;
                        break;
                    }
            if (!valid_colouring(h, part, r)) throw_logic("colour: SAT model decodes to invalid colouring");
            out.status = ColourOutcome::Status::Colourable;
            out.colouring.part = std::move(part);
            break;
        }
        case SolverVerdict::Status::Unsat:
            out.status = ColourOutcome::Status::NotColourable;
            break;
        case SolverVerdict::Status::Unknown:
            out.status = ColourOutcome::Status::Unknown;
            out.message = v.message;
            break;
    }
    return out;
}

} // namespace khg
