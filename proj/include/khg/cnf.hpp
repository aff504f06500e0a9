#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "khg/error.hpp"

namespace khg {

// CNF with a designated block of "payload" variables 1..n_payload_vars
// (edge variables, for the co-ex encoding); auxiliary counter variables sit
// above. Clauses hold DIMACS-style signed literals.
struct CnfInstance {
    int n_vars = 0;
    int n_payload_vars = 0;
    std::vector<std::vector<int>> clauses;
    // encode-time bookkeeping, used by tests and diagnostics
    int n_cardinality_groups = 0;
    int n_blocking_clauses = 0;
};

class CnfBuilder {
public:
    explicit CnfBuilder(int payload_vars) {
        inst_.n_vars = payload_vars;
        inst_.n_payload_vars = payload_vars;
    }

    int new_var() { return ++inst_.n_vars; }

    void add_clause(std::vector<int> lits) {
        if (lits.empty()) throw_logic("cnf: attempted to add an empty clause at encode time");
        for (int l : lits)
            if (l == 0 || std::abs(l) > inst_.n_vars) throw_logic("cnf: literal out of range");
        inst_.clauses.push_back(std::move(lits));
    }

    // Sinz sequential-counter encoding of "at most bound of lits are true".
    // Arc-consistent, linear number of clauses.
    void add_at_most(const std::vector<int>& lits, int bound) {
        const int m = static_cast<int>(lits.size());
        if (bound < 0) throw_logic("cnf: at-most with negative bound");
        if (bound == 0) {
            for (int l : lits) add_clause({-l});
            return;
        }
        if (bound >= m) return;
        // registers r[i][j]: among the first i+1 literals, at least j+1 true
        std::vector<std::vector<int>> reg(static_cast<std::size_t>(m - 1),
                                          std::vector<int>(static_cast<std::size_t>(bound)));
        for (auto& row : reg)
            for (auto& v : row) v = new_var();
        add_clause({-lits[0], reg[0][0]});
        for (int j = 1; j < bound; ++j) add_clause({-reg[0][static_cast<std::size_t>(j)]});
        for (int i = 1; i < m - 1; ++i) {
            add_clause({-lits[static_cast<std::size_t>(i)], reg[static_cast<std::size_t>(i)][0]});
            add_clause({-reg[static_cast<std::size_t>(i - 1)][0], reg[static_cast<std::size_t>(i)][0]});
            for (int j = 1; j < bound; ++j) {
                add_clause({-lits[static_cast<std::size_t>(i)], -reg[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)],
                            reg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
                add_clause({-reg[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)],
                            reg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
            }
            add_clause({-lits[static_cast<std::size_t>(i)], -reg[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(bound - 1)]});
        }
        add_clause({-lits[static_cast<std::size_t>(m - 1)], -reg[static_cast<std::size_t>(m - 2)][static_cast<std::size_t>(bound - 1)]});
    }

    // "at least bound of lits are true" = at most (|lits| - bound) of the
    // negations. bound > |lits| is unencodable without an empty clause and
    // must be rejected upstream.
    void add_at_least(const std::vector<int>& lits, int bound) {
        const int m = static_cast<int>(lits.size());
        if (bound <= 0) return;
        if (bound > m) throw_logic("cnf: at-least bound exceeds literal count");
        if (bound == m) {
            for (int l : lits) add_clause({l});
            return;
        }
        std::vector<int> neg(lits.size());
        for (std::size_t i = 0; i < lits.size(); ++i) neg[i] = -lits[i];
        add_at_most(neg, m - bound);
    }

    CnfInstance take() { return std::move(inst_); }
    CnfInstance& instance() { return inst_; }

private:
    CnfInstance inst_;
};

// DIMACS text: "p cnf <vars> <clauses>" then zero-terminated literal lines.
inline std::string to_dimacs(const CnfInstance& inst) {
    std::string out = "p cnf " + std::to_string(inst.n_vars) + " " + std::to_string(inst.clauses.size()) + "\n";
    for (const auto& c : inst.clauses) {
        for (int l : c) {
            out += std::to_string(l);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

inline CnfInstance parse_dimacs(std::string_view text) {
    CnfInstance inst;
    bool have_header = false;
    long long want_clauses = -1;
    std::vector<int> cur;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos) ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            if (have_header) throw_format("dimacs: duplicate header");
            long long nv = 0, nc = 0;
            if (std::sscanf(std::string(line).c_str(), "p cnf %lld %lld", &nv, &nc) != 2)
                throw_format("dimacs: malformed header at line " + std::to_string(line_no));
            inst.n_vars = static_cast<int>(nv);
            inst.n_payload_vars = static_cast<int>(nv);
            want_clauses = nc;
            have_header = true;
            continue;
        }
        if (!have_header) throw_format("dimacs: clause before header");
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            if (i >= line.size()) break;
            long long v = 0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
            if (ec != std::errc()) throw_format("dimacs: bad literal at line " + std::to_string(line_no));
            i = static_cast<std::size_t>(ptr - line.data());
            if (v == 0) {
                inst.clauses.push_back(cur);
                cur.clear();
            } else {
                if (std::abs(v) > inst.n_vars) throw_format("dimacs: literal out of range at line " + std::to_string(line_no));
                cur.push_back(static_cast<int>(v));
            }
        }
    }
    if (!cur.empty()) throw_format("dimacs: unterminated final clause");
    if (want_clauses >= 0 && static_cast<long long>(inst.clauses.size()) != want_clauses)
        throw_format("dimacs: clause count mismatch");
    return inst;
}

} // namespace khg
