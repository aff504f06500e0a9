#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "khg/error.hpp"
#include "khg/hypergraph.hpp"

namespace khg {

// .khg text format:
//   optional comment lines   "c ..."
//   header                   "p khg <k> <n> <m>"
//   exactly m edge lines     "e v_1 ... v_k"   with 0 <= v_1 < ... < v_k < n
// Lines end with LF; numbers are ASCII decimal. write_khg emits edges in
// canonical (lexicographic) order, so write ∘ parse ∘ write is stable.

inline std::string write_khg(const Hypergraph& h) {
    std::string out = "p khg " + std::to_string(h.uniformity()) + " " + std::to_string(h.vertex_count()) +
                      " " + std::to_string(h.edge_count()) + "\n";
    for (const auto& e : h.edges()) {
        out += 'e';
        for (int v : e) {
            out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<long long> parse_int_fields(std::string_view s, const std::string& where) {
    std::vector<long long> vals;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ') {
            ++i;
            continue;
        }
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
        if (ec != std::errc())
            throw_format(where + ": expected integer near '" + std::string(s.substr(i)) + "'");
        vals.push_back(v);
        i = static_cast<std::size_t>(ptr - s.data());
    }
    return vals;
}

} // namespace detail

inline Hypergraph parse_khg(std::string_view text) {
    std::size_t pos = 0;
    bool have_header = false;
    long long k = 0, n = 0, m = 0;
    std::vector<std::vector<int>> edges;
    int line_no = 0;
    while (pos <= text.size()) {
        if (pos == text.size()) break;
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos) ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == 'c') continue;
        if (line[0] == 'p') {
            if (have_header) throw_format("line " + std::to_string(line_no) + ": duplicate header");
            if (line.substr(0, 6) != "p khg ")
                throw_format("line " + std::to_string(line_no) + ": malformed header (want 'p khg k n m')");
            auto vals = detail::parse_int_fields(line.substr(6), "header");
            if (vals.size() != 3) throw_format("header: expected 3 integers k n m");
            k = vals[0];
            n = vals[1];
            m = vals[2];
            if (k < 2 || n < 0 || m < 0) throw_format("header: invalid k/n/m values");
            have_header = true;
            continue;
        }
        if (line[0] == 'e') {
            if (!have_header) throw_format("line " + std::to_string(line_no) + ": edge before header");
            if (line.size() < 2 || line[1] != ' ')
                throw_format("line " + std::to_string(line_no) + ": malformed edge line");
            auto vals = detail::parse_int_fields(line.substr(2), "edge line " + std::to_string(line_no));
            if (static_cast<long long>(vals.size()) != k)
                throw_format("line " + std::to_string(line_no) + ": arity mismatch (got " +
                             std::to_string(vals.size()) + " vertices, k = " + std::to_string(k) + ")");
            std::vector<int> e;
            e.reserve(vals.size());
            for (long long v : vals) {
                if (v < 0 || v >= n)
                    throw_format("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                                 " out of range [0," + std::to_string(n) + ")");
                e.push_back(static_cast<int>(v));
            }
            edges.push_back(std::move(e));
            continue;
        }
        throw_format("line " + std::to_string(line_no) + ": unrecognized line type '" +
                     std::string(1, line[0]) + "'");
    }
    if (!have_header) throw_format("missing 'p khg' header");
    if (static_cast<long long>(edges.size()) != m)
        throw_format("edge count mismatch: header says " + std::to_string(m) + ", found " +
                     std::to_string(edges.size()));
    try {
        return Hypergraph::create(static_cast<int>(k), static_cast<int>(n), std::move(edges));
    } catch (const Error& e) {
        throw_format(std::string("invalid hypergraph: ") + e.what());
    }
}

inline Hypergraph load_khg_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_format("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_khg(ss.str());
}

inline void save_khg_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_format("cannot write '" + path + "'");
    out << write_khg(h);
}

} // namespace khg
