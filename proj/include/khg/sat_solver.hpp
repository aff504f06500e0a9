#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "khg/error.hpp"

namespace khg {

// Conflict-driven clause learning solver: two-watched literals, 1UIP
// learning, VSIDS activities with phase saving, Luby restarts. Sized for
// the instances this toolkit produces (hundreds to a few thousand
// variables), not for industrial benchmarks.
class SatSolver {
public:
    enum class Result { Sat, Unsat, Unknown };

    struct Config {
        bool default_polarity = false;
        double var_decay = 0.95;
        std::optional<std::uint64_t> conflict_budget;
    };

    explicit SatSolver(int nvars) : SatSolver(nvars, Config()) {}

    SatSolver(int nvars, Config cfg) : nvars_(nvars), cfg_(cfg) {
        assigns_.assign(static_cast<std::size_t>(nvars) + 1, -1);
        level_.assign(static_cast<std::size_t>(nvars) + 1, 0);
        reason_.assign(static_cast<std::size_t>(nvars) + 1, -1);
        activity_.assign(static_cast<std::size_t>(nvars) + 1, 0.0);
        polarity_.assign(static_cast<std::size_t>(nvars) + 1, cfg.default_polarity);
        seen_.assign(static_cast<std::size_t>(nvars) + 1, false);
        watches_.assign(2 * (static_cast<std::size_t>(nvars) + 1), {});
    }

    // Literals in DIMACS convention: +v / -v, 1 <= v <= nvars.
    void add_clause(std::vector<int> lits) {
        std::sort(lits.begin(), lits.end(), [](int a, int b) { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b); });
        std::vector<int> enc;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            const int l = lits[i];
            if (l == 0 || std::abs(l) > nvars_) throw_invalid("sat: literal out of range");
            if (i > 0 && l == lits[i - 1]) continue;                 // duplicate
            if (i > 0 && l == -lits[i - 1]) return;                  // tautology
            enc.push_back(encode(l));
        }
        if (enc.empty()) {
            unsat_at_root_ = true;
            return;
        }
        if (enc.size() == 1) {
            pending_units_.push_back(enc[0]);
            return;
        }
        const int ci = static_cast<int>(clauses_.size());
        clauses_.push_back(std::move(enc));
        watches_[static_cast<std::size_t>(clauses_[static_cast<std::size_t>(ci)][0])].push_back(ci);
        watches_[static_cast<std::size_t>(clauses_[static_cast<std::size_t>(ci)][1])].push_back(ci);
    }

    Result solve() {
        if (unsat_at_root_) return Result::Unsat;
        for (int v = 1; v <= nvars_; ++v) order_.push({0.0, v});
        for (int l : pending_units_) {
            if (value(l) == 0) return Result::Unsat;
            if (value(l) < 0 && !enqueue(l, -1)) return Result::Unsat;
        }
        std::uint64_t conflicts = 0;
        int restart_count = 0;
        std::uint64_t restart_limit = 128 * luby(restart_count);
        for (;;) {
            const int confl = propagate();
            if (confl >= 0) {
                ++conflicts;
                if (current_level() == 0) return Result::Unsat;
                std::vector<int> learnt;
                int bt_level = 0;
                analyze(confl, learnt, bt_level);
                backtrack(bt_level);
                if (learnt.size() == 1) {
                    if (!enqueue(learnt[0], -1)) return Result::Unsat;
                } else {
                    const int ci = static_cast<int>(clauses_.size());
                    clauses_.push_back(learnt);
                    watches_[static_cast<std::size_t>(learnt[0])].push_back(ci);
                    watches_[static_cast<std::size_t>(learnt[1])].push_back(ci);
                    enqueue(learnt[0], ci);
                }
                var_inc_ /= cfg_.var_decay;
                if (var_inc_ > 1e100) rescale_activities();
                if (cfg_.conflict_budget && conflicts >= *cfg_.conflict_budget) return Result::Unknown;
                if (conflicts >= restart_limit) {
                    ++restart_count;
                    restart_limit = conflicts + 128 * luby(restart_count);
                    backtrack(0);
                }
            } else {
                const int next = pick_branch_var();
                if (next == 0) {
                    save_model();
                    return Result::Sat;
                }
                trail_lim_.push_back(static_cast<int>(trail_.size()));
                enqueue(2 * next + (polarity_[static_cast<std::size_t>(next)] ? 0 : 1), -1);
            }
        }
    }

    // Meaningful after solve() returned Sat. model()[v] for v in 1..nvars.
    const std::vector<bool>& model() const { return model_; }

private:
    static int encode(int dimacs_lit) {
        const int v = std::abs(dimacs_lit);
        return 2 * v + (dimacs_lit < 0 ? 1 : 0);
    }
    static int var_of(int enc) { return enc >> 1; }
    static int negate(int enc) { return enc ^ 1; }

    // 1 true, 0 false, -1 unassigned (for an encoded literal)
    int value(int enc) const {
        const int a = assigns_[static_cast<std::size_t>(var_of(enc))];
        if (a < 0) return -1;
        return (a == ((enc & 1) ? 0 : 1)) ? 1 : 0;
    }

    int current_level() const { return static_cast<int>(trail_lim_.size()); }

    bool enqueue(int enc, int reason_clause) {
        const int v = var_of(enc);
        if (assigns_[static_cast<std::size_t>(v)] >= 0) return value(enc) == 1;
        assigns_[static_cast<std::size_t>(v)] = (enc & 1) ? 0 : 1;
        polarity_[static_cast<std::size_t>(v)] = !(enc & 1);
        level_[static_cast<std::size_t>(v)] = current_level();
        reason_[static_cast<std::size_t>(v)] = reason_clause;
        trail_.push_back(enc);
        return true;
    }

    int propagate() {
        while (qhead_ < trail_.size()) {
            const int p = trail_[qhead_++];
            const int np = negate(p);
            auto& ws = watches_[static_cast<std::size_t>(np)];
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                const int ci = ws[i];
                auto& c = clauses_[static_cast<std::size_t>(ci)];
                if (c[0] == np) std::swap(c[0], c[1]);
                if (value(c[0]) == 1) {
                    ws[j++] = ws[i++];
                    continue;
                }
                bool moved = false;
                for (std::size_t t = 2; t < c.size(); ++t) {
                    if (value(c[t]) != 0) {
                        std::swap(c[1], c[t]);
                        watches_[static_cast<std::size_t>(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) {
                    ++i;
                    continue;
                }
                ws[j++] = ws[i++];
                if (value(c[0]) == 0) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    return ci;
                }
                enqueue(c[0], ci);
            }
            ws.resize(j);
        }
        return -1;
    }

    void analyze(int confl, std::vector<int>& learnt, int& bt_level) {
        learnt.assign(1, 0);
        int counter = 0;
        int p = -1;
        std::size_t index = trail_.size();
        do {
            const auto& c = clauses_[static_cast<std::size_t>(confl)];
            for (const int q : c) {
                if (p >= 0 && q == p) continue;
                const int v = var_of(q);
                if (!seen_[static_cast<std::size_t>(v)] && level_[static_cast<std::size_t>(v)] > 0) {
                    seen_[static_cast<std::size_t>(v)] = true;
                    bump(v);
                    if (level_[static_cast<std::size_t>(v)] >= current_level())
                        ++counter;
                    else
                        learnt.push_back(negate(q) ^ 1); // keep q's own polarity
                }
            }
            while (!seen_[static_cast<std::size_t>(var_of(trail_[index - 1]))]) --index;
            p = trail_[index - 1];
            --index;
            confl = reason_[static_cast<std::size_t>(var_of(p))];
            seen_[static_cast<std::size_t>(var_of(p))] = false;
            --counter;
        } while (counter > 0);
        learnt[0] = negate(p);
        bt_level = 0;
        if (learnt.size() > 1) {
            std::size_t max_i = 1;
            for (std::size_t i = 2; i < learnt.size(); ++i)
                if (level_[static_cast<std::size_t>(var_of(learnt[i]))] >
                    level_[static_cast<std::size_t>(var_of(learnt[max_i]))])
                    max_i = i;
            std::swap(learnt[1], learnt[max_i]);
            bt_level = level_[static_cast<std::size_t>(var_of(learnt[1]))];
        }
        for (const int l : learnt) seen_[static_cast<std::size_t>(var_of(l))] = false;
    }

    void backtrack(int to_level) {
        if (current_level() <= to_level) return;
        const int bound = trail_lim_[static_cast<std::size_t>(to_level)];
        for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
            const int v = var_of(trail_[static_cast<std::size_t>(i)]);
            assigns_[static_cast<std::size_t>(v)] = -1;
            reason_[static_cast<std::size_t>(v)] = -1;
            order_.push({activity_[static_cast<std::size_t>(v)], v});
        }
        trail_.resize(static_cast<std::size_t>(bound));
        trail_lim_.resize(static_cast<std::size_t>(to_level));
        qhead_ = trail_.size();
    }

    void bump(int v) {
        activity_[static_cast<std::size_t>(v)] += var_inc_;
        if (activity_[static_cast<std::size_t>(v)] > 1e100) rescale_activities();
        order_.push({activity_[static_cast<std::size_t>(v)], v});
    }

    void rescale_activities() {
        for (auto& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
        if (var_inc_ < 1e-100) var_inc_ = 1.0;
    }

    int pick_branch_var() {
        while (!order_.empty()) {
            const auto [act, v] = order_.top();
            if (assigns_[static_cast<std::size_t>(v)] < 0 && act == activity_[static_cast<std::size_t>(v)])
                return v;
            order_.pop();
        }
        for (int v = 1; v <= nvars_; ++v)
            if (assigns_[static_cast<std::size_t>(v)] < 0) return v;
        return 0;
    }

    void save_model() {
        model_.assign(static_cast<std::size_t>(nvars_) + 1, false);
        for (int v = 1; v <= nvars_; ++v) model_[static_cast<std::size_t>(v)] = assigns_[static_cast<std::size_t>(v)] == 1;
    }

    static std::uint64_t luby(int i) {
        // Luby sequence: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
        for (std::uint64_t k = 1; k < 64; ++k) {
            if (i + 1 == (1LL << k) - 1) return 1ULL << (k - 1);
            if (i + 1 < (1LL << k) - 1) return luby(i - static_cast<int>((1ULL << (k - 1))) + 1);
        }
        return 1;
    }

    int nvars_;
    Config cfg_;
    bool unsat_at_root_ = false;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_; // by encoded literal
    std::vector<int> pending_units_;
    std::vector<signed char> assigns_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<double> activity_;
    std::vector<bool> polarity_;
    std::vector<bool> seen_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    double var_inc_ = 1.0;
    std::priority_queue<std::pair<double, int>> order_;
    std::vector<bool> model_;
};

} // namespace khg
