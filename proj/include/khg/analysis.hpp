#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "khg/coex.hpp"
#include "khg/combinatorics.hpp"
#include "khg/constructions.hpp"
#include "khg/error.hpp"
#include "khg/hypergraph.hpp"
#include "khg/rng.hpp"

namespace khg {

// comparison slack for the log-space inequality checks
inline constexpr double kAnalysisSlack = 1e-12;

inline double log_binom(double n, double kk) {
    if (kk < 0 || kk > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0);
}

namespace detail {

inline bool m_lower_ok(int m, double delta, int k) {
    return static_cast<double>(m) >= 2.0 * (k - 1) / delta - kAnalysisSlack;
}

inline bool m_tail_ok(int m, double delta, int k) {
    // C(m,k-1) * exp(-delta^2 (m-k+1)/12) <= 1/2, in log space
    const double lhs = log_binom(m, k - 1) - delta * delta * (m - k + 1) / 12.0;
    return lhs <= -std::log(2.0) + kAnalysisSlack;
}

inline bool m_ratio_ok(int m, double delta, int k) {
    // (m+1)/(m+2-k) <= exp(delta^2/12): from here on the tail expression is
    // non-increasing, certifying "every m' >= m" from the checks at m alone
    if (m + 2 - k <= 0) return false;
    return std::log(static_cast<double>(m + 1)) - std::log(static_cast<double>(m + 2 - k)) <=
           delta * delta / 12.0 + kAnalysisSlack;
}

} // namespace detail

// Smallest M such that every m >= M satisfies both defining inequalities,
// with the universal quantifier certified by the ratio test holding at M.
inline int compute_M(double delta, int k) {
    if (!(delta > 0.0) || delta > 1.0) throw_invalid("compute_M: need 0 < delta <= 1");
    if (k < 2) throw_invalid("compute_M: need k >= 2");
    for (int m = std::max(k - 1, 1);; ++m) {
        if (m > 100'000'000) throw_guard("compute_M: scan exceeded 1e8");
        if (detail::m_lower_ok(m, delta, k) && detail::m_tail_ok(m, delta, k) &&
            detail::m_ratio_ok(m, delta, k))
            return m;
    }
}

// Exposed for tests and the verification suite.
inline bool compute_M_conditions(int m, double delta, int k, bool with_certificate = true) {
    const bool base = detail::m_lower_ok(m, delta, k) && detail::m_tail_ok(m, delta, k);
    return with_certificate ? base && detail::m_ratio_ok(m, delta, k) : base;
}

// rho = 1/2 (1 - 1/C(l,k-1) + 1/(C(l,k-1) 2^{1/l})); strictly below 1/2.
inline double compute_rho(int k, int ell) {
    if (k < 3) throw_invalid("compute_rho: need k >= 3");
    if (ell < k - 1) throw_invalid("compute_rho: need ell >= k-1");
    const double c = static_cast<double>(binom(static_cast<std::uint64_t>(ell), static_cast<std::uint64_t>(k - 1)));
    const double rho = 0.5 * (1.0 - 1.0 / c + 1.0 / (c * std::exp2(1.0 / ell)));
    if (!(rho < 0.5)) throw_logic("compute_rho: result not below 1/2");
    return rho;
}

// The pair (K^k(l,l), F^k_2) witnesses non-principality with margin
// epsilon = (1/2 - rho)/6 below 1/2.
struct NonprincipalityParams {
    int k = 3;
    int ell = 2;
    double rho = 0.0;
    double epsilon = 0.0;
    // construction references: F1 = gen_ktt(ell, k), F2 = gen_fr(k, 2)
    int f1_t = 0;
    FrParams f2;
};

inline NonprincipalityParams nonprincipality_params(int k, int ell) {
    NonprincipalityParams p;
    p.k = k;
    p.ell = ell;
    p.rho = compute_rho(k, ell);
    p.epsilon = (0.5 - p.rho) / 6.0;
    if (!(p.epsilon > 0.0)) throw_logic("nonprincipality_params: epsilon not positive");
    p.f1_t = ell;
    p.f2 = FrParams{k, 2};
    return p;
}

enum class SampleMode { Auto, Exact, Sampled };

struct SampleResult {
    bool exact = false;
    double fraction = 0.0;
    double stderr_est = 0.0; // 0 in exact mode
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string rng;
};

inline constexpr std::uint64_t kExactSampleCap = 1'000'000;

namespace detail {

inline bool subset_is_dense(const Hypergraph& g, const std::vector<int>& subset, double alpha, int m) {
    const Hypergraph sub = induced(g, subset);
    if (sub.vertex_count() < sub.uniformity() - 1) return false;
    return static_cast<double>(min_codegree(sub)) > alpha * m;
}

// Floyd's sampling: a uniform m-subset of {0..n-1} from draws
// splitmix64_at(seed, trial*m + j) % (n-m+j+1).
inline std::vector<int> sample_subset(int n, int m, std::uint64_t seed, std::uint64_t trial) {
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(m));
    std::uint64_t ctr = trial * static_cast<std::uint64_t>(m);
    for (int j = n - m; j < n; ++j) {
        const int t = static_cast<int>(splitmix64_at(seed, ctr++) % static_cast<std::uint64_t>(j + 1));
        bool present = false;
        for (int c : chosen)
            if (c == t) {
                present = true;
                break;
            }
        chosen.push_back(present ? j : t);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

} // namespace detail

// Estimates P[ delta_{k-1}(G[S]) > alpha * m ] over uniform m-subsets S.
// Exact enumeration when C(n,m) is small enough; otherwise seeded,
// bit-reproducible sampling (counter-based generator, trials splittable).
inline SampleResult sample_dense_msets(const Hypergraph& g, int m, double alpha, std::uint64_t trials,
                                       std::uint64_t seed, SampleMode mode = SampleMode::Auto) {
    const int n = g.vertex_count();
    if (m < g.uniformity() - 1) throw_invalid("sample_dense_msets: need m >= k-1");
    if (m > n) throw_invalid("sample_dense_msets: need m <= n");
    if (trials < 1) throw_invalid("sample_dense_msets: need trials >= 1");
    SampleResult res;
    res.seed = seed;
    res.rng = counter_rng_name();
    const std::uint64_t total = binom_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m),
                                             kExactSampleCap + 1);
    const bool exact = (mode == SampleMode::Exact) ||
                       (mode == SampleMode::Auto && total <= kExactSampleCap);
    if (exact && total > kExactSampleCap)
        throw_guard("sample_dense_msets: exact mode needs C(n,m) <= " + std::to_string(kExactSampleCap));
    if (exact) {
        std::uint64_t dense = 0, seen = 0;
        for_each_combination(n, m, [&](const std::vector<int>& s) {
            ++seen;
            if (detail::subset_is_dense(g, s, alpha, m)) ++dense;
        });
        res.exact = true;
        res.fraction = static_cast<double>(dense) / static_cast<double>(seen);
        res.trials = seen;
        return res;
    }
    std::uint64_t dense = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const auto s = detail::sample_subset(n, m, seed, trial);
        if (detail::subset_is_dense(g, s, alpha, m)) ++dense;
    }
    res.exact = false;
    res.trials = trials;
    res.fraction = static_cast<double>(dense) / static_cast<double>(trials);
    res.stderr_est = std::sqrt(res.fraction * (1.0 - res.fraction) / static_cast<double>(trials));
    return res;
}

struct DensityRow {
    int n = 0;
    int coex = 0;
    double ratio = 0.0;
};

inline std::vector<DensityRow> density_table(const std::vector<Hypergraph>& family, int k, int n_from,
                                             int n_to, const CoexOptions& opts = {}) {
    if (n_from < k || n_to < n_from) throw_invalid("density_table: bad n range");
    std::vector<DensityRow> rows;
    for (int n = n_from; n <= n_to; ++n) {
        const CoexResult r = coex_exact(n, k, family, opts);
        rows.push_back({n, r.t_star, static_cast<double>(r.t_star) / static_cast<double>(n)});
    }
    return rows;
}

inline std::string format_g10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

inline std::string density_table_csv(const std::vector<DensityRow>& rows) {
    std::string out = "n,coex,ratio\n";
    for (const auto& r : rows)
        out += std::to_string(r.n) + "," + std::to_string(r.coex) + "," + format_g10(r.ratio) + "\n";
    return out;
}

} // namespace khg
