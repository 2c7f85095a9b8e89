#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "symrank/completion.hpp"
#include "symrank/errors.hpp"
#include "symrank/graph.hpp"
#include "symrank/linalg.hpp"
#include "symrank/rng.hpp"

namespace symrank {

struct OracleConfig {
    int restarts = 20;
    int max_iter = 2000;     // per start
    double opt_tol = 1e-7;   // residual acceptance threshold
    double rank_tol = 1e-8;  // eigenvalue threshold for witness ranks
    std::uint64_t seed = 42;
    std::optional<std::pair<int, int>> rank_range; // scan window, defaults to [lower bound, n]
    int size_limit = 10;

    Tolerance tolerance() const { return Tolerance(rank_tol, opt_tol); }
};

namespace detail {

/// Maximal vertex sets whose principal submatrix is fully specified
/// (every loop and every pair present): cliques among the looped vertices.
inline std::vector<std::vector<int>> specified_cliques(const SemisimpleGraph& g) {
    std::vector<int> looped;
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (g.has_loop(v)) looped.push_back(v);
    const int m = static_cast<int>(looped.size());
    std::vector<std::uint32_t> adj(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (g.has_edge(looped[a], looped[b])) {
                adj[a] |= 1u << b;
                adj[b] |= 1u << a;
            }
    std::vector<std::vector<int>> out;
    // Bron-Kerbosch, pivotless; fine at this scale.
    auto expand = [&](auto&& self, std::uint32_t r, std::uint32_t p,
                      std::uint32_t x) -> void {
        if (p == 0 && x == 0) {
            std::vector<int> clique;
            for (int i = 0; i < m; ++i)
                if (r & (1u << i)) clique.push_back(looped[i]);
            if (!clique.empty()) out.push_back(clique);
            return;
        }
        std::uint32_t iter = p;
        while (iter) {
            const int v = std::countr_zero(iter);
            iter &= iter - 1;
            self(self, r | (1u << v), p & adj[v], x & adj[v]);
            p &= ~(1u << v);
            x |= 1u << v;
        }
    };
    if (m > 0) expand(expand, 0, (m == 32 ? ~0u : (1u << m) - 1u), 0);
    return out;
}

struct SpecifiedEntry {
    int i, j; // 0-based, i <= j
    double v;
};

struct FitResult {
    bool accepted = false;
    Eigen::MatrixXd factor; // n x r
    double residual = 0.0;  // sum of squares over specified entries
};

/// Levenberg-Marquardt least squares for F with R = F S F^T matching the
/// specified entries; S = diag(+1 x positives, -1 x rest).
inline FitResult fit_factorization(const std::vector<SpecifiedEntry>& entries, int n,
                                   int r, int positives, double accept, Rng& rng,
                                   int max_iter, double init_scale) {
    FitResult out;
    if (r == 0) {
        out.factor = Eigen::MatrixXd::Zero(n, 0);
        double f = 0.0;
        for (const auto& e : entries) f += e.v * e.v;
        out.residual = f;
        out.accepted = f <= accept;
        return out;
    }
    Eigen::VectorXd sig(r);
    for (int c = 0; c < r; ++c) sig(c) = c < positives ? 1.0 : -1.0;

    Eigen::MatrixXd f_cur(n, r);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < r; ++c) f_cur(i, c) = init_scale * rng.normal();

    const int m = static_cast<int>(entries.size());
    const int p = n * r;
    const double polish = 1e-12 * accept;

    auto residuals = [&](const Eigen::MatrixXd& f) {
        Eigen::VectorXd e(m);
        for (int k = 0; k < m; ++k) {
            const auto& en = entries[k];
            double rij = 0.0;
            for (int c = 0; c < r; ++c) rij += f(en.i, c) * sig(c) * f(en.j, c);
            e(k) = rij - en.v;
        }
        return e;
    };

    Eigen::VectorXd err = residuals(f_cur);
    double cost = err.squaredNorm();
    double lambda = 1e-3;
    int plateau = 0;
    Eigen::MatrixXd jac(m, p);
    for (int iter = 0; iter < max_iter && cost > polish; ++iter) {
        jac.setZero();
        for (int k = 0; k < m; ++k) {
            const auto& en = entries[k];
            for (int c = 0; c < r; ++c) {
                jac(k, en.i * r + c) += sig(c) * f_cur(en.j, c);
                jac(k, en.j * r + c) += sig(c) * f_cur(en.i, c);
            }
        }
        const Eigen::VectorXd grad = jac.transpose() * err;
        if (grad.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + cost)) break;
        const Eigen::MatrixXd hess = jac.transpose() * jac;
        const double damping_floor = 1e-12 * (1.0 + hess.diagonal().maxCoeff());

        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::MatrixXd damped = hess;
            damped.diagonal() += lambda * hess.diagonal().cwiseMax(damping_floor);
            const Eigen::VectorXd step = damped.ldlt().solve(-grad);
            Eigen::MatrixXd f_next = f_cur;
            for (int i = 0; i < n; ++i)
                for (int c = 0; c < r; ++c) f_next(i, c) += step(i * r + c);
            const Eigen::VectorXd err_next = residuals(f_next);
            const double cost_next = err_next.squaredNorm();
            if (cost_next < cost) {
                const double drop = cost - cost_next;
                f_cur = std::move(f_next);
                err = err_next;
                cost = cost_next;
                lambda = std::max(lambda / 3.0, 1e-13);
                improved = true;
                // Feasible fits keep shrinking by large factors; a long run of
                // microscopic relative drops means a positive local minimum.
                plateau = drop <= 1e-5 * cost ? plateau + 1 : 0;
                break;
            }
            lambda *= 4.0;
            if (lambda > 1e13) break;
        }
        if (!improved || plateau >= 15) break;
    }
    out.factor = std::move(f_cur);
    out.residual = cost;
    out.accepted = cost <= accept;
    return out;
}

inline std::vector<SpecifiedEntry> specified_entries(const PartialSymmetricMatrix& m) {
    std::vector<SpecifiedEntry> out;
    for (const auto& [e, v] : m.values())
        out.push_back({e.first - 1, e.second - 1, v});
    return out;
}

} // namespace detail

struct MinRankResult {
    int rank = 0;
    SymmetricMatrix witness;    // specified entries exact, unknowns from the fit
    double residual = 0.0;      // fit residual (0 when the zero-fill fallback ran)
    int lower_bound = 0;        // largest fully specified principal submatrix rank
    bool near_boundary_input = false;
};

namespace detail {

struct RankAttempt {
    bool success = false;
    SymmetricMatrix witness;
    double residual = 0.0;
    int witness_rank = 0;
};

inline RankAttempt attempt_rank(const PartialSymmetricMatrix& m,
                                const std::vector<SpecifiedEntry>& entries, int r,
                                const OracleConfig& cfg, std::uint64_t salt) {
    const int n = m.size();
    const Tolerance tol = cfg.tolerance();
    double ssq = 0.0;
    for (const auto& e : entries) ssq += e.v * e.v;
    const double accept = cfg.opt_tol * (1.0 + ssq);
    const double rms = std::sqrt(ssq / std::max<std::size_t>(1, entries.size()));
    const double init_scale =
        std::sqrt(std::max(rms, 0.05)) / std::pow(std::max(r, 1), 0.25);

    RankAttempt out;
    for (int t = 0; t < cfg.restarts; ++t) {
        for (int positives = 0; positives <= r; ++positives) {
            Rng rng(derive_seed(cfg.seed, {salt, 0x0A11u, static_cast<std::uint64_t>(r),
                                           static_cast<std::uint64_t>(positives),
                                           static_cast<std::uint64_t>(t)}));
            const FitResult fit = detail::fit_factorization(
                entries, n, r, positives, accept, rng, cfg.max_iter, init_scale);
            if (!fit.accepted) continue;
            Eigen::MatrixXd low_rank = Eigen::MatrixXd::Zero(n, n);
            if (r > 0) {
                Eigen::VectorXd sig(r);
                for (int c = 0; c < r; ++c) sig(c) = c < positives ? 1.0 : -1.0;
                low_rank = fit.factor * sig.asDiagonal() * fit.factor.transpose();
            }
            SymmetricMatrix witness = m.zero_fill();
            for (const Edge& e : m.unknowns())
                witness.set(e.first, e.second, low_rank(e.first - 1, e.second - 1));
            const int k = numeric_rank(witness, tol);
            if (k <= r) {
                out.success = true;
                out.witness = std::move(witness);
                out.residual = fit.residual;
                out.witness_rank = k;
                return out;
            }
        }
    }
    return out;
}

} // namespace detail

/// True when the factored fit certifies that m admits a completion of rank
/// at most r (witness checked by residual and eigenvalue count).
inline bool rank_feasible(const PartialSymmetricMatrix& m, int r, const OracleConfig& cfg,
                          std::uint64_t salt = 0) {
    if (m.size() > cfg.size_limit)
        throw SizeLimitError("oracle limited to " + std::to_string(cfg.size_limit) +
                             " vertices");
    if (r < 0 || r > m.size()) return false;
    return detail::attempt_rank(m, detail::specified_entries(m), r, cfg, salt).success;
}

/// Smallest completion rank the multi-start factored optimization certifies:
/// scans r upward from the largest fully specified principal submatrix rank;
/// each accepted fit is re-verified through the witness's eigenvalues.
inline MinRankResult min_rank_complete(const PartialSymmetricMatrix& m,
                                       const OracleConfig& cfg, std::uint64_t salt = 0) {
    const int n = m.size();
    if (n > cfg.size_limit)
        throw SizeLimitError("oracle limited to " + std::to_string(cfg.size_limit) +
                             " vertices");
    const Tolerance tol = cfg.tolerance();
    const auto entries = detail::specified_entries(m);

    MinRankResult result;
    const SymmetricMatrix m0 = m.zero_fill();
    for (const auto& clique : detail::specified_cliques(m.pattern())) {
        const auto ir = inertia_with_flag(principal_submatrix(m0, clique), tol);
        result.lower_bound = std::max(result.lower_bound, ir.inertia.rank());
        result.near_boundary_input |= ir.near_boundary;
    }

    int lo = result.lower_bound, hi = n;
    if (cfg.rank_range) {
        lo = std::max(lo, cfg.rank_range->first);
        hi = std::min(hi, cfg.rank_range->second);
    }
    for (int r = lo; r <= hi; ++r) {
        if (r >= n) break; // the zero-fill handles full size exactly
        auto attempt = detail::attempt_rank(m, entries, r, cfg, salt);
        if (attempt.success) {
            result.rank = attempt.witness_rank;
            result.witness = std::move(attempt.witness);
            result.residual = attempt.residual;
            return result;
        }
    }
    if (hi >= n) {
        result.witness = m0;
        result.rank = numeric_rank(m0, tol);
        result.residual = 0.0;
        return result;
    }
    throw NumericError("no rank in the requested scan range produced a completion");
}

struct TypicalRankEstimate {
    int samples = 0;
    std::map<int, int> counts;        // rank -> sample count
    std::map<int, double> histogram;  // rank -> frequency
    std::vector<int> declared;        // ranks at or above the typicality threshold
    double threshold = 0.02;
    std::uint64_t seed = 0;
    int degenerate_resamples = 0;
};

/// Monte Carlo typical-rank estimate: i.i.d. standard normal values on the
/// pattern edges, minimum completion rank per sample, histogram over samples.
/// Samples whose fully specified blocks sit near the rank tolerance are
/// redrawn (and counted). Deterministic for a fixed seed, threaded or not.
inline TypicalRankEstimate typical_rank_sample(const SemisimpleGraph& g, int n_samples,
                                               const OracleConfig& cfg,
                                               double threshold = 0.02, int threads = 1) {
    if (n_samples <= 0) throw InputError("sample count must be positive");
    if (threshold <= 0.0 || threshold >= 1.0)
        throw InputError("typicality threshold must lie in (0, 1)");
    const Tolerance tol = cfg.tolerance();

    std::vector<int> ranks(n_samples, -1);
    std::vector<int> resamples(n_samples, 0);
    auto run_sample = [&](int s) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            Rng rng(derive_seed(cfg.seed, {0x5A3Bu, static_cast<std::uint64_t>(s),
                                           static_cast<std::uint64_t>(attempt)}));
            const auto m = PartialSymmetricMatrix::random(g, rng);
            bool degenerate = false;
            const SymmetricMatrix m0 = m.zero_fill();
            for (const auto& clique : detail::specified_cliques(g)) {
                if (inertia_with_flag(principal_submatrix(m0, clique), tol).near_boundary) {
                    degenerate = true;
                    break;
                }
            }
            if (degenerate) {
                ++resamples[s];
                continue;
            }
            ranks[s] = min_rank_complete(m, cfg,
                                         derive_seed(0x9C0Du, {static_cast<std::uint64_t>(s),
                                                               static_cast<std::uint64_t>(attempt)}))
                           .rank;
            return;
        }
        throw NonGenericInputError("every redraw of a sample stayed degenerate");
    };

    threads = std::max(1, threads);
    if (threads == 1) {
        for (int s = 0; s < n_samples; ++s) run_sample(s);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (int s = w; s < n_samples; s += threads) run_sample(s);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    TypicalRankEstimate est;
    est.samples = n_samples;
    est.threshold = threshold;
    est.seed = cfg.seed;
    for (int s = 0; s < n_samples; ++s) {
        ++est.counts[ranks[s]];
        est.degenerate_resamples += resamples[s];
    }
    for (const auto& [rank, count] : est.counts) {
        const double freq = static_cast<double>(count) / n_samples;
        est.histogram[rank] = freq;
        if (freq >= threshold) est.declared.push_back(rank);
    }
    return est;
}

struct InertiaCensus {
    int samples = 0;
    int certified_full_rank = 0;
    int non_generic_skipped = 0;
    std::map<Inertia, int> counts; // fixed inertia -> certified sample count
    std::vector<std::pair<int, int>> complement_bicolorings; // (reds, blues), distinct
    std::uint64_t seed = 0;
};

/// For each Gaussian sample of a full-rank-typical pattern, certify whether
/// every completion has full rank; record the fixed inertia when it does.
/// Reported next to the exact color-class sizes of the complement's proper
/// 2-colorings, for side-by-side comparison (no conjecture is asserted).
inline InertiaCensus inertia_census(const SemisimpleGraph& g, int n_samples,
                                    const OracleConfig& cfg) {
    if (n_samples <= 0) throw InputError("sample count must be positive");
    if (!is_bipartite(complement(g)).bipartite)
        throw NotFullRankTypicalError("inertia census needs a full-rank-typical pattern");
    const int n = g.vertex_count();
    if (n > 20) throw SizeLimitError("census bicoloring enumeration limited to 20 vertices");
    const Tolerance tol = cfg.tolerance();

    InertiaCensus census;
    census.samples = n_samples;
    census.seed = cfg.seed;

    const SemisimpleGraph comp = complement(g);
    std::set<std::pair<int, int>> colorings;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool proper = true;
        for (const auto& [i, j] : comp.edges()) {
            if (i == j) { proper = false; break; } // loop: never properly colorable
            const bool ci = mask & (1u << (i - 1)), cj = mask & (1u << (j - 1));
            if (ci == cj) { proper = false; break; }
        }
        if (proper)
            colorings.insert({std::popcount(mask), n - std::popcount(mask)});
    }
    census.complement_bicolorings.assign(colorings.begin(), colorings.end());

    for (int s = 0; s < n_samples; ++s) {
        Rng rng(derive_seed(cfg.seed, {0xCE45u, static_cast<std::uint64_t>(s)}));
        const auto m = PartialSymmetricMatrix::random(g, rng);
        try {
            const auto cert = certify_full_rank(m, tol, rng);
            if (cert.verdict == Verdict::all_completions_full_rank)
                ++census.counts[*cert.fixed_inertia];
        } catch (const NonGenericInputError&) {
            ++census.non_generic_skipped;
        }
    }
    for (const auto& [in, count] : census.counts) census.certified_full_rank += count;
    return census;
}

} // namespace symrank
