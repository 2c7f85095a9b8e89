#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symrank/errors.hpp"
#include "symrank/graph.hpp"
#include "symrank/linalg.hpp"
#include "symrank/rng.hpp"

namespace symrank {

/// The pattern is not full-rank typical, so the requested certification
/// machinery does not apply to it.
class NotFullRankTypicalError : public InputError {
public:
    explicit NotFullRankTypicalError(const std::string& what) : InputError(what) {}
};

/// A symmetric matrix with values on the pattern's edges only; the entries
/// indexed by complement edges (including missing diagonals) are unknown.
class PartialSymmetricMatrix {
public:
    PartialSymmetricMatrix(SemisimpleGraph pattern, std::map<Edge, double> values)
        : pattern_(std::move(pattern)), values_(std::move(values)) {
        for (const auto& [e, v] : values_) {
            if (!pattern_.has_edge(e.first, e.second))
                throw InputError("value on non-edge " + std::to_string(e.first) + " " +
                                 std::to_string(e.second));
            if (!std::isfinite(v)) throw InputError("non-finite entry value");
        }
        if (values_.size() != pattern_.edges().size())
            throw InputError("every pattern edge needs exactly one value");
    }

    /// Pattern inferred from the entry list.
    static PartialSymmetricMatrix from_entries(
        int n, const std::vector<std::tuple<int, int, double>>& entries) {
        SemisimpleGraph g(n);
        std::map<Edge, double> values;
        for (const auto& [i, j, v] : entries) {
            g.add_edge(i, j); // rejects duplicates and bad indices
            values[make_edge(i, j)] = v;
        }
        return PartialSymmetricMatrix(std::move(g), std::move(values));
    }

    /// Values drawn i.i.d. standard normal on the pattern edges (edge order).
    static PartialSymmetricMatrix random(const SemisimpleGraph& pattern, Rng& rng) {
        std::map<Edge, double> values;
        for (const Edge& e : pattern.edges()) values[e] = rng.normal();
        return PartialSymmetricMatrix(pattern, std::move(values));
    }

    const SemisimpleGraph& pattern() const { return pattern_; }
    const std::map<Edge, double>& values() const { return values_; }
    int size() const { return pattern_.vertex_count(); }

    double value(int i, int j) const {
        const auto it = values_.find(make_edge(i, j));
        if (it == values_.end()) throw InputError("entry is not specified");
        return it->second;
    }

    /// Unknown entries: the complement's edges, in lexicographic order.
    std::vector<Edge> unknowns() const {
        const auto comp = complement(pattern_);
        return {comp.edges().begin(), comp.edges().end()};
    }

    /// M(0): all unknowns set to zero.
    SymmetricMatrix zero_fill() const {
        SymmetricMatrix m(size());
        for (const auto& [e, v] : values_) m.set(e.first, e.second, v);
        return m;
    }

    /// M(x): x in unknowns() order.
    SymmetricMatrix complete(const std::vector<double>& x) const {
        const auto unk = unknowns();
        if (x.size() != unk.size())
            throw InputError("completion needs " + std::to_string(unk.size()) +
                             " values, got " + std::to_string(x.size()));
        SymmetricMatrix m = zero_fill();
        for (std::size_t k = 0; k < unk.size(); ++k)
            m.set(unk[k].first, unk[k].second, x[k]);
        return m;
    }

private:
    SemisimpleGraph pattern_;
    std::map<Edge, double> values_;
};

/// Eigenvalue sign disagreement of two full-rank signatures:
/// 0 when (p_A - p_B)(n_A - n_B) >= 0, else min(|p_A - p_B|, |n_A - n_B|).
inline int esd(const Inertia& a, const Inertia& b) {
    if (a.kernel > 0 || b.kernel > 0)
        throw NumericError("esd needs full-rank inertias (kernel must be 0)");
    const long dp = a.positives - b.positives;
    const long dn = a.negatives - b.negatives;
    if (dp * dn >= 0) return 0;
    return static_cast<int>(std::min(std::labs(dp), std::labs(dn)));
}

namespace detail {

inline Inertia full_rank_inertia_or_throw(const SymmetricMatrix& block,
                                          const Tolerance& tol, const char* which) {
    const Inertia in = inertia(block, tol);
    if (in.kernel > 0)
        throw NumericError(std::string(which) + " block is singular at tolerance");
    return in;
}

} // namespace detail

/// Minimal completion rank of [[A, ?], [?, B]] with fully specified full-rank
/// diagonal blocks: max(size A, size B) + esd(A, B).
inline int clique_pair_min_rank(const SymmetricMatrix& a, const SymmetricMatrix& b,
                                const Tolerance& tol = {}) {
    const Inertia ia = detail::full_rank_inertia_or_throw(a, tol, "first");
    const Inertia ib = detail::full_rank_inertia_or_throw(b, tol, "second");
    return std::max(a.size(), b.size()) + esd(ia, ib);
}

struct CliquePairCompletion {
    Eigen::MatrixXd cross_block; // size(a) x size(b)
    SymmetricMatrix assembled;
    int achieved_rank = 0;
};

/// Rank-minimal completion of the two-block pattern. Sign-matched eigenvalue
/// pairs (a_k, b_k) get cross entries sqrt(a_k b_k) in the diagonal frame,
/// cancelling them in the Schur complement; everything else stays zero.
inline CliquePairCompletion clique_pair_complete(const SymmetricMatrix& a,
                                                 const SymmetricMatrix& b,
                                                 const Tolerance& tol = {}) {
    (void)detail::full_rank_inertia_or_throw(a, tol, "first");
    (void)detail::full_rank_inertia_or_throw(b, tol, "second");
    const bool swapped = a.size() < b.size();
    const SymmetricMatrix& big = swapped ? b : a;
    const SymmetricMatrix& small = swapped ? a : b;

    const auto od_big = orthogonal_diagonalize(big);     // descending: positives lead
    const auto od_small = orthogonal_diagonalize(small);
    auto sign_split = [](const Eigen::VectorXd& v) {
        std::vector<int> pos, neg;
        for (int i = 0; i < v.size(); ++i) (v(i) > 0 ? pos : neg).push_back(i);
        return std::pair{pos, neg};
    };
    const auto [pos_b, neg_b] = sign_split(od_big.diagonal);
    const auto [pos_s, neg_s] = sign_split(od_small.diagonal);
    const int match_pos = static_cast<int>(std::min(pos_b.size(), pos_s.size()));
    const int match_neg = static_cast<int>(std::min(neg_b.size(), neg_s.size()));
    const int s = match_pos + match_neg;

    // Matched positives first, matched negatives next, leftovers after.
    auto build_order = [&](const std::vector<int>& pos, const std::vector<int>& neg,
                           int size) {
        std::vector<int> order;
        order.insert(order.end(), pos.begin(), pos.begin() + match_pos);
        order.insert(order.end(), neg.begin(), neg.begin() + match_neg);
        order.insert(order.end(), pos.begin() + match_pos, pos.end());
        order.insert(order.end(), neg.begin() + match_neg, neg.end());
        if (static_cast<int>(order.size()) != size)
            throw NumericError("internal: eigenvalue ordering lost entries");
        return order;
    };
    const auto order_big = build_order(pos_b, neg_b, big.size());
    const auto order_small = build_order(pos_s, neg_s, small.size());

    Eigen::MatrixXd cross_tilde = Eigen::MatrixXd::Zero(big.size(), small.size());
    for (int k = 0; k < s; ++k) {
        const double prod =
            od_big.diagonal(order_big[k]) * od_small.diagonal(order_small[k]);
        cross_tilde(k, k) = std::sqrt(prod);
    }
    auto permuted = [](const Eigen::MatrixXd& basis, const std::vector<int>& order) {
        Eigen::MatrixXd out(basis.rows(), basis.cols());
        for (std::size_t c = 0; c < order.size(); ++c)
            out.col(static_cast<int>(c)) = basis.col(order[c]);
        return out;
    };
    Eigen::MatrixXd cross = permuted(od_big.basis, order_big) * cross_tilde *
                            permuted(od_small.basis, order_small).transpose();
    if (swapped) cross = cross.transpose().eval();

    CliquePairCompletion out;
    out.cross_block = cross;
    const int n = a.size() + b.size();
    Eigen::MatrixXd full(n, n);
    full.topLeftCorner(a.size(), a.size()) = a.dense();
    full.bottomRightCorner(b.size(), b.size()) = b.dense();
    full.topRightCorner(a.size(), b.size()) = cross;
    full.bottomLeftCorner(b.size(), a.size()) = cross.transpose();
    out.assembled = SymmetricMatrix::from_dense(full, 1e-9);
    out.achieved_rank = numeric_rank(out.assembled, tol);
    if (out.achieved_rank != clique_pair_min_rank(a, b, tol))
        throw NumericError("internal: two-block completion missed its target rank");
    return out;
}

struct MultiCliqueCompletion {
    SymmetricMatrix assembled;
    int achieved_rank = 0;
    int target_rank = 0; // size of block 1 + size of the esd-maximizing block
};

/// Completion of a disjoint union of k >= 2 fully specified full-rank blocks
/// (sizes descending) to rank n_1 + n_2'. Block 2' is the block maximizing
/// esd against block 1 (ties to the lowest index); every later block's
/// diagonal-frame eigenvalues are fed from a sign-matching eigenvalue of
/// block 1 or block 2', and the remaining cross blocks take the matching
/// Schur values so the complement of [[M_1, 0], [0, M_2']] vanishes.
inline MultiCliqueCompletion multi_clique_complete(
    const std::vector<SymmetricMatrix>& blocks, const Tolerance& tol = {}) {
    const int k = static_cast<int>(blocks.size());
    if (k < 2) throw InputError("need at least two blocks");
    for (int i = 1; i < k; ++i)
        if (blocks[i].size() > blocks[i - 1].size())
            throw InputError("blocks must be sorted by size, descending");
    std::vector<Inertia> inertias;
    for (const auto& blk : blocks)
        inertias.push_back(detail::full_rank_inertia_or_throw(blk, tol, "a diagonal"));

    // Internal order: swap the esd-maximizer into position 1 (0-based).
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    int best = 1;
    for (int i = 2; i < k; ++i)
        if (esd(inertias[0], inertias[i]) > esd(inertias[0], inertias[best])) best = i;
    std::swap(perm[1], perm[best]);

    std::vector<OrthogonalDiagonalization> diag(k);
    for (int i = 0; i < k; ++i) diag[i] = orthogonal_diagonalize(blocks[perm[i]]);
    auto block_size = [&](int i) { return blocks[perm[i]].size(); };
    const int n1 = block_size(0), n2 = block_size(1);

    // An ordering variant fixes how blocks 1 and 2' lay out their eigenvalue
    // signs; descending = positives first, ascending = negatives first.
    auto ordered_indices = [](const OrthogonalDiagonalization& d, bool positives_first) {
        std::vector<int> idx(d.diagonal.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = positives_first ? static_cast<int>(i)
                                     : static_cast<int>(idx.size() - 1 - i);
        return idx;
    };

    struct Assignment {
        std::vector<int> order1, order2;            // eigen index by position
        std::vector<std::vector<int>> order_rest;    // per block >= 2
        std::vector<std::vector<int>> source_rest;   // 1 or 2 per position
    };
    std::optional<Assignment> chosen;
    for (const auto& [first1, first2] :
         {std::pair{true, false}, {false, true}, {true, true}, {false, false}}) {
        Assignment cand;
        cand.order1 = ordered_indices(diag[0], first1);
        cand.order2 = ordered_indices(diag[1], first2);
        bool feasible = true;
        for (int b = 2; b < k && feasible; ++b) {
            const int nb = block_size(b);
            std::vector<int> pos, neg; // eigen indices of this block by sign
            for (int i = 0; i < nb; ++i)
                (diag[b].diagonal(i) > 0 ? pos : neg).push_back(i);
            std::vector<int> order(nb, -1), source(nb, 0);
            std::vector<int> flexible;
            std::size_t pi = 0, ni = 0;
            for (int l = 0; l < nb && feasible; ++l) {
                const bool plus1 = diag[0].diagonal(cand.order1[l]) > 0;
                const bool has2 = l < n2;
                const bool plus2 = has2 && diag[1].diagonal(cand.order2[l]) > 0;
                const bool plus_ok = plus1 || (has2 && plus2);
                const bool minus_ok = !plus1 || (has2 && !plus2);
                if (plus_ok && minus_ok) {
                    flexible.push_back(l);
                } else if (plus_ok) {
                    if (pi >= pos.size()) { feasible = false; break; }
                    order[l] = pos[pi++];
                    source[l] = plus1 ? 1 : 2;
                } else {
                    if (ni >= neg.size()) { feasible = false; break; }
                    order[l] = neg[ni++];
                    source[l] = !plus1 ? 1 : 2;
                }
            }
            if (!feasible) break;
            for (int l : flexible) {
                const bool take_pos = pi < pos.size();
                const int idx = take_pos ? pos[pi++] : neg[ni++];
                order[l] = idx;
                const bool want_plus = diag[b].diagonal(idx) > 0;
                const bool plus1 = diag[0].diagonal(cand.order1[l]) > 0;
                source[l] = (plus1 == want_plus) ? 1 : 2;
            }
            cand.order_rest.push_back(std::move(order));
            cand.source_rest.push_back(std::move(source));
        }
        if (feasible) {
            chosen = std::move(cand);
            break;
        }
    }
    if (!chosen)
        throw NumericError("internal: no sign-covering eigenvalue ordering found");

    // Diagonal-frame eigenvalues by position.
    auto lambda_at = [&](int block, const std::vector<int>& order, int l) {
        return diag[block].diagonal(order[l]);
    };
    const auto& A = *chosen;
    std::vector<std::vector<int>> order_all(k);
    order_all[0] = A.order1;
    order_all[1] = A.order2;
    for (int b = 2; b < k; ++b) order_all[b] = A.order_rest[b - 2];

    // Cross blocks in the diagonal frame, internal indices.
    std::map<std::pair<int, int>, Eigen::MatrixXd> cross_tilde;
    for (int b = 2; b < k; ++b) {
        Eigen::MatrixXd x1 = Eigen::MatrixXd::Zero(n1, block_size(b));
        Eigen::MatrixXd x2 = Eigen::MatrixXd::Zero(n2, block_size(b));
        for (int l = 0; l < block_size(b); ++l) {
            const double lam_b = lambda_at(b, order_all[b], l);
            if (A.source_rest[b - 2][l] == 1)
                x1(l, l) = std::sqrt(lam_b * lambda_at(0, order_all[0], l));
            else
                x2(l, l) = std::sqrt(lam_b * lambda_at(1, order_all[1], l));
        }
        cross_tilde[{0, b}] = std::move(x1);
        cross_tilde[{1, b}] = std::move(x2);
    }
    cross_tilde[{0, 1}] = Eigen::MatrixXd::Zero(n1, n2);
    for (int b = 2; b < k; ++b)
        for (int c = b + 1; c < k; ++c) {
            // Free unknowns: match the Schur product so the complement vanishes.
            Eigen::MatrixXd x = Eigen::MatrixXd::Zero(block_size(b), block_size(c));
            const auto& xb1 = cross_tilde[{0, b}];
            const auto& xc1 = cross_tilde[{0, c}];
            const auto& xb2 = cross_tilde[{1, b}];
            const auto& xc2 = cross_tilde[{1, c}];
            for (int l = 0; l < std::min(block_size(b), block_size(c)); ++l)
                x(l, l) = xb1(l, l) * xc1(l, l) / lambda_at(0, order_all[0], l) +
                          xb2(l, l) * xc2(l, l) / lambda_at(1, order_all[1], l);
            cross_tilde[{b, c}] = std::move(x);
        }

    // Back to the original frame and original block order.
    auto basis_perm = [&](int b) {
        Eigen::MatrixXd out(block_size(b), block_size(b));
        for (int c = 0; c < block_size(b); ++c)
            out.col(c) = diag[b].basis.col(order_all[b][c]);
        return out;
    };
    std::vector<int> offset(k, 0);
    {
        int run = 0;
        for (int i = 0; i < k; ++i) {
            offset[i] = run;
            run += blocks[i].size();
        }
    }
    const int n = offset[k - 1] + blocks[k - 1].size();
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < k; ++i)
        full.block(offset[i], offset[i], blocks[i].size(), blocks[i].size()) =
            blocks[i].dense();
    for (int bi = 0; bi < k; ++bi)
        for (int bj = bi + 1; bj < k; ++bj) {
            const Eigen::MatrixXd x =
                basis_perm(bi) * cross_tilde[{bi, bj}] * basis_perm(bj).transpose();
            const int oi = perm[bi], oj = perm[bj];
            if (oi < oj) {
                full.block(offset[oi], offset[oj], x.rows(), x.cols()) = x;
                full.block(offset[oj], offset[oi], x.cols(), x.rows()) = x.transpose();
            } else {
                full.block(offset[oj], offset[oi], x.cols(), x.rows()) = x.transpose();
                full.block(offset[oi], offset[oj], x.rows(), x.cols()) = x;
            }
        }

    MultiCliqueCompletion out;
    out.assembled = SymmetricMatrix::from_dense(full, 1e-9);
    out.target_rank = n1 + n2;
    out.achieved_rank = numeric_rank(out.assembled, tol);
    if (out.achieved_rank != out.target_rank ||
        out.achieved_rank > blocks[0].size() + blocks[1].size())
        throw NumericError("internal: multi-block completion missed its target rank");
    return out;
}

// ---------------------------------------------------------------------------
// One missing entry: pattern is the fully specified n x n matrix minus a
// single off-diagonal pair. det(M(t)) is the quadratic
//   -det(M_{1n,1n}) t^2 + 2 det(M(0)_{1,n}) t + det(M(0))
// after relabeling the unknown to position (1, n); subscripts are removed
// rows,columns and the 0x0 determinant is 1 (folds the 2x2 case in).
// ---------------------------------------------------------------------------

struct OneMissingEntryResult {
    bool deficient_completable = false;
    std::vector<double> roots;    // values of the missing entry with det = 0
    double discriminant = 0.0;    // det(M(0)_{1,n})^2 + det(M_{1n,1n}) det(M(0))
    double det_m11 = 0.0;         // det with row/col 1 removed (relabeled frame)
    double det_mnn = 0.0;         // det with row/col n removed
    double det_m1n1n = 0.0;       // det with rows/cols {1, n} removed
    double det_m0 = 0.0;          // det(M(0))
    double det_mixed = 0.0;       // det(M(0)_{1,n})
    // det(M(t)) = -det_m1n1n t^2 + quad_linear t + det_m0. The linear
    // coefficient carries the cofactor sign: 2 (-1)^(n+1) det_mixed.
    double quad_linear = 0.0;
    bool identically_singular = false; // det(M(t)) == 0 for every t
    std::vector<int> permutation; // position k (1-based) holds original vertex permutation[k-1]
};

inline OneMissingEntryResult one_missing_entry_solve(const PartialSymmetricMatrix& m,
                                                     const Tolerance& tol = {}) {
    const auto comp = complement(m.pattern());
    if (comp.edge_count() != 1)
        throw InputError("pattern must have exactly one unknown entry");
    const Edge missing = *comp.edges().begin();
    if (missing.first == missing.second)
        throw InputError("the unknown entry must be off-diagonal");

    const int n = m.size();
    OneMissingEntryResult out;
    out.permutation.push_back(missing.first);
    for (int v = 1; v <= n; ++v)
        if (v != missing.first && v != missing.second) out.permutation.push_back(v);
    out.permutation.push_back(missing.second);

    SymmetricMatrix m0(n); // relabeled zero-fill
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            const int oi = out.permutation[i - 1], oj = out.permutation[j - 1];
            if (m.pattern().has_edge(oi, oj)) m0.set(i, j, m.value(oi, oj));
        }
    const Eigen::MatrixXd& d = m0.dense();
    const int last = n - 1;
    out.det_m1n1n = detail::minor_det(d, {0, last}, {0, last});
    out.det_mixed = detail::minor_det(d, {0}, {last});
    out.det_m0 = d.determinant();
    out.det_m11 = detail::minor_det(d, {0}, {0});
    out.det_mnn = detail::minor_det(d, {last}, {last});
    out.discriminant = out.det_mixed * out.det_mixed + out.det_m1n1n * out.det_m0;
    const double cofactor_sign = (n % 2 == 0) ? -1.0 : 1.0;
    const double signed_mixed = cofactor_sign * out.det_mixed;
    out.quad_linear = 2.0 * signed_mixed;

    std::vector<int> inner;
    for (int v = 2; v < n; ++v) inner.push_back(v);
    const int s_d2 = det_sign(principal_submatrix(m0, inner), tol);
    std::vector<int> keep_11, keep_nn;
    for (int v = 2; v <= n; ++v) keep_11.push_back(v);
    for (int v = 1; v < n; ++v) keep_nn.push_back(v);
    const int s_11 = det_sign(principal_submatrix(m0, keep_11), tol);
    const int s_nn = det_sign(principal_submatrix(m0, keep_nn), tol);

    if (s_d2 != 0) {
        out.deficient_completable = (s_11 * s_nn >= 0);
        if (out.deficient_completable) {
            if (s_11 * s_nn > 0) {
                // Cancellation-stable quadratic roots: compute the large one,
                // recover the other from the root product -c0/d2.
                const double sq = std::sqrt(std::max(out.discriminant, 0.0));
                const double q = signed_mixed >= 0 ? signed_mixed + sq
                                                   : signed_mixed - sq;
                const double big = q / out.det_m1n1n;
                const double other = q != 0.0 ? -out.det_m0 / q : 0.0;
                out.roots = {big, other};
                std::sort(out.roots.begin(), out.roots.end());
            } else {
                out.roots = {signed_mixed / out.det_m1n1n};
            }
        }
    } else {
        // Linear (or constant) determinant polynomial.
        bool mixed_nonzero;
        if (n <= 2) {
            mixed_nonzero = std::abs(out.det_mixed) > tol.rank_tol;
        } else {
            Eigen::MatrixXd mixed(n - 1, n - 1);
            int rr = 0;
            for (int r = 1; r < n; ++r, ++rr) {
                int cc = 0;
                for (int c = 0; c < last; ++c, ++cc) mixed(rr, cc) = d(r, c);
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(mixed);
            const auto& sv = svd.singularValues();
            mixed_nonzero = sv(sv.size() - 1) > tol.rank_tol * std::max(1.0, sv(0));
        }
        const int s_0 = det_sign(m0, tol);
        if (mixed_nonzero) {
            out.deficient_completable = true;
            out.roots = {-out.det_m0 / (2.0 * signed_mixed)};
        } else if (s_0 == 0) {
            out.deficient_completable = true;
            out.identically_singular = true;
        } else {
            out.deficient_completable = false;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minor poset and full-rank certification.
// ---------------------------------------------------------------------------

using VertexSet = std::uint32_t; // bit v-1 set <=> vertex v in the subset

inline std::vector<int> vertex_set_to_list(VertexSet s) {
    std::vector<int> out;
    for (int v = 0; v < 32; ++v)
        if (s & (1u << v)) out.push_back(v + 1);
    return out;
}

/// Family of vertex subsets generated from V by repeatedly removing either
/// endpoint of a non-edge, with the pair each split produced. Splitting stops
/// only when no subset in the family still spans a non-edge, so every minimal
/// (unsplit) element indexes a fully specified principal submatrix.
struct MinorPoset {
    int n = 0;
    std::vector<Edge> ordering;                                   // non-edge order used
    std::vector<VertexSet> elements;                              // size desc, then value
    std::map<VertexSet, std::pair<VertexSet, VertexSet>> covers;  // S -> (S\i, S\j)
    std::map<VertexSet, Edge> split_edge;

    bool is_minimal(VertexSet s) const { return covers.find(s) == covers.end(); }

    std::vector<VertexSet> minimal_elements() const {
        std::vector<VertexSet> out;
        for (VertexSet s : elements)
            if (is_minimal(s)) out.push_back(s);
        return out;
    }
};

inline MinorPoset build_minor_poset(const SemisimpleGraph& g,
                                    std::optional<std::vector<Edge>> ordering = {}) {
    const int n = g.vertex_count();
    if (n > 31) throw SizeLimitError("minor poset limited to 31 vertices");
    const SemisimpleGraph comp = complement(g);
    const auto bip = is_bipartite(comp);
    if (!bip.bipartite)
        throw NotFullRankTypicalError(
            "pattern is not full-rank typical (complement has an odd closed walk)");

    MinorPoset poset;
    poset.n = n;
    if (ordering) {
        std::set<Edge> seen;
        for (const Edge& e : *ordering) {
            if (!comp.has_edge(e.first, e.second))
                throw InputError("ordering contains a specified entry");
            if (!seen.insert(make_edge(e.first, e.second)).second)
                throw InputError("ordering repeats a non-edge");
        }
        if (seen.size() != comp.edges().size())
            throw InputError("ordering must list every non-edge exactly once");
        poset.ordering = *ordering;
    } else {
        poset.ordering.assign(comp.edges().begin(), comp.edges().end());
    }

    std::set<VertexSet> family;
    const VertexSet all = n == 0 ? 0 : ((n == 32 ? 0 : (1u << n)) - 1u);
    family.insert(all);

    bool changed = true;
    while (changed) {
        changed = false;
        for (const Edge& e : poset.ordering) {
            const VertexSet ebits = (1u << (e.first - 1)) | (1u << (e.second - 1));
            std::vector<VertexSet> candidates;
            for (VertexSet s : family)
                if ((s & ebits) == ebits && poset.is_minimal(s)) candidates.push_back(s);
            std::vector<VertexSet> to_split;
            for (VertexSet s : candidates) {
                bool minimal = true;
                for (VertexSet t : candidates)
                    if (t != s && (t & s) == t) { minimal = false; break; }
                if (minimal) to_split.push_back(s);
            }
            for (VertexSet s : to_split) {
                const VertexSet child_i = s & ~(1u << (e.first - 1));
                const VertexSet child_j = s & ~(1u << (e.second - 1));
                poset.covers[s] = {child_i, child_j};
                poset.split_edge[s] = e;
                family.insert(child_i);
                family.insert(child_j);
                changed = true;
            }
        }
    }

    poset.elements.assign(family.begin(), family.end());
    std::sort(poset.elements.begin(), poset.elements.end(), [](VertexSet a, VertexSet b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });
    for (VertexSet s : poset.minimal_elements()) {
        const auto verts = vertex_set_to_list(s);
        for (std::size_t x = 0; x < verts.size(); ++x)
            for (std::size_t y = x; y < verts.size(); ++y)
                if (!g.has_edge(verts[x], verts[y]))
                    throw NumericError("internal: minimal poset element spans a non-edge");
    }
    return poset;
}

enum class Verdict { all_completions_full_rank, completable_below_full_rank };

inline const char* to_string(Verdict v) {
    return v == Verdict::all_completions_full_rank ? "all-completions-full-rank"
                                                   : "completable-below-full-rank";
}

struct CoverSignEntry {
    VertexSet element = 0;
    Edge split{0, 0};
    VertexSet child_i = 0; // element minus split.first
    VertexSet child_j = 0; // element minus split.second
    int sign_i = 0;
    int sign_j = 0;
};

struct CompletionCertificate {
    Verdict verdict = Verdict::completable_below_full_rank;
    int n = 0;
    std::vector<Edge> ordering;
    std::vector<CoverSignEntry> sign_table;
    std::optional<Inertia> fixed_inertia;        // full-rank verdict only
    std::optional<VertexSet> violating_element;  // deficient verdict only
    std::vector<double> completion_values;       // x0 actually used (unknowns order)
    int resamples = 0;
};

/// Decides whether every completion of m has full rank by testing, at a
/// generic completion M(x0), the determinant signs of each cover pair in the
/// minor poset: full rank exactly when every pair is nonzero and opposite.
/// A zero sign at a fully specified minor means m itself is degenerate; a
/// zero at an undetermined minor triggers a redraw of x0 (up to 5).
inline CompletionCertificate certify_full_rank(
    const PartialSymmetricMatrix& m, const Tolerance& tol, Rng& rng,
    const std::optional<std::vector<double>>& x0 = {},
    const std::optional<std::vector<Edge>>& ordering = {}) {
    const MinorPoset poset = build_minor_poset(m.pattern(), ordering);
    const auto unknowns = m.unknowns();

    CompletionCertificate cert;
    cert.n = m.size();
    cert.ordering = poset.ordering;

    if (unknowns.empty()) {
        // Fully specified: the only completion is the matrix itself.
        const SymmetricMatrix full = m.zero_fill();
        if (det_sign(full, tol) != 0) {
            cert.verdict = Verdict::all_completions_full_rank;
            cert.fixed_inertia = inertia(full, tol);
        } else {
            cert.verdict = Verdict::completable_below_full_rank;
            cert.violating_element = cert.n == 0 ? 0u : ((1u << cert.n) - 1u);
        }
        return cert;
    }

    constexpr int kMaxAttempts = 5;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<double> values;
        if (attempt == 0 && x0) {
            if (x0->size() != unknowns.size())
                throw InputError("x0 must supply one value per unknown entry");
            values = *x0;
        } else {
            values.resize(unknowns.size());
            for (double& v : values) v = rng.normal();
        }
        const SymmetricMatrix full = m.complete(values);

        bool resample = false;
        std::map<VertexSet, int> sign_of;
        auto sign_at = [&](VertexSet s) {
            const auto it = sign_of.find(s);
            if (it != sign_of.end()) return it->second;
            const int sg = det_sign(principal_submatrix(full, vertex_set_to_list(s)), tol);
            sign_of[s] = sg;
            return sg;
        };

        cert.sign_table.clear();
        cert.violating_element.reset();
        for (VertexSet s : poset.elements) {
            if (poset.is_minimal(s)) continue;
            const auto [ci, cj] = poset.covers.at(s);
            CoverSignEntry entry;
            entry.element = s;
            entry.split = poset.split_edge.at(s);
            entry.child_i = ci;
            entry.child_j = cj;
            entry.sign_i = sign_at(ci);
            entry.sign_j = sign_at(cj);
            for (const auto& [child, sign] :
                 {std::pair{ci, entry.sign_i}, {cj, entry.sign_j}}) {
                if (sign != 0) continue;
                if (poset.is_minimal(child))
                    throw NonGenericInputError(
                        "a fully specified minor of the input is singular at tolerance");
                resample = true;
            }
            cert.sign_table.push_back(entry);
        }
        if (resample) {
            ++cert.resamples;
            continue;
        }

        cert.completion_values = values;
        cert.verdict = Verdict::all_completions_full_rank;
        for (const auto& entry : cert.sign_table) {
            if (entry.sign_i * entry.sign_j != -1) {
                cert.verdict = Verdict::completable_below_full_rank;
                if (!cert.violating_element) cert.violating_element = entry.element;
            }
        }
        if (cert.verdict == Verdict::all_completions_full_rank)
            cert.fixed_inertia = inertia(full, tol);
        return cert;
    }
    throw NonGenericInputError(
        "an undetermined minor stayed singular across resampled completions");
}

struct EsdPartialResult {
    int esd_value = 0;
    Inertia inertia_1, inertia_2;
    int union_min_rank = 0; // max(n, m) + esd
};

/// esd of two certified all-completions-full-rank partial matrices: the esd
/// of their fixed inertias. Also reports the minimal completion rank of the
/// disjoint-union pattern built from the two blocks.
inline EsdPartialResult esd_partial(const PartialSymmetricMatrix& m1,
                                    const PartialSymmetricMatrix& m2,
                                    const Tolerance& tol, Rng& rng) {
    const auto c1 = certify_full_rank(m1, tol, rng);
    const auto c2 = certify_full_rank(m2, tol, rng);
    if (c1.verdict != Verdict::all_completions_full_rank ||
        c2.verdict != Verdict::all_completions_full_rank)
        throw NumericError("esd of partial matrices needs both certified "
                           "all-completions-full-rank");
    EsdPartialResult out;
    out.inertia_1 = *c1.fixed_inertia;
    out.inertia_2 = *c2.fixed_inertia;
    out.esd_value = esd(out.inertia_1, out.inertia_2);
    out.union_min_rank = std::max(m1.size(), m2.size()) + out.esd_value;
    return out;
}

} // namespace symrank
