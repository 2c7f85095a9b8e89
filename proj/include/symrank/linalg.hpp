#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "symrank/errors.hpp"

namespace symrank {

/// Relative thresholds for rank/sign decisions and oracle acceptance.
struct Tolerance {
    double rank_tol = 1e-8; // eigenvalue threshold, relative to max(1, |lambda|_max)
    double opt_tol = 1e-7;  // oracle residual threshold

    Tolerance() = default;
    Tolerance(double rank, double opt) : rank_tol(rank), opt_tol(opt) {
        if (rank_tol <= 0.0 || opt_tol <= 0.0)
            throw InputError("tolerances must be strictly positive");
    }
};

/// Dense real symmetric matrix, 1-indexed to match vertex labels.
/// Symmetry is structural: writes mirror both entries.
class SymmetricMatrix {
public:
    SymmetricMatrix() : m_(0, 0) {}
    explicit SymmetricMatrix(int n) : m_(Eigen::MatrixXd::Zero(n, n)) {
        if (n < 0) throw InputError("matrix size must be nonnegative");
    }

    /// Validates relative asymmetry against `sym_tol`, then symmetrizes exactly.
    static SymmetricMatrix from_dense(const Eigen::MatrixXd& a, double sym_tol = 1e-12) {
        if (a.rows() != a.cols()) throw InputError("matrix is not square");
        const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
        if (a.size() > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale)
            throw InputError("matrix is not symmetric within tolerance");
        SymmetricMatrix s(static_cast<int>(a.rows()));
        s.m_ = 0.5 * (a + a.transpose());
        return s;
    }

    int size() const { return static_cast<int>(m_.rows()); }

    double operator()(int i, int j) const {
        check(i);
        check(j);
        return m_(i - 1, j - 1);
    }

    void set(int i, int j, double v) {
        check(i);
        check(j);
        if (!std::isfinite(v)) throw InputError("non-finite matrix entry");
        m_(i - 1, j - 1) = v;
        m_(j - 1, i - 1) = v;
    }

    const Eigen::MatrixXd& dense() const { return m_; }

private:
    void check(int i) const {
        if (i < 1 || i > size())
            throw InputError("matrix index " + std::to_string(i) + " out of range 1.." +
                             std::to_string(size()));
    }

    Eigen::MatrixXd m_;
};

/// Signature of a symmetric matrix: eigenvalue counts by sign.
struct Inertia {
    int positives = 0;
    int negatives = 0;
    int kernel = 0;

    int total() const { return positives + negatives + kernel; }
    int rank() const { return positives + negatives; }
    bool operator==(const Inertia&) const = default;
    auto operator<=>(const Inertia&) const = default;
};

namespace detail {

inline Eigen::VectorXd symmetric_eigenvalues(const SymmetricMatrix& a) {
    if (a.size() == 0) return Eigen::VectorXd(0);
    if (!a.dense().allFinite()) throw InputError("matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense(),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("symmetric eigensolver failed");
    return solver.eigenvalues();
}

} // namespace detail

struct InertiaResult {
    Inertia inertia;
    // Some |eigenvalue| within a factor 10 of the kernel threshold: the sign
    // pattern is not trustworthy and samplers should redraw the instance.
    bool near_boundary = false;
};

inline InertiaResult inertia_with_flag(const SymmetricMatrix& a, const Tolerance& tol = {}) {
    InertiaResult r;
    if (a.size() == 0) return r;
    const Eigen::VectorXd ev = detail::symmetric_eigenvalues(a);
    const double threshold = tol.rank_tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int i = 0; i < ev.size(); ++i) {
        const double v = ev(i);
        if (std::abs(v) <= threshold) ++r.inertia.kernel;
        else if (v > 0.0) ++r.inertia.positives;
        else ++r.inertia.negatives;
        if (std::abs(v) > threshold / 10.0 && std::abs(v) <= threshold * 10.0)
            r.near_boundary = true;
    }
    return r;
}

/// Eigenvalue counts by sign under the relative kernel threshold
/// |lambda| <= rank_tol * max(1, |lambda|_max).
inline Inertia inertia(const SymmetricMatrix& a, const Tolerance& tol = {}) {
    return inertia_with_flag(a, tol).inertia;
}

inline int numeric_rank(const SymmetricMatrix& a, const Tolerance& tol = {}) {
    return a.size() - inertia(a, tol).kernel;
}

/// Sign of det(a): 0 when singular at tolerance, otherwise (-1)^negatives.
/// The 0x0 matrix has determinant 1, hence sign +1.
inline int det_sign(const SymmetricMatrix& a, const Tolerance& tol = {}) {
    const Inertia in = inertia(a, tol);
    if (in.kernel > 0) return 0;
    return in.negatives % 2 == 0 ? 1 : -1;
}

/// Rows/columns restricted to `keep` (1-based, strictly increasing after sort).
inline SymmetricMatrix principal_submatrix(const SymmetricMatrix& a, std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 1 || keep[k] > a.size())
            throw InputError("principal submatrix index out of range");
        if (k > 0 && keep[k] == keep[k - 1])
            throw InputError("principal submatrix index repeated");
    }
    SymmetricMatrix s(static_cast<int>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = r; c < keep.size(); ++c)
            s.set(static_cast<int>(r) + 1, static_cast<int>(c) + 1,
                  a(keep[r], keep[c]));
    return s;
}

/// rank of [[A, X], [X^T, B]] through the Schur complement B - X^T A^{-1} X.
/// A must be full rank at the tolerance.
inline int schur_rank(const SymmetricMatrix& a, const Eigen::MatrixXd& x,
                      const SymmetricMatrix& b, const Tolerance& tol = {}) {
    if (x.rows() != a.size() || x.cols() != b.size())
        throw InputError("off-diagonal block has mismatched dimensions");
    if (numeric_rank(a, tol) != a.size())
        throw NumericError("upper-left block is singular at tolerance");
    if (a.size() == 0) return numeric_rank(b, tol);
    const Eigen::MatrixXd schur =
        b.dense() - x.transpose() * a.dense().ldlt().solve(x);
    return a.size() + numeric_rank(SymmetricMatrix::from_dense(schur, 1e-9), tol);
}

namespace detail {

/// det of `a` with rows in `drop_rows` and columns in `drop_cols` removed
/// (0x0 convention: 1).
inline double minor_det(const Eigen::MatrixXd& a, std::vector<int> drop_rows,
                        std::vector<int> drop_cols) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> rows, cols;
    auto keep = [&](const std::vector<int>& drop, std::vector<int>& out) {
        for (int i = 0; i < n; ++i)
            if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.push_back(i);
    };
    keep(drop_rows, rows);
    keep(drop_cols, cols);
    if (rows.empty()) return 1.0;
    Eigen::MatrixXd m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = a(rows[r], cols[c]);
    return m.determinant();
}

} // namespace detail

/// det(A)det(A_{1n,1n}) - det(A_{1,1})det(A_{n,n}) + det(A_{1,n})det(A_{n,1})
/// for any square A with n >= 2 (subscripts are removed rows,columns).
/// The identity says this is zero.
inline double pluecker_residual(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw InputError("matrix is not square");
    const int n = static_cast<int>(a.rows());
    if (n < 2) throw InputError("identity needs size >= 2");
    const int last = n - 1;
    const double d = a.determinant();
    const double d_1n = detail::minor_det(a, {0, last}, {0, last});
    const double d_11 = detail::minor_det(a, {0}, {0});
    const double d_nn = detail::minor_det(a, {last}, {last});
    const double d_1n_mixed = detail::minor_det(a, {0}, {last});
    const double d_n1_mixed = detail::minor_det(a, {last}, {0});
    return d * d_1n - d_11 * d_nn + d_1n_mixed * d_n1_mixed;
}

/// Largest |product| among the three determinant pairs, for normalizing the
/// residual above.
inline double pluecker_scale(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    const int last = n - 1;
    const double p1 = std::abs(a.determinant() * detail::minor_det(a, {0, last}, {0, last}));
    const double p2 = std::abs(detail::minor_det(a, {0}, {0}) * detail::minor_det(a, {last}, {last}));
    const double p3 =
        std::abs(detail::minor_det(a, {0}, {last}) * detail::minor_det(a, {last}, {0}));
    return std::max({p1, p2, p3});
}

struct OrthogonalDiagonalization {
    Eigen::MatrixXd basis;     // orthogonal C with C^T A C diagonal
    Eigen::VectorXd diagonal;  // descending
};

inline OrthogonalDiagonalization orthogonal_diagonalize(const SymmetricMatrix& a) {
    if (!a.dense().allFinite()) throw InputError("matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense());
    if (solver.info() != Eigen::Success)
        throw NumericError("symmetric eigensolver failed");
    const int n = a.size();
    OrthogonalDiagonalization out;
    out.basis.resize(n, n);
    out.diagonal.resize(n);
    for (int i = 0; i < n; ++i) { // Eigen returns ascending order
        out.basis.col(i) = solver.eigenvectors().col(n - 1 - i);
        out.diagonal(i) = solver.eigenvalues()(n - 1 - i);
    }
    return out;
}

} // namespace symrank
