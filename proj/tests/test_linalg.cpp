#include <catch2/catch.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "symrank/linalg.hpp"
#include "symrank/rng.hpp"

using namespace symrank;

namespace {

SymmetricMatrix diag(const std::vector<double>& d) {
    SymmetricMatrix m(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        m.set(static_cast<int>(i) + 1, static_cast<int>(i) + 1, d[i]);
    return m;
}

SymmetricMatrix random_symmetric(int n, Rng& rng) {
    SymmetricMatrix m(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) m.set(i, j, rng.normal());
    return m;
}

Eigen::MatrixXd random_dense(int rows, int cols, Rng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

} // namespace

TEST_CASE("inertia on the stated examples") {
    CHECK(inertia(diag({1, -1})) == Inertia{1, 1, 0});
    CHECK(inertia(SymmetricMatrix(3)) == Inertia{0, 0, 3});
    SymmetricMatrix m(2);
    m.set(1, 1, 2); m.set(1, 2, 1); m.set(2, 2, 1);
    CHECK(inertia(m) == Inertia{2, 0, 0}); // det 1 > 0, trace 3 > 0
}

TEST_CASE("numeric rank on the stated examples") {
    SymmetricMatrix id(4);
    for (int i = 1; i <= 4; ++i) id.set(i, i, 1.0);
    CHECK(numeric_rank(id) == 4);

    Rng rng(9);
    Eigen::VectorXd v = random_dense(5, 1, rng);
    const Eigen::MatrixXd outer = v * v.transpose();
    CHECK(numeric_rank(SymmetricMatrix::from_dense(outer)) == 1);

    CHECK(numeric_rank(diag({1.0, 1e-15})) == 1);
}

TEST_CASE("determinant sign") {
    CHECK(det_sign(diag({1, -1, -1})) == 1);
    CHECK(det_sign(diag({1, -1})) == -1);
    CHECK(det_sign(diag({1.0, 0.0})) == 0);
}

TEST_CASE("det sign equals the sign of the eigenvalue product when full rank") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const auto a = random_symmetric(n, rng);
        if (numeric_rank(a) != n) continue;
        const double det = a.dense().determinant();
        CHECK(det_sign(a) == (det > 0 ? 1 : -1));
    }
}

TEST_CASE("principal submatrices, including the empty convention") {
    SymmetricMatrix m(3);
    int v = 0;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) m.set(i, j, ++v);
    const auto corner = principal_submatrix(m, {1, 3});
    CHECK(corner.size() == 2);
    CHECK(corner(1, 1) == m(1, 1));
    CHECK(corner(1, 2) == m(1, 3));
    CHECK(corner(2, 2) == m(3, 3));

    const auto all = principal_submatrix(m, {1, 2, 3});
    CHECK(all.dense() == m.dense());

    const auto empty = principal_submatrix(m, {});
    CHECK(empty.size() == 0);
    CHECK(det_sign(empty) == 1);

    CHECK_THROWS_AS(principal_submatrix(m, {0}), InputError);
    CHECK_THROWS_AS(principal_submatrix(m, {4}), InputError);
}

TEST_CASE("schur rank on the stated examples") {
    SymmetricMatrix i2(2);
    i2.set(1, 1, 1); i2.set(2, 2, 1);
    CHECK(schur_rank(i2, Eigen::MatrixXd::Zero(2, 2), i2) == 4);

    SymmetricMatrix one(1), four(1);
    one.set(1, 1, 1); four.set(1, 1, 4);
    Eigen::MatrixXd x(1, 1);
    x(0, 0) = 2;
    CHECK(schur_rank(one, x, four) == 1);

    CHECK(schur_rank(i2, Eigen::MatrixXd::Identity(2, 2), diag({1, -1})) == 3);

    CHECK_THROWS_AS(schur_rank(diag({1.0, 0.0}), Eigen::MatrixXd::Zero(2, 2), i2),
                    NumericError);
}

TEST_CASE("schur rank equals the rank of the assembled block matrix") {
    Rng rng(1234);
    int done = 0;
    while (done < 200) {
        const int na = 1 + static_cast<int>(rng.below(4));
        const int nb = 1 + static_cast<int>(rng.below(4));
        const auto a = random_symmetric(na, rng);
        if (inertia_with_flag(a).near_boundary || numeric_rank(a) != na) continue;
        const auto b = random_symmetric(nb, rng);
        const Eigen::MatrixXd x = random_dense(na, nb, rng);
        Eigen::MatrixXd full(na + nb, na + nb);
        full.topLeftCorner(na, na) = a.dense();
        full.topRightCorner(na, nb) = x;
        full.bottomLeftCorner(nb, na) = x.transpose();
        full.bottomRightCorner(nb, nb) = b.dense();
        CHECK(schur_rank(a, x, b) == numeric_rank(SymmetricMatrix::from_dense(full)));
        ++done;
    }
}

TEST_CASE("sylvester inertia invariance under congruence") {
    Rng rng(4242);
    int done = 0;
    while (done < 150) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const auto a = random_symmetric(n, rng);
        const Eigen::MatrixXd p = random_dense(n, n, rng);
        if (std::abs(p.determinant()) < 1e-3) continue;
        const auto congruent = SymmetricMatrix::from_dense(
            (p.transpose() * a.dense() * p).eval(), 1e-9);
        if (inertia_with_flag(a).near_boundary ||
            inertia_with_flag(congruent).near_boundary)
            continue;
        CHECK(inertia(congruent) == inertia(a));
        ++done;
    }
}

TEST_CASE("determinant identity residual vanishes") {
    CHECK(pluecker_residual(Eigen::MatrixXd::Identity(3, 3)) == Approx(0.0).margin(1e-14));

    // 2x2 [[a,b],[c,d]]: (ad - bc) * 1 - d*a + c*b = 0 exactly.
    Eigen::MatrixXd m(2, 2);
    m << 3.5, -1.25, 2.0, 0.75;
    CHECK(pluecker_residual(m) == Approx(0.0).margin(1e-14));

    Rng rng(678);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const Eigen::MatrixXd a = random_dense(n, n, rng);
        const double scale = std::max(pluecker_scale(a), 1e-30);
        CHECK(std::abs(pluecker_residual(a)) / scale <= 1e-10);
    }
}

TEST_CASE("orthogonal diagonalization") {
    const auto d = orthogonal_diagonalize(diag({3, 1}));
    CHECK(d.diagonal(0) == Approx(3.0));
    CHECK(d.diagonal(1) == Approx(1.0));

    SymmetricMatrix swap(2);
    swap.set(1, 2, 1.0);
    const auto s = orthogonal_diagonalize(swap);
    CHECK(s.diagonal(0) == Approx(1.0));
    CHECK(s.diagonal(1) == Approx(-1.0));

    Rng rng(90);
    const auto a = random_symmetric(5, rng);
    const auto od = orthogonal_diagonalize(a);
    const double scale = std::max(1.0, a.dense().cwiseAbs().maxCoeff());
    CHECK((od.basis.transpose() * od.basis - Eigen::MatrixXd::Identity(5, 5))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    CHECK((od.basis * od.diagonal.asDiagonal() * od.basis.transpose() - a.dense())
              .cwiseAbs()
              .maxCoeff() <= 1e-10 * scale);
    for (int i = 1; i < 5; ++i) CHECK(od.diagonal(i - 1) >= od.diagonal(i));
}

TEST_CASE("symmetric matrix construction guards") {
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.1, 1.0;
    CHECK_THROWS_AS(SymmetricMatrix::from_dense(bad), InputError);
    SymmetricMatrix m(2);
    CHECK_THROWS_AS(m.set(1, 2, std::nan("")), InputError);
    CHECK_THROWS_AS(m(0, 1), InputError);
    CHECK_THROWS_AS(Tolerance(0.0, 1e-7), InputError);
}
