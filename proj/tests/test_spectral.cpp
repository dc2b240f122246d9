#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "rhb/polynomial.hpp"
#include "rhb/spectral.hpp"

using namespace rhb;

namespace {

constexpr double kPi = std::numbers::pi;

Mat random_coeffs(int dim, int N, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Mat c(dim, 2 * N + 1);
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) c(i, j) = u(rng);
    return c;
}

// Trapezoid-rule Fourier coefficients of t -> f(t), independent quadrature
// oracle for the convolution path.
double quadrature_cos(const std::function<double(double)>& f, int n, double omega,
                      int points = 10000) {
    const double T = 2.0 * kPi / omega;
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = T * i / points;
        acc += f(t) * std::cos(n * omega * t);
    }
    return (n == 0 ? 1.0 : 2.0) * acc / points;
}

double quadrature_sin(const std::function<double(double)>& f, int n, double omega,
                      int points = 10000) {
    const double T = 2.0 * kPi / omega;
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = T * i / points;
        acc += f(t) * std::sin(n * omega * t);
    }
    return 2.0 * acc / points;
}

}  // namespace

TEST_CASE("build_grid places equispaced nodes over one period") {
    auto g = build_grid(HarmonicBasis(1, 1.0), 3);
    REQUIRE(g.count == 3);
    CHECK(g.nodes[0] == doctest::Approx(0.0));
    CHECK(g.nodes[1] == doctest::Approx(2.0 * kPi / 3.0));
    CHECK(g.nodes[2] == doctest::Approx(4.0 * kPi / 3.0));

    auto g2 = build_grid(HarmonicBasis(1, 2.0), 4);
    CHECK(g2.nodes[1] == doctest::Approx(kPi / 4.0));
    CHECK(g2.nodes[3] == doctest::Approx(3.0 * kPi / 4.0));

    // minimum RHB collocation count for N=3, phi=3 is (phi+1)N+1 = 13
    auto g3 = build_grid(HarmonicBasis(3, 1.0), 13);
    CHECK(g3.count == 13);
    CHECK(g3.nodes[12] < 2.0 * kPi);  // half-open [0, T)

    CHECK_THROWS_AS(build_grid(HarmonicBasis(3, 1.0), 6), std::invalid_argument);
}

TEST_CASE("E+ is the exact inverse/pseudo-inverse of E") {
    SUBCASE("square case N=1 M=3") {
        HarmonicBasis b(1, 1.0);
        auto ops = build_operators(b, build_grid(b, 3), 1);
        Mat I = Mat::Identity(3, 3);
        CHECK((ops.E_plus * ops.E - I).lpNorm<Eigen::Infinity>() < 1e-13);
        CHECK((ops.E * ops.E_plus - I).lpNorm<Eigen::Infinity>() < 1e-13);
    }
    SUBCASE("rectangular cases") {
        for (int N : {1, 2, 5, 11}) {
            HarmonicBasis b(N, 0.7);
            for (int M : {2 * N + 1, 2 * N + 2, 4 * N + 1, 6 * N}) {
                if (M < 2 * N + 1) continue;
                auto ops = build_operators(b, build_grid(b, M), 3);
                Mat I = Mat::Identity(2 * N + 1, 2 * N + 1);
                CHECK((ops.E_plus * ops.E - I).lpNorm<Eigen::Infinity>() < 1e-12);
            }
        }
    }
    SUBCASE("explicit formula matches factorization pseudo-inverse") {
        HarmonicBasis b(4, 1.3);
        auto ops = build_operators(b, build_grid(b, 17), 2);
        Mat pinv = ops.E.completeOrthogonalDecomposition().pseudoInverse();
        CHECK((pinv - ops.E_plus).lpNorm<Eigen::Infinity>() < 1e-10);
    }
}

TEST_CASE("A is block-diagonal skew with J_n blocks") {
    HarmonicBasis b(3, 1.0);
    auto ops = build_operators(b, build_grid(b, 7), 1);
    CHECK(ops.A.row(0).norm() == 0.0);
    CHECK(ops.A.col(0).norm() == 0.0);
    CHECK((ops.A + ops.A.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(ops.A(1, 2) == 1.0);
    CHECK(ops.A(5, 6) == 3.0);
    CHECK(ops.A(6, 5) == -3.0);
}

TEST_CASE("aliasing matrix vanishes iff M > (phi+1)N") {
    for (int phi : {2, 3, 4, 5}) {
        for (int N : {1, 2, 3}) {
            HarmonicBasis b(N, 1.0);
            for (int M = 2 * N + 1; M <= (phi + 1) * N + 4; ++M) {
                auto ops = build_operators(b, build_grid(b, M), phi);
                const double norm = ops.E_alias.lpNorm<Eigen::Infinity>();
                if (M > (phi + 1) * N)
                    CHECK(norm < 1e-12);
                else
                    CHECK(norm > 0.5);
            }
        }
    }
}

TEST_CASE("predict_alias_entries matches numeric E+E1") {
    for (int phi : {2, 3, 4, 5}) {
        for (int N = 1; N <= 6; ++N) {
            HarmonicBasis b(N, 2.1);
            for (int M = 2 * N + 1; M <= (phi + 1) * N + 4; ++M) {
                auto ops = build_operators(b, build_grid(b, M), phi);
                Mat pred = predict_alias_entries(N, phi, M);
                CHECK((pred - ops.E_alias).lpNorm<Eigen::Infinity>() < 1e-10);
            }
        }
    }
    // HDHB case explicitly: nonzero entries exist
    CHECK(predict_alias_entries(2, 3, 5).cwiseAbs().sum() > 0.0);
    // all-zero beyond the dealiasing bound
    CHECK(predict_alias_entries(1, 2, 4).cwiseAbs().sum() == 0.0);
}

TEST_CASE("fold_wavenumber") {
    CHECK(fold_wavenumber(1, 5) == 1);
    CHECK(fold_wavenumber(-2, 5) == -2);
    CHECK(fold_wavenumber(4, 5) == -1);
    CHECK(fold_wavenumber(9, 13) == -4);
    CHECK(fold_wavenumber(0, 4) == 0);

    // grid identity: cos(n w t_i) == cos(n_a w t_i), sin likewise, at all nodes
    for (int M : {4, 5, 7, 13}) {
        HarmonicBasis b(1, 1.0);
        auto g = build_grid(b, M);
        for (int n = -3 * M; n <= 3 * M; ++n) {
            const int na = fold_wavenumber(n, M);
            CHECK(std::abs(2 * na) <= M);
            for (int i = 0; i < M; ++i) {
                CHECK(std::cos(n * g.nodes[i]) ==
                      doctest::Approx(std::cos(na * g.nodes[i])).epsilon(1e-9));
                CHECK(std::sin(n * g.nodes[i]) ==
                      doctest::Approx(std::sin(na * g.nodes[i])).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("eval_series basics and matrix-product oracle") {
    HarmonicBasis b(3, 1.7);
    FourierCoeffs zero(2, 3);
    CHECK(eval_series(zero, b, 0.4).norm() == 0.0);

    FourierCoeffs cst(1, 3);
    cst.c(0, 0) = 1.0;
    CHECK(eval_series(cst, b, 12.3)[0] == 1.0);

    std::mt19937_64 rng(7);
    FourierCoeffs x(random_coeffs(2, 3, rng));
    auto grid = build_grid(b, 11);
    auto ops = build_operators(b, grid, 1);
    Mat nodevals = ops.E * x.c.transpose();  // M x dim
    for (int i = 0; i < grid.count; ++i) {
        Vec v = eval_series(x, b, grid.nodes[i]);
        CHECK((v.transpose() - nodevals.row(i)).lpNorm<Eigen::Infinity>() < 1e-13);
    }
}

TEST_CASE("eval_series_derivative") {
    HarmonicBasis b(2, 1.5);
    FourierCoeffs cst(1, 2);
    cst.c(0, 0) = 3.0;
    CHECK(eval_series_derivative(cst, b, 1.0).norm() == 0.0);

    FourierCoeffs c1(1, 2);
    c1.c(0, 1) = 2.0;  // 2 cos(w t)
    const double t = 0.37;
    CHECK(eval_series_derivative(c1, b, t)[0] ==
          doctest::Approx(-2.0 * b.omega * std::sin(b.omega * t)));

    // central-difference oracle
    std::mt19937_64 rng(11);
    FourierCoeffs x(random_coeffs(3, 2, rng));
    const double h = 1e-7 * b.period();
    for (double tt : {0.0, 0.9, 2.2}) {
        Vec fd = (eval_series(x, b, tt + h) - eval_series(x, b, tt - h)) / (2 * h);
        Vec an = eval_series_derivative(x, b, tt);
        CHECK((fd - an).lpNorm<Eigen::Infinity>() <
              1e-6 * std::max(1.0, an.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("exact_poly_harmonics") {
    SUBCASE("identity map returns the input coefficients") {
        HarmonicBasis b(3, 1.0);
        std::mt19937_64 rng(3);
        FourierCoeffs x(random_coeffs(1, 3, rng));
        Polynomial p(1);
        p.add(1.0, {1});
        auto h = exact_poly_harmonics(x, p, b, 1);
        CHECK((h.low - x.c.row(0).transpose()).lpNorm<Eigen::Infinity>() < 1e-14);
        CHECK(h.high.size() == 0);
    }
    SUBCASE("half-angle identity for cos^2") {
        HarmonicBasis b(1, 1.0);
        FourierCoeffs x(1, 1);
        x.c(0, 1) = 1.0;  // cos(w t)
        Polynomial p(1);
        p.add(1.0, {2});
        auto h = exact_poly_harmonics(x, p, b, 2);
        CHECK(h.low[0] == doctest::Approx(0.5));
        CHECK(h.low[1] == doctest::Approx(0.0));
        CHECK(h.low[2] == doctest::Approx(0.0));
        CHECK(h.high[0] == doctest::Approx(0.5));  // cos(2 w t) / 2
        CHECK(h.high[1] == doctest::Approx(0.0));
    }
    SUBCASE("cubic matches trapezoid quadrature oracle") {
        HarmonicBasis b(3, 1.9);
        std::mt19937_64 rng(5);
        FourierCoeffs x(random_coeffs(1, 3, rng));
        Polynomial p(1);
        p.add(1.0, {3});
        auto h = exact_poly_harmonics(x, p, b, 3);
        auto f = [&](double t) {
            const double v = eval_series(x, b, t)[0];
            return v * v * v;
        };
        CHECK(h.low[0] == doctest::Approx(quadrature_cos(f, 0, b.omega)).epsilon(1e-9));
        for (int n = 1; n <= 9; ++n) {
            const double c = quadrature_cos(f, n, b.omega);
            const double s = quadrature_sin(f, n, b.omega);
            const double ch = n <= 3 ? h.low[2 * n - 1] : h.high[2 * (n - 4)];
            const double sh = n <= 3 ? h.low[2 * n] : h.high[2 * (n - 4) + 1];
            CHECK(ch == doctest::Approx(c).epsilon(1e-9).scale(1.0));
            CHECK(sh == doctest::Approx(s).epsilon(1e-9).scale(1.0));
        }
    }
    SUBCASE("degree above declared phi is rejected") {
        HarmonicBasis b(2, 1.0);
        FourierCoeffs x(1, 2);
        Polynomial p(1);
        p.add(1.0, {4});
        CHECK_THROWS_AS(exact_poly_harmonics(x, p, b, 3), std::invalid_argument);
    }
}

TEST_CASE("conditional identity and decomposition") {
    std::mt19937_64 rng(99);
    for (int phi : {2, 3, 4, 5}) {
        for (int N : {1, 2, 4, 8}) {
            HarmonicBasis b(N, 1.3);
            FourierCoeffs x(random_coeffs(1, N, rng, 0.8));
            Polynomial p(1);
            for (int d = 0; d <= phi; ++d)
                p.add(std::uniform_real_distribution<double>(-1, 1)(rng), {d});

            // dealiased: gap vanishes
            auto g = conditional_identity_gap(x, p, b, phi, (phi + 1) * N + 1);
            CHECK(g.gap < 1e-10);

            // every admissible M: decomposition E+f~ = h^ + E_A h^'
            for (int M = 2 * N + 1; M <= (phi + 1) * N + 3; ++M) {
                auto gm = conditional_identity_gap(x, p, b, phi, M);
                CHECK(gm.decomposition_gap < 1e-10);
            }
        }
    }

    SUBCASE("HDHB gap equals the aliasing term") {
        HarmonicBasis b(3, 1.0);
        FourierCoeffs x(random_coeffs(1, 3, rng));
        Polynomial p(1);
        p.add(1.0, {3});
        const int M = 2 * 3 + 1;
        auto g = conditional_identity_gap(x, p, b, 3, M);
        CHECK(g.gap > 1e-6);
        auto ops = build_operators(b, build_grid(b, M), 3);
        auto h = exact_poly_harmonics(x, p, b, 3);
        const double alias_norm = (ops.E_alias * h.high).lpNorm<Eigen::Infinity>();
        CHECK(g.gap == doctest::Approx(alias_norm).epsilon(1e-10));
    }

    SUBCASE("linear field has no gap at any M") {
        HarmonicBasis b(2, 1.0);
        FourierCoeffs x(random_coeffs(1, 2, rng));
        Polynomial p(1);
        p.add(2.5, {1});
        p.add(-0.3, {0});
        for (int M = 5; M <= 12; ++M)
            CHECK(conditional_identity_gap(x, p, b, 1, M).gap < 1e-13);
    }
}
