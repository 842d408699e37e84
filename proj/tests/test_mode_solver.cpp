#include "doctest.h"

#include "bartnik/legendre.hpp"
#include "bartnik/mode_solver.hpp"

#include <cmath>
#include <random>

using namespace bartnik;

TEST_CASE("homogeneous l=1 solve reproduces Q_1") {
    Background bg(1.0, 3.0);
    RadialGrid g(160, bg.r0(), 3000.0);
    const double R = bg.n - 1.0;
    const double c = legendre_Q(1, R).value;
    const auto mp = solve_mode(1, 0, bg, g, Eigen::VectorXd::Zero(g.size()), c);
    for (int i = 0; i < g.size(); i += 13) {
        const double z = g.r()[i] / bg.m0 - 1.0;
        const auto q = legendre_Q(1, z);
        CHECK(mp.a[i] == doctest::Approx(q.value).epsilon(1e-9));
        CHECK(mp.da[i] == doctest::Approx(q.deriv / bg.m0).epsilon(1e-8));
    }
}

TEST_CASE("l=0 boundary slope from the decay condition") {
    Background bg(1.0, 3.0);
    RadialGrid g(160, bg.r0(), 3000.0);
    const auto mp = solve_mode(0, 0, bg, g, Eigen::VectorXd::Zero(g.size()), 1.0);
    CHECK(mp.da[0] == doctest::Approx(-2.0 / (3.0 * std::log(3.0))).epsilon(1e-10));
    // solution decays: final value far below the boundary value
    CHECK(std::abs(mp.a[g.size() - 1]) < 2e-3);
}

TEST_CASE("zero data gives the zero solution") {
    Background bg(1.0, 2.5);
    RadialGrid g(120, bg.r0(), 2500.0);
    for (int l : {0, 1, 3}) {
        const auto mp = solve_mode(l, 0, bg, g, Eigen::VectorXd::Zero(g.size()), 0.0);
        CHECK(mp.a.lpNorm<Eigen::Infinity>() < 1e-14);
    }
}

TEST_CASE("manufactured solution is recovered, including derivatives") {
    // u*(r) = exp(-(r - n m0)); b = u*'' + trK u*' - l(l+1) u*/(r(r-2m0))
    Background bg(1.0, 3.0);
    RadialGrid g(200, bg.r0(), 3000.0);
    for (int l : {0, 1, 2, 5}) {
        Eigen::VectorXd b(g.size()), ustar(g.size());
        for (int i = 0; i < g.size(); ++i) {
            const double r = g.r()[i];
            const auto p = eval_background(bg, r);
            const double u = std::exp(-(r - bg.r0()));
            ustar[i] = u;
            b[i] = u - p.trK * u - double(l) * (l + 1) * u / p.angular_factor;
        }
        const auto mp = solve_mode(l, 0, bg, g, b, 1.0);
        double emax = 0.0, dmax = 0.0;
        for (int i = 0; i < g.size(); ++i) {
            emax = std::max(emax, std::abs(mp.a[i] - ustar[i]));
            dmax = std::max(dmax, std::abs(mp.da[i] + ustar[i]));
        }
        CHECK(emax < 1e-9);
        CHECK(dmax < 1e-8);
    }
}

TEST_CASE("solve_dirichlet: manufactured Y_{2,1} solution in the A norm") {
    Background bg(1.0, 3.0);
    RadialGrid g(200, bg.r0(), 3000.0);
    SphHarmPlan plan(8);
    const int nm = n_modes(8);
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(g.size(), nm);
    ScalarField h(8);
    const int q = mode_index(2, 1);
    for (int i = 0; i < g.size(); ++i) {
        const double r = g.r()[i];
        const auto p = eval_background(bg, r);
        const double u = std::exp(-(r - bg.r0()));
        F(i, q) = u - p.trK * u - 6.0 * u / p.angular_factor;
    }
    h.c[q] = 1.0;
    const auto sol = solve_dirichlet(bg, g, plan, F, h);
    CHECK(sol.boundary_mismatch < 1e-12);
    FieldStack err = sol.u;
    for (int i = 0; i < g.size(); ++i) {
        const double u = std::exp(-(g.r()[i] - bg.r0()));
        err.v(i, q) -= u;
        err.d1(i, q) += u;
        err.d2(i, q) -= u;
    }
    const auto rep = weighted_norm_field(g, err, 2, 2, -0.75);
    CHECK(rep.A < 1e-8);
    // residual of the recovered solution against the data
    const Eigen::MatrixXd res = dirichlet_residual(bg, g, sol.u, F);
    CHECK(res.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("linearity of the solver") {
    Background bg(1.0, 3.0);
    RadialGrid g(140, bg.r0(), 3000.0);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd;
    Eigen::VectorXd b1(g.size()), b2(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const double e = std::exp(-(g.r()[i] - bg.r0()) * 0.7);
        b1[i] = nd(rng) * 0.1 * e;
        b2[i] = nd(rng) * 0.1 * e;
    }
    // smooth the random data radially to keep it resolvable
    for (int pass = 0; pass < 3; ++pass)
        for (int i = 1; i + 1 < g.size(); ++i) b1[i] = 0.25 * b1[i - 1] + 0.5 * b1[i] + 0.25 * b1[i + 1];
    for (int pass = 0; pass < 3; ++pass)
        for (int i = 1; i + 1 < g.size(); ++i) b2[i] = 0.25 * b2[i - 1] + 0.5 * b2[i] + 0.25 * b2[i + 1];
    const double a1 = 0.7, a2 = -1.3, c1 = 0.4, c2 = -0.9;
    const auto s1 = solve_mode(2, 0, bg, g, b1, c1);
    const auto s2 = solve_mode(2, 0, bg, g, b2, c2);
    const auto s12 = solve_mode(2, 0, bg, g, a1 * b1 + a2 * b2, a1 * c1 + a2 * c2);
    double emax = 0.0;
    for (int i = 0; i < g.size(); ++i)
        emax = std::max(emax, std::abs(s12.a[i] - a1 * s1.a[i] - a2 * s2.a[i]));
    CHECK(emax < 1e-10);
}

TEST_CASE("maximum principle spot check on the l=0 mode") {
    // F <= 0 and h >= 0 imply u >= 0 up to quadrature noise
    Background bg(1.0, 3.0);
    RadialGrid g(160, bg.r0(), 3000.0);
    Eigen::VectorXd b(g.size());
    for (int i = 0; i < g.size(); ++i) b[i] = -std::exp(-(g.r()[i] - bg.r0()));
    const auto mp = solve_mode(0, 0, bg, g, b, 0.5);
    for (int i = 0; i < g.size(); ++i) CHECK(mp.a[i] >= -1e-8);
}

TEST_CASE("decay exponent of solutions stays at or below delta") {
    Background bg(1.0, 3.0);
    RadialGrid g(200, bg.r0(), 3000.0);
    Eigen::VectorXd b(g.size());
    for (int i = 0; i < g.size(); ++i) b[i] = std::pow(g.r()[i] / bg.r0(), -0.75 - 2.0);
    for (int l : {1, 2}) {
        const auto mp = solve_mode(l, 0, bg, g, b, 0.3);
        // interior log-slope, away from the truncation boundary
        const double a1 = std::abs(g.interpolate(mp.a, 100.0));
        const double a2 = std::abs(g.interpolate(mp.a, 400.0));
        const double slope = std::log(a2 / a1) / std::log(4.0);
        CHECK(slope <= -0.70);
    }
}

TEST_CASE("stack consistency: a'' equals D a' within grid tolerance") {
    Background bg(1.0, 3.0);
    RadialGrid g(160, bg.r0(), 3000.0);
    Eigen::VectorXd b(g.size());
    for (int i = 0; i < g.size(); ++i) b[i] = std::exp(-0.5 * (g.r()[i] - bg.r0()));
    const auto mp = solve_mode(3, 1, bg, g, b, 0.8);
    const Eigen::VectorXd num = g.d1() * mp.da;
    double emax = 0.0, scale = 0.0;
    for (int i = 0; i < g.size() - 10; ++i) {
        emax = std::max(emax, std::abs(num[i] - mp.dda[i]));
        scale = std::max(scale, std::abs(mp.dda[i]));
    }
    CHECK(emax < 1e-6 * scale + 1e-9);
}

TEST_CASE("estimate ratios stay uniform in l") {
    Background bg(1.0, 3.0);
    RadialGrid g(140, bg.r0(), 3000.0);
    const auto rep = verify_mode_estimates(bg, g, 32, 8, -0.75, 99);
    CHECK(rep.plateau_H(1, 16, 17, 32) <= 1.5);
    for (int l = 1; l <= 32; ++l) {
        CHECK(std::isfinite(rep.max_ratio_H[l]));
        CHECK(std::isfinite(rep.max_ratio_C[l]));
        CHECK(rep.max_ratio_H[l] > 0.0);
    }
}
