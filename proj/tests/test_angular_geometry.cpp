#include "doctest.h"

#include "bartnik/angular_geometry.hpp"

#include <cmath>
#include <random>

using namespace bartnik;

namespace {
SymTensorField round_metric(int L, double radius2) {
    SymTensorField g(L);
    g.tau.c[0] = radius2 * std::sqrt(4.0 * M_PI); // tau == radius2 pointwise
    return g;
}
} // namespace

TEST_CASE("curvature of round spheres") {
    SphHarmPlan plan(8);
    for (double a2 : {1.0, 4.0, 0.3}) {
        const auto mj = metric_jet(plan, round_metric(8, a2), true);
        const Eigen::VectorXd K = gauss_curvature(plan, mj);
        for (int k = 0; k < K.size(); ++k) CHECK(K[k] == doctest::Approx(1.0 / a2).epsilon(1e-11));
    }
}

TEST_CASE("curvature of a conformally round metric matches the conformal formula") {
    // gamma = e^{2 phi} gamma_round with band-limited phi:
    // K = e^{-2 phi} (1 - Lap phi)
    const int L = 10;
    SphHarmPlan plan(L);
    ScalarField phi(L);
    phi.at(1, 0) = 0.05;
    phi.at(2, 1) = -0.03;
    phi.at(3, -2) = 0.02;
    const Eigen::VectorXd pv = plan.synth(phi);
    const Eigen::VectorXd lap = plan.synth(plan.laplace_beltrami(phi));
    Eigen::VectorXd att(pv.size()), atp(pv.size()), app(pv.size());
    for (int k = 0; k < pv.size(); ++k) {
        const double c = std::exp(2.0 * pv[k]);
        att[k] = c;
        atp[k] = 0.0;
        app[k] = c;
    }
    // analysis of e^{2 phi} is not band-limited; use a bigger plan for the metric
    SphHarmPlan big(2 * L, -1, -1);
    // resynthesize phi on the big plan
    ScalarField phib(2 * L);
    for (int l = 0; l <= L; ++l)
        for (int m = -l; m <= l; ++m) phib.c[mode_index(l, m)] = phi.c[mode_index(l, m)];
    const Eigen::VectorXd pvb = big.synth(phib);
    const Eigen::VectorXd lapb = big.synth(big.laplace_beltrami(phib));
    Eigen::VectorXd btt(pvb.size()), btp(pvb.size()), bpp(pvb.size());
    for (int k = 0; k < pvb.size(); ++k) {
        const double c = std::exp(2.0 * pvb[k]);
        btt[k] = c;
        btp[k] = 0.0;
        bpp[k] = c;
    }
    const SymTensorField gm = big.analyze_sym_tensor(btt, btp, bpp);
    const auto mj = metric_jet(big, gm, true);
    const Eigen::VectorXd K = gauss_curvature(big, mj);
    for (int k = 0; k < K.size(); ++k) {
        const double expect = std::exp(-2.0 * pvb[k]) * (1.0 - lapb[k]);
        CHECK(K[k] == doctest::Approx(expect).epsilon(5e-7));
    }
}

TEST_CASE("nonround laplacian reduces to multiplier on round metrics") {
    SphHarmPlan plan(8);
    const auto mj = metric_jet(plan, round_metric(8, 2.5), false);
    ScalarField u(8);
    u.at(3, 2) = 1.0;
    u.at(1, -1) = 0.4;
    const ScalarField lap = laplacian_nonround(plan, mj, u);
    CHECK(lap.at(3, 2) == doctest::Approx(-12.0 / 2.5).epsilon(1e-11));
    CHECK(lap.at(1, -1) == doctest::Approx(-2.0 * 0.4 / 2.5).epsilon(1e-11));
}

TEST_CASE("nonround laplacian integrates to zero and is self-adjoint-ish") {
    const int L = 8;
    SphHarmPlan plan(L);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    SymTensorField g = round_metric(L, 1.0);
    for (int l = 1; l <= 3; ++l)
        for (int m = -l; m <= l; ++m) {
            g.tau.c[mode_index(l, m)] += 0.02 * nd(rng);
            if (l >= 2) {
                g.tt.e.c[mode_index(l, m)] = 0.02 * nd(rng);
                g.tt.b.c[mode_index(l, m)] = 0.02 * nd(rng);
            }
        }
    const auto mj = metric_jet(plan, g, false);
    ScalarField u(L);
    for (int l = 1; l <= 4; ++l)
        for (int m = -l; m <= l; ++m) u.c[mode_index(l, m)] = nd(rng);
    const Eigen::VectorXd lap = laplacian_nonround_grid(plan, mj, u);
    // int Lap u dV_gamma = 0
    const Eigen::VectorXd w = plan.quad_weights();
    double total = 0.0;
    for (int k = 0; k < lap.size(); ++k) total += w[k] * lap[k] * mj.jac[k];
    CHECK(std::abs(total) < 1e-10);
}

TEST_CASE("tensor divergence against the multiplier route on round metrics") {
    const int L = 8;
    SphHarmPlan plan(L);
    const double a2 = 3.1;
    const auto mj = metric_jet(plan, round_metric(L, a2), false);
    SymTensorField T(L);
    T.tt.e.at(2, 1) = 1.0;
    T.tt.b.at(4, -2) = 0.6;
    const TangentField d = div_sym_tensor(plan, mj, T);
    TracelessTensor tt(L);
    tt.e = T.tt.e;
    tt.b = T.tt.b;
    const TangentField expect = plan.div_traceless(tt, std::sqrt(a2));
    CHECK((d.e.c - expect.e.c).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK((d.b.c - expect.b.c).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("divergence of the pure-trace part is the gradient of tau") {
    const int L = 6;
    SphHarmPlan plan(L);
    const auto mj = metric_jet(plan, round_metric(L, 1.0), false);
    SymTensorField T(L);
    T.tau.at(2, -1) = 0.8;
    const TangentField d = div_sym_tensor(plan, mj, T);
    // div(tau gamma) = d tau
    CHECK(d.e.at(2, -1) == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(std::abs(d.b.at(2, -1)) < 1e-11);
}

TEST_CASE("lie derivative of the round metric along CK fields") {
    const int L = 6;
    SphHarmPlan plan(L);
    const auto mj = metric_jet(plan, round_metric(L, 1.0), false);
    // rotations are Killing: L_X gamma = 0
    for (int i = 0; i < 3; ++i) {
        const SymTensorField Lg = lie_metric(plan, mj, plan.ck_basis().fields[i]);
        CHECK(Lg.tau.c.lpNorm<Eigen::Infinity>() < 1e-10);
        CHECK(Lg.tt.e.c.lpNorm<Eigen::Infinity>() < 1e-10);
        CHECK(Lg.tt.b.c.lpNorm<Eigen::Infinity>() < 1e-10);
    }
    // boosts are conformal Killing: traceless part vanishes, trace = 2 div X
    for (int i = 3; i < 6; ++i) {
        const TangentField& X = plan.ck_basis().fields[i];
        const SymTensorField Lg = lie_metric(plan, mj, X);
        CHECK(Lg.tt.e.c.lpNorm<Eigen::Infinity>() < 1e-9);
        CHECK(Lg.tt.b.c.lpNorm<Eigen::Infinity>() < 1e-9);
        const ScalarField d = plan.divergence(X);
        for (int k = 0; k < Lg.tau.c.size(); ++k)
            CHECK(Lg.tau.c[k] == doctest::Approx(d.c[k]).epsilon(1e-10)); // tau = tr/2 = div X
    }
}

TEST_CASE("lie derivative matches the gradient-flow identity for electric fields") {
    // L_{grad f} gamma = 2 Hess f; its traceless part has e-potential f per mode
    const int L = 8;
    SphHarmPlan plan(L);
    const auto mj = metric_jet(plan, round_metric(L, 1.0), false);
    TangentField X(L);
    X.e.at(3, 2) = 0.5;
    const SymTensorField Lg = lie_metric(plan, mj, X);
    CHECK(Lg.tt.e.at(3, 2) == doctest::Approx(2.0 * 0.5).epsilon(1e-10));
    // trace part: tau = div X = -l(l+1) f
    CHECK(Lg.tau.at(3, 2) == doctest::Approx(-12.0 * 0.5).epsilon(1e-10));
}
