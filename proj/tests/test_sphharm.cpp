#include "doctest.h"

#include "bartnik/sphharm.hpp"

#include <cmath>
#include <random>

using namespace bartnik;

TEST_CASE("constant analyzes to c00 = sqrt(4 pi)") {
    SphHarmPlan plan(8);
    Eigen::VectorXd one = Eigen::VectorXd::Ones(plan.grid().npts());
    const ScalarField f = plan.analyze(one);
    CHECK(f.c[0] == doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-13));
    for (int k = 1; k < f.c.size(); ++k) CHECK(std::abs(f.c[k]) < 1e-12);
}

TEST_CASE("scalar round trip on random band-limited data") {
    SphHarmPlan plan(12);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    ScalarField f(12);
    for (int k = 0; k < f.c.size(); ++k) f.c[k] = nd(rng);
    const Eigen::VectorXd v = plan.synth(f);
    const ScalarField g = plan.analyze(v);
    CHECK((g.c - f.c).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("unit coefficient at (2,1) recovered from samples") {
    SphHarmPlan plan(6);
    ScalarField f(6);
    f.at(2, 1) = 1.0;
    const ScalarField g = plan.analyze(plan.synth(f));
    CHECK(g.at(2, 1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(g.at(2, -1)) < 1e-13);
}

TEST_CASE("laplace-beltrami eigenvalues") {
    SphHarmPlan plan(6);
    ScalarField f(6);
    f.at(1, 0) = 1.0;
    f.at(3, 2) = 2.0;
    const ScalarField g = plan.laplace_beltrami(f);
    CHECK(g.at(1, 0) == doctest::Approx(-2.0));
    CHECK(g.at(3, 2) == doctest::Approx(-24.0));
    ScalarField c(6);
    c.c[0] = 3.0;
    CHECK(plan.laplace_beltrami(c).c[0] == 0.0);
}

TEST_CASE("vector round trip and Hodge orthogonality") {
    SphHarmPlan plan(10);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    TangentField X(10);
    for (int l = 1; l <= 10; ++l)
        for (int m = -l; m <= l; ++m) {
            X.e.c[mode_index(l, m)] = nd(rng);
            X.b.c[mode_index(l, m)] = nd(rng);
        }
    Eigen::VectorXd ft, fp;
    plan.synth_vector(X, ft, fp);
    const TangentField Y = plan.analyze_vector(ft, fp);
    CHECK((Y.e.c - X.e.c).lpNorm<Eigen::Infinity>() < 1e-11);
    CHECK((Y.b.c - X.b.c).lpNorm<Eigen::Infinity>() < 1e-11);

    // L2 norm equals the sum of parity-part norms (computed via quadrature)
    const Eigen::VectorXd w = plan.quad_weights();
    double n2 = 0.0;
    for (int k = 0; k < w.size(); ++k) n2 += w[k] * (ft[k] * ft[k] + fp[k] * fp[k]);
    TangentField Xe = X, Xb = X;
    Xb.e.c.setZero();
    Xe.b.c.setZero();
    CHECK(n2 == doctest::Approx(plan.dot(Xe, Xe) + plan.dot(Xb, Xb)).epsilon(1e-11));
}

TEST_CASE("divergence of gradient and of curl") {
    SphHarmPlan plan(8);
    ScalarField f(8);
    f.at(4, -3) = 0.7;
    const TangentField g = plan.grad(f);
    const ScalarField d = plan.divergence(g);
    CHECK(d.at(4, -3) == doctest::Approx(-20.0 * 0.7).epsilon(1e-13));
    TangentField curl(8);
    curl.b.at(5, 2) = 1.3;
    const ScalarField dc = plan.divergence(curl);
    CHECK(dc.c.lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("sym tensor round trip, trace split") {
    SphHarmPlan plan(10);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    SymTensorField T(10);
    for (int l = 0; l <= 10; ++l)
        for (int m = -l; m <= l; ++m) {
            T.tau.c[mode_index(l, m)] = nd(rng);
            if (l >= 2) {
                T.tt.e.c[mode_index(l, m)] = nd(rng);
                T.tt.b.c[mode_index(l, m)] = nd(rng);
            }
        }
    Eigen::VectorXd a, b, c;
    plan.synth_sym_tensor(T, a, b, c);
    const SymTensorField S = plan.analyze_sym_tensor(a, b, c);
    CHECK((S.tau.c - T.tau.c).lpNorm<Eigen::Infinity>() < 1e-11);
    CHECK((S.tt.e.c - T.tt.e.c).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK((S.tt.b.c - T.tt.b.c).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("pure traceless tensor has pointwise zero trace") {
    SphHarmPlan plan(8);
    SymTensorField T(8);
    T.tt.e.at(3, 1) = 1.0;
    T.tt.b.at(5, -4) = 0.5;
    Eigen::VectorXd a, b, c;
    plan.synth_sym_tensor(T, a, b, c);
    for (int k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] + c[k]) < 1e-10);
}

TEST_CASE("measured divergence multipliers match the frozen constants") {
    SphHarmPlan plan(8);
    // lambda_l = -(l-1)(l+2)/2 on the unit sphere
    const double expect[] = {0, 0, -2.0, -5.0, -9.0, -14.0, -20.0, -27.0, -35.0};
    for (int l = 2; l <= 8; ++l) CHECK(plan.div_tt_multiplier(l) == doctest::Approx(expect[l]).epsilon(1e-11));
}

TEST_CASE("div inverse is a two-sided inverse away from the CK cokernel") {
    SphHarmPlan plan(9);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    const double radius = 1.7;
    TracelessTensor T0(9);
    for (int l = 2; l <= 9; ++l)
        for (int m = -l; m <= l; ++m) {
            T0.e.c[mode_index(l, m)] = nd(rng);
            T0.b.c[mode_index(l, m)] = nd(rng);
        }
    const TangentField rhs = plan.div_traceless(T0, radius);
    const auto inv = plan.div_traceless_inverse(rhs, radius);
    CHECK((inv.tensor.e.c - T0.e.c).lpNorm<Eigen::Infinity>() < 1e-11);
    CHECK((inv.tensor.b.c - T0.b.c).lpNorm<Eigen::Infinity>() < 1e-11);
    for (double k : inv.ck) CHECK(std::abs(k) < 1e-13);
}

TEST_CASE("pure CK rhs is absorbed entirely by the cokernel projection") {
    SphHarmPlan plan(6);
    TangentField rhs(6);
    rhs.b.at(1, 0) = 3.0 / std::sqrt(2.0); // 3 x rotation basis field
    const auto inv = plan.div_traceless_inverse(rhs, 2.0);
    CHECK(inv.ck[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(inv.tensor.e.c.lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("CK basis: orthonormal, rotations divergence free") {
    SphHarmPlan plan(6);
    const auto G = plan.ck_basis().gram(plan);
    CHECK((G - Eigen::Matrix<double, 6, 6>::Identity()).norm() < 1e-10);
    for (int i = 0; i < 3; ++i) {
        const ScalarField d = plan.divergence(plan.ck_basis().fields[i]);
        CHECK(d.c.lpNorm<Eigen::Infinity>() < 1e-13);
    }
}

TEST_CASE("ck_projection: orthonormality and degree orthogonality") {
    SphHarmPlan plan(6);
    auto kappa = plan.ck_projection(plan.ck_basis().fields[2]);
    for (int i = 0; i < 6; ++i) CHECK(kappa[i] == doctest::Approx(i == 2 ? 1.0 : 0.0).epsilon(1e-12));
    TangentField hi(6);
    hi.e.at(3, 1) = 1.0;
    hi.b.at(2, -2) = 1.0;
    kappa = plan.ck_projection(hi);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(kappa[i]) < 1e-10);
}

TEST_CASE("slashed-grad of div reproduces -2 X for l=1 electric fields") {
    SphHarmPlan plan(5);
    TangentField X(5);
    X.e.at(1, 1) = 0.9;
    const ScalarField d = plan.divergence(X);
    const TangentField gd = plan.grad(d);
    CHECK(gd.e.at(1, 1) == doctest::Approx(-2.0 * 0.9).epsilon(1e-13));
}

TEST_CASE("scalar jet derivatives match closed form for Y_10 and Y_22") {
    SphHarmPlan plan(5);
    ScalarField f(5);
    f.at(1, 0) = 1.0;
    const auto& gr = plan.grid();
    const ScalarJet J = plan.scalar_jet(f);
    const double N10 = std::sqrt(3.0 / (4.0 * M_PI));
    for (int i = 0; i < gr.n_theta; ++i)
        for (int j = 0; j < gr.n_phi; ++j) {
            const int k = gr.idx(i, j);
            CHECK(J.v[k] == doctest::Approx(N10 * gr.mu[i]).epsilon(1e-12));
            CHECK(J.dt[k] == doctest::Approx(-N10 * gr.sin_theta[i]).epsilon(1e-12));
            CHECK(std::abs(J.dp[k]) < 1e-13);
        }
}
