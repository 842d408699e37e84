#include "doctest.h"

#include "bartnik/radial_grid.hpp"

#include <cmath>

using namespace bartnik;

TEST_CASE("differentiation of power laws") {
    RadialGrid g(200, 3.0, 3000.0);
    for (double delta : {-3.0, -1.5, -0.75, 0.0}) {
        Eigen::VectorXd f(g.size()), df(g.size());
        for (int i = 0; i < g.size(); ++i) {
            f[i] = std::pow(g.r()[i], delta);
            df[i] = delta * std::pow(g.r()[i], delta - 1.0);
        }
        const Eigen::VectorXd num = g.d1() * f;
        const double floor = 1e-11 * (std::abs(df[0]) + 1.0);
        for (int i = 0; i < g.size() - 5; ++i) {
            const double scale = std::abs(df[i]) + 1e-300;
            CHECK(std::abs(num[i] - df[i]) <= 1e-6 * scale + floor);
        }
        const Eigen::VectorXd num2 = g.d2() * f;
        const double floor2 = 1e-7 * (std::abs(delta * (delta - 1.0) * std::pow(g.r()[0], delta - 2.0)) + 1.0);
        for (int i = 1; i < g.size() - 8; ++i) {
            const double exact = delta * (delta - 1.0) * std::pow(g.r()[i], delta - 2.0);
            CHECK(std::abs(num2[i] - exact) <= 1e-4 * std::abs(exact) + floor2);
        }
    }
}

TEST_CASE("quadrature of decaying powers against closed forms") {
    RadialGrid g(160, 3.0, 3.0e5);
    // int_3^inf r^-2 dr = 1/3; truncated part is tiny at Rcut = 3e5
    Eigen::VectorXd f(g.size());
    for (int i = 0; i < g.size(); ++i) f[i] = std::pow(g.r()[i], -2.0);
    CHECK(g.integrate(f) == doctest::Approx(1.0 / 3.0 - 1.0 / 3.0e5).epsilon(1e-10));
}

TEST_CASE("weighted tail quadrature converges as Rcut doubles") {
    const double delta = -0.75;
    double prev = 0.0;
    double vals[3];
    int k = 0;
    for (double rc : {3000.0, 6000.0, 12000.0}) {
        RadialGrid g(200, 3.0, rc);
        Eigen::VectorXd f(g.size());
        // integrand r^{-2 delta - 1} (r^{delta - 0.1})^2 = r^{-1.2}
        for (int i = 0; i < g.size(); ++i)
            f[i] = std::pow(g.r()[i], -2.0 * delta - 1.0) * std::pow(g.r()[i], 2.0 * (delta - 0.1));
        vals[k++] = g.integrate(f);
        (void)prev;
    }
    CHECK(std::abs(vals[2] - vals[1]) < std::abs(vals[1] - vals[0]));
}

TEST_CASE("cumulative integral matches closed form") {
    RadialGrid g(100, 2.0, 500.0);
    Eigen::VectorXd f(g.size());
    for (int i = 0; i < g.size(); ++i) f[i] = 1.0 / (g.r()[i] * g.r()[i]);
    const Eigen::VectorXd F = g.cumulative(f);
    for (int i = 0; i < g.size(); ++i) {
        const double exact = 0.5 - 1.0 / g.r()[i];
        CHECK(F[i] == doctest::Approx(exact).epsilon(1e-11));
    }
    CHECK(F[0] == doctest::Approx(0.0));
}

TEST_CASE("interpolation reproduces smooth values") {
    RadialGrid g(90, 3.0, 900.0);
    Eigen::VectorXd f(g.size());
    for (int i = 0; i < g.size(); ++i) f[i] = std::exp(-(g.r()[i] - 3.0) / 5.0);
    for (double r : {3.1, 7.7, 55.0, 400.0}) {
        CHECK(g.interpolate(f, r) == doctest::Approx(std::exp(-(r - 3.0) / 5.0)).epsilon(1e-9));
    }
}

TEST_CASE("fitted decay exponent of a power law") {
    RadialGrid g(140, 3.0, 3000.0);
    Eigen::VectorXd f(g.size());
    for (int i = 0; i < g.size(); ++i) f[i] = 2.3 * std::pow(g.r()[i], -1.75);
    CHECK(g.fitted_decay_exponent(f) == doctest::Approx(-1.75).epsilon(1e-6));
}
