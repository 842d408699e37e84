#include "bartnik/hardy.hpp"

#include <cmath>
#include <stdexcept>

namespace bartnik {

double hardy_R0(const RadialGrid& g, const SphericalFoliation& m) {
    double R0 = g.r0();
    for (int i = g.size() - 1; i >= 0; --i) {
        const double r = g.r()[i];
        if (std::abs(r * (m.trK[i] - 2.0 / r)) > 1.0) {
            R0 = (i + 1 < g.size()) ? g.r()[i + 1] : g.r_cut();
            break;
        }
    }
    return R0;
}

RadialC3 radial_bump(const RadialGrid& g, double ra, double rb) {
    RadialC3 z;
    const int N = g.size();
    z.v = Eigen::VectorXd::Zero(N);
    z.d1 = Eigen::VectorXd::Zero(N);
    z.d2 = Eigen::VectorXd::Zero(N);
    z.d3 = Eigen::VectorXd::Zero(N);
    const double w = rb - ra;
    for (int i = 0; i < N; ++i) {
        const double s = (g.r()[i] - ra) / w;
        if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
        const double u = s - s * s, up = 1.0 - 2.0 * s;
        const double h1 = up / (u * u);
        const double h2 = -2.0 / (u * u) - 2.0 * up * up / (u * u * u);
        const double h3 = 12.0 * up / (u * u * u) + 6.0 * up * up * up / (u * u * u * u);
        const double B = std::exp(-1.0 / u);
        z.v[i] = B;
        z.d1[i] = h1 * B / w;
        z.d2[i] = (h2 + h1 * h1) * B / (w * w);
        z.d3[i] = (h3 + 3.0 * h1 * h2 + h1 * h1 * h1) * B / (w * w * w);
    }
    return z;
}

HardyResult hardy_check(const RadialGrid& g, const SphericalFoliation& m, const ProfileStack& chi,
                        double f_l2, double df_l2, double tau, double R) {
    if (!(tau > 0.0)) throw std::invalid_argument("hardy_check: tau must be positive");
    HardyResult res;
    res.R0 = hardy_R0(g, m);
    if (R < res.R0 - 1e-12) throw std::invalid_argument("hardy_check: R below the computed R0");
    Eigen::VectorXd lhs(g.size()), rhs(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const double r = g.r()[i];
        if (r < R) {
            lhs[i] = rhs[i] = 0.0;
            continue;
        }
        const double c = chi.v[i], cp = chi.d1[i];
        lhs[i] = std::pow(r, tau - 2.0) * c * c * f_l2 * m.a2[i];
        rhs[i] = std::pow(r, tau) * (cp * cp * f_l2 + c * c * df_l2 / m.a2[i]) * m.a2[i];
    }
    res.lhs = g.integrate(lhs);
    res.rhs = (4.0 / (tau * tau)) * g.integrate(rhs);
    res.ratio = (res.rhs > 0.0) ? res.lhs / res.rhs : 0.0;
    return res;
}

ChainedHardyResult chained_hardy_check(const RadialGrid& g, const SphericalFoliation& m,
                                       const RadialC3& zeta, double delta, double R) {
    ChainedHardyResult res;
    res.constant = 1.0;
    for (double tau : {-2.0 * delta - 1.0, -2.0 * delta + 1.0, -2.0 * delta + 3.0})
        res.constant *= 4.0 / (tau * tau);
    Eigen::VectorXd lhs(g.size()), rhs(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const double r = g.r()[i];
        if (r < R) {
            lhs[i] = rhs[i] = 0.0;
            continue;
        }
        const double z = zeta.v[i], z1 = zeta.d1[i], z2 = zeta.d2[i], z3 = zeta.d3[i];
        const double k = 0.5 * m.trK[i];
        const double w = z1 * k;
        const double wp = 0.5 * (z2 * m.trK[i] + z1 * m.dtrK[i]);
        const double grad3 = z3 * z3 + 2.0 * wp * wp + 4.0 * k * k * (z2 - w) * (z2 - w);
        lhs[i] = std::pow(r, -2.0 * delta - 3.0) * (z * z + r * r * z1 * z1) * m.a2[i];
        rhs[i] = std::pow(r, -2.0 * (delta - 3.0) - 3.0) * grad3 * m.a2[i];
    }
    res.lhs = 4.0 * M_PI * g.integrate(lhs);
    res.rhs = 4.0 * M_PI * g.integrate(rhs);
    res.ratio = (res.rhs > 0.0) ? res.lhs / (res.constant * res.rhs) : 0.0;
    return res;
}

} // namespace bartnik
