#ifndef BARTNIK_BACKGROUND_HPP
#define BARTNIK_BACKGROUND_HPP

#include <cmath>
#include <stdexcept>

namespace bartnik {

// Conformal Schwarzschild background on M = R^3 \ B_{n m0}:
//   g_sc = dr^2 + r(r-2m0) gamma_{S^2},  u_sc = ln sqrt(1 - 2m0/r).
struct Background {
    double m0;
    double n;

    Background(double m0_, double n_) : m0(m0_), n(n_) {
        if (!(m0 > 0.0)) throw std::domain_error("Background: m0 must be positive");
        if (!(n > 2.0)) throw std::domain_error("Background: n must exceed 2");
    }

    double r0() const { return n * m0; }

    // exp(int_{n m0}^r trK_sc) = r(r-2m0) / (n(n-2)m0^2)
    double transport_factor(double r) const {
        return r * (r - 2.0 * m0) / (n * (n - 2.0) * m0 * m0);
    }

    double boundary_area_radius2() const { return n * (n - 2.0) * m0 * m0; }
};

struct BackgroundPoint {
    double u;              // u_sc(r)
    double du_dr;          // m0 / (r(r-2m0))
    double d2u_dr2;
    double trK;            // 2(r-m0) / (r(r-2m0))
    double dtrK_dr;
    double angular_factor; // r(r-2m0)
};

inline BackgroundPoint eval_background(const Background& bg, double r) {
    if (r < bg.r0() * (1.0 - 1e-12))
        throw std::domain_error("eval_background: r below boundary radius n*m0");
    const double m0 = bg.m0;
    const double q = r * (r - 2.0 * m0);
    BackgroundPoint p;
    p.u = 0.5 * std::log(1.0 - 2.0 * m0 / r);
    p.du_dr = m0 / q;
    p.d2u_dr2 = -m0 * (2.0 * r - 2.0 * m0) / (q * q);
    p.trK = 2.0 * (r - m0) / q;
    p.dtrK_dr = -2.0 * (r * r - 2.0 * m0 * r + 2.0 * m0 * m0) / (q * q);
    p.angular_factor = q;
    return p;
}

// Bartnik data of the physical Schwarzschild exterior:
//   gamma_B = (n m0)^2 gamma_{S^2},  trK_B = 2 sqrt(1-2/n) / (n m0).
inline double schwarzschild_trK_data(const Background& bg) {
    return 2.0 * std::sqrt(1.0 - 2.0 / bg.n) / (bg.n * bg.m0);
}

} // namespace bartnik

#endif
