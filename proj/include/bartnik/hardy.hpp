#ifndef BARTNIK_HARDY_HPP
#define BARTNIK_HARDY_HPP

#include "bartnik/norms.hpp"
#include "bartnik/radial_grid.hpp"
#include "bartnik/sphharm.hpp"

namespace bartnik {

// Spherically symmetric foliation data needed by the Hardy quadratures:
// area factor a2(r) (angular metric = a2 * gamma_round) and trK(r).
struct SphericalFoliation {
    Eigen::VectorXd a2, trK, dtrK;
};

// Smallest grid radius from which |r (trK - 2/r)| <= 1 holds outward.
double hardy_R0(const RadialGrid& g, const SphericalFoliation& m);

struct HardyResult {
    double lhs = 0.0, rhs = 0.0;  // rhs includes the 4/tau^2 factor
    double ratio = 0.0;           // lhs / rhs
    double R0 = 0.0;
};

// int_{r >= R} r^{tau-2} |T|^2 dV <= (4/tau^2) int r^tau |grad T|^2 dV for
// T = chi(r) f(x), chi compactly supported in (R, Rcut).
HardyResult hardy_check(const RadialGrid& g, const SphericalFoliation& m, const ProfileStack& chi,
                        double f_l2, double df_l2, double tau, double R);

struct ChainedHardyResult {
    double lhs = 0.0, rhs = 0.0, constant = 0.0, ratio = 0.0;
};

// Third-derivative chain for radial samples zeta(r) on a K-hat-free foliation:
// int r^{-2delta-3} (|Z|^2 + r^2 |grad Z|^2) <= C(delta) int r^{-2(delta-3)-3} |grad^3 Z|^2
// with C(delta) the product of the three single-step constants.
struct RadialC3 {
    Eigen::VectorXd v, d1, d2, d3;
};
ChainedHardyResult chained_hardy_check(const RadialGrid& g, const SphericalFoliation& m,
                                       const RadialC3& zeta, double delta, double R);

// C-infinity bump on [ra, rb], zero outside, with analytic derivatives.
RadialC3 radial_bump(const RadialGrid& g, double ra, double rb);

} // namespace bartnik

#endif
