#ifndef BARTNIK_MODE_SOLVER_HPP
#define BARTNIK_MODE_SOLVER_HPP

#include "bartnik/background.hpp"
#include "bartnik/norms.hpp"
#include "bartnik/radial_grid.hpp"
#include "bartnik/sphharm.hpp"

#include <cstdint>

namespace bartnik {

// Per-mode radial profile of the Dirichlet solve with derivative stacks.
struct ModeProfile {
    int l = 0, m = 0;
    Eigen::VectorXd a, da, dda;
};

// Unique decaying solution of
//   r(r-2m0) a'' + 2(r-m0) a' - l(l+1) a = r(r-2m0) b,   a(n m0) = c.
// l >= 1 goes through the Legendre pair in z = r/m0 - 1; l = 0 through the
// two explicit quadratures with a'(n m0) pinned by decay.
ModeProfile solve_mode(int l, int m, const Background& bg, const RadialGrid& g,
                       const Eigen::VectorXd& b, double c);

// Assembled solve of (Delta_{g_sc} u, u|bdry) = (F, h); F given as
// coefficient values (rows = radial nodes, cols = modes).
struct DirichletSolution {
    FieldStack u;
    double boundary_mismatch = 0.0;  // max |a(r0) - c| over modes
};
DirichletSolution solve_dirichlet(const Background& bg, const RadialGrid& g, const SphHarmPlan& plan,
                                  const Eigen::MatrixXd& F, const ScalarField& h);

// Residual Delta_{g_sc} u - F of a solution, as coefficient values.
Eigen::MatrixXd dirichlet_residual(const Background& bg, const RadialGrid& g, const FieldStack& u,
                                   const Eigen::MatrixXd& F);

// Numerical verification of the per-mode a-priori estimates: for random
// decaying data (b, c) per degree, the ratio of the weighted left/right sides.
struct EstimateReport {
    Eigen::VectorXd max_ratio_H, max_ratio_C; // indexed by l, entry 0 unused
    double plateau_H(int lo1, int hi1, int lo2, int hi2) const;
};
EstimateReport verify_mode_estimates(const Background& bg, const RadialGrid& g, int l_max, int samples,
                                     double delta, std::uint64_t seed);

} // namespace bartnik

#endif
