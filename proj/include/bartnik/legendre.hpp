#ifndef BARTNIK_LEGENDRE_HPP
#define BARTNIK_LEGENDRE_HPP

#include <utility>
#include <vector>

namespace bartnik {

// Legendre functions on (1, inf) normalized so that
//   z^{-l} P_l(z) -> 1  and  z^{l+1} Q_l(z) -> 1  as z -> inf.
// P_l is the exact finite Frobenius sum; Q_l is evaluated from its
// inverse-power series away from z = 1 and by a normalized downward
// recurrence close to it.

struct LegendreValue {
    double value;
    double deriv;
};

LegendreValue legendre_P(int ell, double z);
LegendreValue legendre_Q(int ell, double z, double tol = 1e-14);

// Scaled variants, O(1) for all ell: p = z^{-l} P_l, q = z^{l+1} Q_l
// together with the scaled derivatives z^{-(l-1)} P_l' and z^{l+2} Q_l'.
struct ScaledPair {
    double p, dp, q, dq;
};
ScaledPair legendre_scaled(int ell, double z, double tol = 1e-14);

// Signed Wronskian constant (P Q' - P' Q)(z^2-1); equals -(2l+1) in this
// normalization (the growing/decaying pairing fixes the sign).
double wronskian_constant(int ell, double z, double tol = 1e-14);

// Max over l <= ell_max and the z grid of the four scaled ratios of
// Prop.-style uniform bounds, with the location of each maximum.
struct UniformBoundReport {
    double max_ratio_P, max_ratio_Q, max_ratio_dP, max_ratio_dQ;
    int argmax_ell_P, argmax_ell_Q, argmax_ell_dP, argmax_ell_dQ;
    double argmax_z_P, argmax_z_Q, argmax_z_dP, argmax_z_dQ;
};
UniformBoundReport verify_uniform_bounds(int ell_max, const std::vector<double>& z_grid, double R);

} // namespace bartnik

#endif
