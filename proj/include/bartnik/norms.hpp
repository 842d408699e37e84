#ifndef BARTNIK_NORMS_HPP
#define BARTNIK_NORMS_HPP

#include "bartnik/radial_grid.hpp"
#include "bartnik/sphharm.hpp"

namespace bartnik {

// Radial profile with derivative stack (order = number of valid derivatives).
struct ProfileStack {
    Eigen::VectorXd v, d1, d2;
    int order = 2;
};

// Coefficient stacks of a full field: rows = radial nodes, cols = modes.
struct FieldStack {
    Eigen::MatrixXd v, d1, d2;
    int order = 2;
};

struct RadialNormResult {
    double value = 0.0;     // truncated + estimated tail
    double truncated = 0.0;
    double tail = 0.0;
    double fitted_exponent = 0.0;
    bool divergent = false;
    int argmax_node = -1;   // C-norms: node attaining the sup of the t'=0 term
};

// ||f||^2_{H,t,tau} = sum_{t'=0..t} int r^{-2 tau - 1 + 2t'} (f^(t'))^2 dr
RadialNormResult weighted_H_profile(const RadialGrid& g, const ProfileStack& f, int t, double tau);

// ||f||^2_{C,t,tau} = sum_{t'=0..t} sup_r r^{-2 tau + 2t'} (f^(t'))^2
RadialNormResult weighted_C_profile(const RadialGrid& g, const ProfileStack& f, int t, double tau);

struct NormReport {
    double H = 0.0, C = 0.0;       // the two norms (not squared)
    double A_H = 0.0, A_C = 0.0;   // max over t' <= t of the shifted-(k-t') variants
    double A = 0.0;                // intersection norm of the A_{H,C} pair
    bool divergent = false;
    double tail = 0.0;
    Eigen::VectorXd per_mode_H2;   // squared per-mode contributions at (t,k)
};

// Norms of a full field in H^t_delta([r0,inf); H^k(S^2)) and friends.
NormReport weighted_norm_field(const RadialGrid& g, const FieldStack& f, int t, int k, double delta);

} // namespace bartnik

#endif
