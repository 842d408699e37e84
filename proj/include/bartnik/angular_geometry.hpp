#ifndef BARTNIK_ANGULAR_GEOMETRY_HPP
#define BARTNIK_ANGULAR_GEOMETRY_HPP

#include "bartnik/sphharm.hpp"

namespace bartnik {

// Pointwise 2-metric data on the angular grid, assembled from exact basis
// jets. All derivative inputs are analytic; the only approximation anywhere
// is the final band-limited re-analysis of nonlinear products.
struct MetricJet {
    TensorJet g;                      // coordinate components + derivatives
    Eigen::VectorXd det;              // coordinate determinant
    Eigen::VectorXd jac;              // sqrt(det / sin^2) relative to round
    Eigen::VectorXd itt, itp, ipp;    // inverse metric, coordinate components
    bool second = false;
};

MetricJet metric_jet(const SphHarmPlan& plan, const SymTensorField& gamma, bool second_derivs);

// Gauss curvature K (scalar curvature = 2K), pointwise via Brioschi's
// formula with exact metric derivatives.
Eigen::VectorXd gauss_curvature(const SphHarmPlan& plan, const MetricJet& mj);

// Laplace-Beltrami of a scalar with respect to the supplied metric.
ScalarField laplacian_nonround(const SphHarmPlan& plan, const MetricJet& mj, const ScalarField& u);
Eigen::VectorXd laplacian_nonround_grid(const SphHarmPlan& plan, const MetricJet& mj, const ScalarField& u);

// Divergence of a symmetric 2-tensor: grid 1-form in round-frame components.
void div_sym_tensor_grid(const SphHarmPlan& plan, const MetricJet& mj, const SymTensorField& T,
                         Eigen::VectorXd& out_t, Eigen::VectorXd& out_p);
TangentField div_sym_tensor(const SphHarmPlan& plan, const MetricJet& mj, const SymTensorField& T);

// Lie derivative of the metric along a tangent vector field (potentials of
// the round-lowered 1-form), returned as a symmetric tensor field.
SymTensorField lie_metric(const SphHarmPlan& plan, const MetricJet& mj, const TangentField& X);

} // namespace bartnik

#endif
