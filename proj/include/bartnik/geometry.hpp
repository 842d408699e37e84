#ifndef BARTNIK_GEOMETRY_HPP
#define BARTNIK_GEOMETRY_HPP

#include "bartnik/angular_geometry.hpp"
#include "bartnik/background.hpp"
#include "bartnik/norms.hpp"
#include "bartnik/radial_grid.hpp"
#include "bartnik/sphharm.hpp"

#include <array>

namespace bartnik {

// Scalar field on M with two radial derivative stacks (mode coefficients per node).
struct UStack {
    Eigen::MatrixXd v, d1, d2;
    static UStack zero(const RadialGrid& g, int L);
    static UStack background(const Background& bg, const RadialGrid& g, int L);
    ScalarField node(int i) const;
    ScalarField node_d1(int i) const;
    ScalarField node_d2(int i) const;
};

// Angular metric g(r) (or a symmetric-tensor field on M) with radial stacks,
// stored in the tau * gamma_round + traceless decomposition per node.
struct TensorStack {
    Eigen::MatrixXd tau, te, tb;
    Eigen::MatrixXd dtau, dte, dtb;
    Eigen::MatrixXd ddtau, ddte, ddtb;
    static TensorStack zero(const RadialGrid& g, int L);
    SymTensorField node(int i) const;
    SymTensorField node_d1(int i) const;
    SymTensorField node_d2(int i) const;
    void set_node(int i, const SymTensorField& T, const SymTensorField& dT, const SymTensorField& ddT);
    void axpy(double a, const TensorStack& other);
};

struct FoliatedMetric {
    const Background* bg = nullptr;
    const RadialGrid* grid = nullptr;
    const SphHarmPlan* plan = nullptr;
    TensorStack g;
    static FoliatedMetric schwarzschild(const Background& bg, const RadialGrid& grid, const SphHarmPlan& plan);
    // r^2 (gamma_inf + h(r)) split: gamma_inf estimated from the outermost node
    SymTensorField gamma_inf() const;
};

struct BartnikData {
    SymTensorField gamma;
    ScalarField trK;
};
BartnikData schwarzschild_bartnik(const Background& bg, int L);

// Pointwise extrinsic quantities at one radial node.
struct NodeKinematics {
    std::array<Eigen::VectorXd, 3> gfr, dgfr, ddgfr; // frame components of g, dr g, dr^2 g
    Eigen::VectorXd i00, i01, i11;                   // inverse of g (frame)
    Eigen::VectorXd trK, dtrK;
    std::array<Eigen::VectorXd, 3> khat, dkhat;      // frame components
    Eigen::VectorXd khat2;                           // |Khat|^2_g pointwise
};
NodeKinematics node_kinematics(const SphHarmPlan& plan, const TensorStack& g, int i, bool with_d2);

// trK and Khat of the metric as coefficient data (spec: second fundamental form).
struct SecondFundamentalForm {
    Eigen::MatrixXd trK;       // scalar coefficients per node
    TensorStack khat;          // value stacks only (d-stacks zero)
};
SecondFundamentalForm second_fundamental_form(const FoliatedMetric& fm);

// Delta_g u = dr^2 u + trK dr u + angular Laplacian, coefficients per node.
Eigen::MatrixXd laplacian(const FoliatedMetric& fm, const UStack& u);

// Left sides of the radial Riccati transports (zero for exact solutions):
//   R2 = dr trK + trK^2/2 + |Khat|^2 + 2 (dr u)^2            (scalar)
//   R3 = dr Khat + [2 du x du + g(r)((dr u)^2 - |grad u|^2)] (tensor)
struct TransportResiduals {
    Eigen::MatrixXd r2;
    TensorStack r3;
};
TransportResiduals transport_step_residuals(const FoliatedMetric& fm, const UStack& u);

struct ConstraintResidual {
    ScalarField gauss;       // contracted Gauss row on the boundary
    TangentField codazzi;    // contracted Codazzi row on the boundary
    std::array<double, 6> ck{};
    SymTensorField match_g;  // e^{-2u} g|bdry - gamma_B
    ScalarField match_trK;   // trK|bdry - e^{-u} trK_B - 2 dr u
};
ConstraintResidual boundary_constraints(const FoliatedMetric& fm, const UStack& u, const BartnikData& data);

// A/H transport along the foliation for a boundary 1-form omega:
// A(r) = omega / L(r), H(r) = L^{-1} int L 2 div A, L = exp(int trK).
struct AHTransport {
    Eigen::VectorXd L;               // transport factor per node
    Eigen::MatrixXd A_e, A_b;        // 1-form potentials per node
    Eigen::MatrixXd H;               // scalar coefficients per node
    double fit_exponent_A = 0.0;     // pointwise-|A|_g decay
    double fit_exponent_H = 0.0;
};
AHTransport ah_transport(const FoliatedMetric& fm, const TangentField& omega);

// Interior Gauss and Codazzi recomputation at chosen radii (nearest nodes):
// residual sup-norms of geomeq3/geomeq4 combined with Ric = 2 du x du.
struct InteriorCheck {
    std::vector<double> radii, gauss_resid, codazzi_resid;
};
InteriorCheck interior_gauss_codazzi(const FoliatedMetric& fm, const UStack& u,
                                     const std::vector<double>& radii);

} // namespace bartnik

#endif
