#ifndef BARTNIK_RADIAL_GRID_HPP
#define BARTNIK_RADIAL_GRID_HPP

#include <Eigen/Dense>

namespace bartnik {

// Chebyshev-Gauss-Lobatto collocation on [r0, Rcut] through the
// compactification x = 1 - r0/r. x = 1 is spatial infinity; the grid stops
// at x_max = 1 - r0/Rcut so every profile is analytic on the closed domain.
class RadialGrid {
  public:
    RadialGrid(int n_nodes, double r0, double r_cut);

    int size() const { return int(r_.size()); }
    double r0() const { return r0_; }
    double r_cut() const { return r_cut_; }
    const Eigen::VectorXd& r() const { return r_; }
    const Eigen::MatrixXd& d1() const { return d1_; }       // d/dr
    const Eigen::MatrixXd& d2() const { return d2_; }       // d^2/dr^2
    const Eigen::VectorXd& weights() const { return w_; }   // for int f dr

    double integrate(const Eigen::VectorXd& f) const { return w_.dot(f); }

    // F(r_i) = int_{r0}^{r_i} f dr, spectrally via Chebyshev antiderivative.
    Eigen::VectorXd cumulative(const Eigen::VectorXd& f) const;

    // Barycentric interpolation of nodal values to arbitrary r in [r0, Rcut].
    double interpolate(const Eigen::VectorXd& f, double r) const;

    // Least-squares slope of log|f| vs log r over the outer nodes.
    // Returns -infinity when the tail is numerically zero.
    double fitted_decay_exponent(const Eigen::VectorXd& f) const;

    // Estimate of int_{Rcut}^inf r^w f(r)^2 dr assuming f ~ f(Rcut) (r/Rcut)^p
    // with p the fitted exponent. Returns {value, divergent_flag}.
    std::pair<double, bool> tail_of_weighted_square(const Eigen::VectorXd& f, double w) const;

  private:
    double r0_, r_cut_, x_max_;
    Eigen::VectorXd y_;      // CGL nodes in [-1,1], descending
    Eigen::VectorXd r_;      // ascending radii
    Eigen::VectorXd w_;      // quadrature weights for dr
    Eigen::MatrixXd d1_, d2_;
    Eigen::MatrixXd vals_to_cheb_;  // values -> Chebyshev coefficients
    Eigen::MatrixXd cheb_to_vals_;
    Eigen::VectorXd bary_w_;
};

} // namespace bartnik

#endif
