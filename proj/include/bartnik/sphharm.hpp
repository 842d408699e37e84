#ifndef BARTNIK_SPHHARM_HPP
#define BARTNIK_SPHHARM_HPP

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <vector>

namespace bartnik {

// Real orthonormal spherical harmonics on the unit round sphere.
// Mode layout: idx(l,m) = l^2 + l + m with m > 0 <-> cos(m phi) and
// m < 0 <-> sin(|m| phi). Tangent 1-forms and traceless symmetric 2-tensors
// are carried by parity potentials (electric = gradient/Hessian type,
// magnetic = the 90-degree rotated partner), always with respect to the
// unit round metric; other metrics act pointwise on synthesized components.

inline int n_modes(int L) { return (L + 1) * (L + 1); }
inline int mode_index(int l, int m) { return l * l + l + m; }
inline int mode_degree(int idx) { return int(std::sqrt(double(idx)) + 1e-9); }

struct ScalarField {
    Eigen::VectorXd c;
    ScalarField() = default;
    explicit ScalarField(int L) : c(Eigen::VectorXd::Zero(n_modes(L))) {}
    double& at(int l, int m) { return c[mode_index(l, m)]; }
    double at(int l, int m) const { return c[mode_index(l, m)]; }
};

struct TangentField {
    ScalarField e, b; // potentials; l = 0 entries are ignored/zero
    TangentField() = default;
    explicit TangentField(int L) : e(L), b(L) {}
};

struct TracelessTensor {
    ScalarField e, b; // potentials; l <= 1 entries are ignored/zero
    TracelessTensor() = default;
    explicit TracelessTensor(int L) : e(L), b(L) {}
};

// General symmetric 2-tensor: tau * gamma_round + traceless part.
struct SymTensorField {
    ScalarField tau;
    TracelessTensor tt;
    SymTensorField() = default;
    explicit SymTensorField(int L) : tau(L), tt(L) {}
};

struct SphGrid {
    int L_max = 0, n_theta = 0, n_phi = 0;
    Eigen::VectorXd theta, mu, sin_theta, w_theta, phi;
    int npts() const { return n_theta * n_phi; }
    int idx(int i, int j) const { return i * n_phi + j; }
};

// Grid jets: values and coordinate (theta, phi) derivatives, all exact from
// differentiated basis functions (never finite differences).
struct ScalarJet {
    Eigen::VectorXd v, dt, dp;
};
struct VectorJet {                 // coordinate 1-form components (w_theta, w_phi)
    Eigen::VectorXd vt, vp;        // values
    Eigen::VectorXd dt_vt, dp_vt, dt_vp, dp_vp;
};
struct TensorJet {                 // coordinate components T_tt, T_tp, T_pp
    std::array<Eigen::VectorXd, 3> v, dt, dp, dtt, dtp, dpp;
};

struct CKBasis;

class SphHarmPlan {
  public:
    explicit SphHarmPlan(int L_max, int n_theta = -1, int n_phi = -1);

    const SphGrid& grid() const { return grid_; }
    int L_max() const { return grid_.L_max; }

    // scalar transforms
    Eigen::VectorXd synth(const ScalarField& f) const;
    ScalarField analyze(const Eigen::VectorXd& values) const;

    // tangent fields as round-frame components (X_theta, X_phi/sin)
    void synth_vector(const TangentField& X, Eigen::VectorXd& ft, Eigen::VectorXd& fp) const;
    TangentField analyze_vector(const Eigen::VectorXd& ft, const Eigen::VectorXd& fp) const;

    // symmetric tensors as round-frame components (T_tt, T_tp, T_pp)
    void synth_sym_tensor(const SymTensorField& T, Eigen::VectorXd& att, Eigen::VectorXd& atp,
                          Eigen::VectorXd& app) const;
    SymTensorField analyze_sym_tensor(const Eigen::VectorXd& att, const Eigen::VectorXd& atp,
                                      const Eigen::VectorXd& app) const;

    // jets with analytic coordinate derivatives
    ScalarJet scalar_jet(const ScalarField& f) const;
    VectorJet vector_jet(const TangentField& X) const;
    TensorJet sym_tensor_jet(const SymTensorField& T, bool second_derivs) const;

    // angular operators on the unit round sphere
    ScalarField laplace_beltrami(const ScalarField& f) const;
    TangentField grad(const ScalarField& f) const;       // electric potential = f
    ScalarField divergence(const TangentField& X) const; // = laplace of e-potential

    // divergence on traceless symmetric tensors: per-degree multipliers,
    // measured once at construction from the forward operator by quadrature
    double div_tt_multiplier(int l) const { return lambda_[l]; }
    double tt_basis_norm2(int l) const { return mu_[l]; }
    TangentField div_traceless(const TracelessTensor& T, double radius) const;
    struct DivInverse {
        TracelessTensor tensor;
        std::array<double, 6> ck;
    };
    DivInverse div_traceless_inverse(const TangentField& rhs, double radius) const;

    const CKBasis& ck_basis() const { return *ck_; }
    std::array<double, 6> ck_projection(const TangentField& rhs) const;

    // L2 pairings on the unit sphere
    double dot(const ScalarField& a, const ScalarField& b) const { return a.c.dot(b.c); }
    double dot(const TangentField& a, const TangentField& b) const;
    Eigen::VectorXd quad_weights() const; // pointwise dsigma weights, npts

  private:
    SphGrid grid_;
    // ptab_[m]: rows l-m, cols theta-index; value and theta-derivative
    std::vector<Eigen::MatrixXd> ptab_, dptab_;
    Eigen::MatrixXd cos_tab_, sin_tab_; // (L+1) x n_phi, normalized azimuthal factors
    Eigen::VectorXd lambda_, mu_;
    std::unique_ptr<CKBasis> ck_;

    void legendre_row(int m, double theta, Eigen::VectorXd& P, Eigen::VectorXd& dP) const;
    friend struct CKBasis;
};

// The six conformal Killing fields of the round sphere: three rotations
// (magnetic l=1) and three boosts (electric l=1), L2-orthonormal as 1-forms,
// which is the gamma_sc-measure normalization used for boundary projections.
struct CKBasis {
    std::array<TangentField, 6> fields; // 0..2 rotations, 3..5 boosts
    explicit CKBasis(int L);
    Eigen::Matrix<double, 6, 6> gram(const SphHarmPlan& plan) const;
};

} // namespace bartnik

#endif
