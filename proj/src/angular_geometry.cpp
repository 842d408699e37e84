#include "bartnik/angular_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace bartnik {

MetricJet metric_jet(const SphHarmPlan& plan, const SymTensorField& gamma, bool second_derivs) {
    MetricJet mj;
    mj.g = plan.sym_tensor_jet(gamma, second_derivs);
    mj.second = second_derivs;
    const auto& gr = plan.grid();
    const int n = gr.npts();
    mj.det.resize(n);
    mj.jac.resize(n);
    mj.itt.resize(n);
    mj.itp.resize(n);
    mj.ipp.resize(n);
    for (int i = 0; i < gr.n_theta; ++i) {
        const double s2 = gr.sin_theta[i] * gr.sin_theta[i];
        for (int j = 0; j < gr.n_phi; ++j) {
            const int k = gr.idx(i, j);
            const double E = mj.g.v[0][k], F = mj.g.v[1][k], G = mj.g.v[2][k];
            const double d = E * G - F * F;
            if (!(d > 0.0)) throw std::runtime_error("metric_jet: metric not positive definite");
            mj.det[k] = d;
            mj.jac[k] = std::sqrt(d / s2);
            mj.itt[k] = G / d;
            mj.itp[k] = -F / d;
            mj.ipp[k] = E / d;
        }
    }
    return mj;
}

Eigen::VectorXd gauss_curvature(const SphHarmPlan& plan, const MetricJet& mj) {
    if (!mj.second) throw std::invalid_argument("gauss_curvature: needs second derivatives");
    const int n = plan.grid().npts();
    Eigen::VectorXd K(n);
    for (int k = 0; k < n; ++k) {
        const double E = mj.g.v[0][k], F = mj.g.v[1][k], G = mj.g.v[2][k];
        const double Eu = mj.g.dt[0][k], Ev = mj.g.dp[0][k];
        const double Fu = mj.g.dt[1][k], Fv = mj.g.dp[1][k];
        const double Gu = mj.g.dt[2][k], Gv = mj.g.dp[2][k];
        const double Evv = mj.g.dpp[0][k], Fuv = mj.g.dtp[1][k], Guu = mj.g.dtt[2][k];
        const double a11 = -0.5 * Evv + Fuv - 0.5 * Guu;
        const double a12 = 0.5 * Eu, a13 = Fu - 0.5 * Ev;
        const double a21 = Fv - 0.5 * Gu, a31 = 0.5 * Gv;
        const double det1 = a11 * (E * G - F * F) - a12 * (a21 * G - F * a31) + a13 * (a21 * F - E * a31);
        const double b12 = 0.5 * Ev, b13 = 0.5 * Gu;
        const double det2 = -b12 * (b12 * G - F * b13) + b13 * (b12 * F - E * b13);
        const double d = mj.det[k];
        K[k] = (det1 - det2) / (d * d);
    }
    return K;
}

Eigen::VectorXd laplacian_nonround_grid(const SphHarmPlan& plan, const MetricJet& mj, const ScalarField& u) {
    const auto& gr = plan.grid();
    const ScalarJet sj = plan.scalar_jet(u);
    const int n = gr.npts();
    Eigen::VectorXd wt(n), wp(n);
    for (int i = 0; i < gr.n_theta; ++i) {
        const double st = gr.sin_theta[i];
        for (int j = 0; j < gr.n_phi; ++j) {
            const int k = gr.idx(i, j);
            const double Vt = mj.itt[k] * sj.dt[k] + mj.itp[k] * sj.dp[k];
            const double Vp = mj.itp[k] * sj.dt[k] + mj.ipp[k] * sj.dp[k];
            wt[k] = mj.jac[k] * Vt;
            wp[k] = mj.jac[k] * Vp * st; // frame component of the round-lowered 1-form
        }
    }
    const TangentField W = plan.analyze_vector(wt, wp);
    const Eigen::VectorXd divW = plan.synth(plan.divergence(W));
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) out[k] = divW[k] / mj.jac[k];
    return out;
}

ScalarField laplacian_nonround(const SphHarmPlan& plan, const MetricJet& mj, const ScalarField& u) {
    return plan.analyze(laplacian_nonround_grid(plan, mj, u));
}

namespace {
// Christoffel symbols of the 2-metric at one point; indices 0 = theta, 1 = phi.
struct Gamma2 {
    double g[2][2][2];
};
inline Gamma2 christoffel(const MetricJet& mj, int k) {
    Gamma2 G;
    const double inv[2][2] = {{mj.itt[k], mj.itp[k]}, {mj.itp[k], mj.ipp[k]}};
    // dg[l][i][j] = partial_l g_ij
    const double dg[2][2][2] = {
        {{mj.g.dt[0][k], mj.g.dt[1][k]}, {mj.g.dt[1][k], mj.g.dt[2][k]}},
        {{mj.g.dp[0][k], mj.g.dp[1][k]}, {mj.g.dp[1][k], mj.g.dp[2][k]}},
    };
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                G.g[a][i][j] = 0.0;
                for (int l = 0; l < 2; ++l)
                    G.g[a][i][j] += 0.5 * inv[a][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
            }
    return G;
}
} // namespace

void div_sym_tensor_grid(const SphHarmPlan& plan, const MetricJet& mj, const SymTensorField& T,
                         Eigen::VectorXd& out_t, Eigen::VectorXd& out_p) {
    const auto& gr = plan.grid();
    const TensorJet tj = plan.sym_tensor_jet(T, false);
    const int n = gr.npts();
    out_t.resize(n);
    out_p.resize(n);
    for (int i = 0; i < gr.n_theta; ++i) {
        const double st = gr.sin_theta[i];
        for (int j = 0; j < gr.n_phi; ++j) {
            const int k = gr.idx(i, j);
            const auto Gm = christoffel(mj, k);
            const double inv[2][2] = {{mj.itt[k], mj.itp[k]}, {mj.itp[k], mj.ipp[k]}};
            const double Tv[2][2] = {{tj.v[0][k], tj.v[1][k]}, {tj.v[1][k], tj.v[2][k]}};
            const double dT[2][2][2] = {
                {{tj.dt[0][k], tj.dt[1][k]}, {tj.dt[1][k], tj.dt[2][k]}},
                {{tj.dp[0][k], tj.dp[1][k]}, {tj.dp[1][k], tj.dp[2][k]}},
            };
            double div[2] = {0.0, 0.0};
            for (int jj = 0; jj < 2; ++jj) {
                double s = 0.0;
                for (int ii = 0; ii < 2; ++ii)
                    for (int kk = 0; kk < 2; ++kk) {
                        double cov = dT[ii][kk][jj];
                        for (int l = 0; l < 2; ++l)
                            cov -= Gm.g[l][ii][kk] * Tv[l][jj] + Gm.g[l][ii][jj] * Tv[kk][l];
                        s += inv[ii][kk] * cov;
                    }
                div[jj] = s;
            }
            out_t[k] = div[0];
            out_p[k] = div[1] / st;
        }
    }
}

TangentField div_sym_tensor(const SphHarmPlan& plan, const MetricJet& mj, const SymTensorField& T) {
    Eigen::VectorXd ot, op;
    div_sym_tensor_grid(plan, mj, T, ot, op);
    return plan.analyze_vector(ot, op);
}

SymTensorField lie_metric(const SphHarmPlan& plan, const MetricJet& mj, const TangentField& X) {
    const auto& gr = plan.grid();
    const VectorJet vj = plan.vector_jet(X);
    const int n = gr.npts();
    Eigen::VectorXd att(n), atp(n), app(n);
    for (int i = 0; i < gr.n_theta; ++i) {
        const double st = gr.sin_theta[i], ct = gr.mu[i];
        const double s2 = st * st, s3 = s2 * st;
        for (int j = 0; j < gr.n_phi; ++j) {
            const int k = gr.idx(i, j);
            // contravariant components w.r.t. the round metric
            const double Xt = vj.vt[k];
            const double Xp = vj.vp[k] / s2;
            const double dXt[2] = {vj.dt_vt[k], vj.dp_vt[k]};
            const double dXp[2] = {vj.dt_vp[k] / s2 - 2.0 * vj.vp[k] * ct / s3, vj.dp_vp[k] / s2};
            const double gv[2][2] = {{mj.g.v[0][k], mj.g.v[1][k]}, {mj.g.v[1][k], mj.g.v[2][k]}};
            const double dg[2][2][2] = {
                {{mj.g.dt[0][k], mj.g.dt[1][k]}, {mj.g.dt[1][k], mj.g.dt[2][k]}},
                {{mj.g.dp[0][k], mj.g.dp[1][k]}, {mj.g.dp[1][k], mj.g.dp[2][k]}},
            };
            const double Xc[2] = {Xt, Xp};
            double L[2][2];
            for (int a = 0; a < 2; ++a)
                for (int b = a; b < 2; ++b) {
                    double s = 0.0;
                    for (int c = 0; c < 2; ++c) {
                        s += Xc[c] * dg[c][a][b];
                        const double dXca = (c == 0) ? ((a == 0) ? dXt[0] : dXt[1]) : ((a == 0) ? dXp[0] : dXp[1]);
                        const double dXcb = (c == 0) ? ((b == 0) ? dXt[0] : dXt[1]) : ((b == 0) ? dXp[0] : dXp[1]);
                        s += gv[c][b] * dXca + gv[a][c] * dXcb;
                    }
                    L[a][b] = s;
                }
            att[k] = L[0][0];
            atp[k] = L[0][1] / st;
            app[k] = L[1][1] / s2;
        }
    }
    return plan.analyze_sym_tensor(att, atp, app);
}

} // namespace bartnik
