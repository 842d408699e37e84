#include "bartnik/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace bartnik {

namespace {
constexpr double kSqrt4Pi = 3.5449077018110318; // sqrt(4 pi)

ScalarField col_to_field(const Eigen::MatrixXd& m, int i) {
    ScalarField f;
    f.c = m.row(i).transpose();
    return f;
}
} // namespace

UStack UStack::zero(const RadialGrid& g, int L) {
    UStack u;
    u.v = Eigen::MatrixXd::Zero(g.size(), n_modes(L));
    u.d1 = u.v;
    u.d2 = u.v;
    return u;
}

UStack UStack::background(const Background& bg, const RadialGrid& g, int L) {
    UStack u = zero(g, L);
    for (int i = 0; i < g.size(); ++i) {
        const auto p = eval_background(bg, g.r()[i]);
        u.v(i, 0) = p.u * kSqrt4Pi;
        u.d1(i, 0) = p.du_dr * kSqrt4Pi;
        u.d2(i, 0) = p.d2u_dr2 * kSqrt4Pi;
    }
    return u;
}

ScalarField UStack::node(int i) const { return col_to_field(v, i); }
ScalarField UStack::node_d1(int i) const { return col_to_field(d1, i); }
ScalarField UStack::node_d2(int i) const { return col_to_field(d2, i); }

TensorStack TensorStack::zero(const RadialGrid& g, int L) {
    TensorStack t;
    const int nm = n_modes(L);
    t.tau = Eigen::MatrixXd::Zero(g.size(), nm);
    t.te = t.tau;
    t.tb = t.tau;
    t.dtau = t.tau;
    t.dte = t.tau;
    t.dtb = t.tau;
    t.ddtau = t.tau;
    t.ddte = t.tau;
    t.ddtb = t.tau;
    return t;
}

SymTensorField TensorStack::node(int i) const {
    SymTensorField T;
    T.tau = col_to_field(tau, i);
    T.tt.e = col_to_field(te, i);
    T.tt.b = col_to_field(tb, i);
    return T;
}
SymTensorField TensorStack::node_d1(int i) const {
    SymTensorField T;
    T.tau = col_to_field(dtau, i);
    T.tt.e = col_to_field(dte, i);
    T.tt.b = col_to_field(dtb, i);
    return T;
}
SymTensorField TensorStack::node_d2(int i) const {
    SymTensorField T;
    T.tau = col_to_field(ddtau, i);
    T.tt.e = col_to_field(ddte, i);
    T.tt.b = col_to_field(ddtb, i);
    return T;
}

void TensorStack::set_node(int i, const SymTensorField& T, const SymTensorField& dT, const SymTensorField& ddT) {
    tau.row(i) = T.tau.c.transpose();
    te.row(i) = T.tt.e.c.transpose();
    tb.row(i) = T.tt.b.c.transpose();
    dtau.row(i) = dT.tau.c.transpose();
    dte.row(i) = dT.tt.e.c.transpose();
    dtb.row(i) = dT.tt.b.c.transpose();
    ddtau.row(i) = ddT.tau.c.transpose();
    ddte.row(i) = ddT.tt.e.c.transpose();
    ddtb.row(i) = ddT.tt.b.c.transpose();
}

void TensorStack::axpy(double a, const TensorStack& o) {
    tau += a * o.tau;
    te += a * o.te;
    tb += a * o.tb;
    dtau += a * o.dtau;
    dte += a * o.dte;
    dtb += a * o.dtb;
    ddtau += a * o.ddtau;
    ddte += a * o.ddte;
    ddtb += a * o.ddtb;
}

FoliatedMetric FoliatedMetric::schwarzschild(const Background& bg, const RadialGrid& grid,
                                             const SphHarmPlan& plan) {
    FoliatedMetric fm;
    fm.bg = &bg;
    fm.grid = &grid;
    fm.plan = &plan;
    fm.g = TensorStack::zero(grid, plan.L_max());
    for (int i = 0; i < grid.size(); ++i) {
        const double r = grid.r()[i];
        fm.g.tau(i, 0) = r * (r - 2.0 * bg.m0) * kSqrt4Pi;
        fm.g.dtau(i, 0) = (2.0 * r - 2.0 * bg.m0) * kSqrt4Pi;
        fm.g.ddtau(i, 0) = 2.0 * kSqrt4Pi;
    }
    return fm;
}

SymTensorField FoliatedMetric::gamma_inf() const {
    const int i = grid->size() - 1;
    SymTensorField T = g.node(i);
    const double r2 = grid->r()[i] * grid->r()[i];
    T.tau.c /= r2;
    T.tt.e.c /= r2;
    T.tt.b.c /= r2;
    return T;
}

BartnikData schwarzschild_bartnik(const Background& bg, int L) {
    BartnikData d;
    d.gamma = SymTensorField(L);
    d.trK = ScalarField(L);
    d.gamma.tau.c[0] = bg.r0() * bg.r0() * kSqrt4Pi;
    d.trK.c[0] = schwarzschild_trK_data(bg) * kSqrt4Pi;
    return d;
}

NodeKinematics node_kinematics(const SphHarmPlan& plan, const TensorStack& g, int i, bool with_d2) {
    NodeKinematics k;
    plan.synth_sym_tensor(g.node(i), k.gfr[0], k.gfr[1], k.gfr[2]);
    plan.synth_sym_tensor(g.node_d1(i), k.dgfr[0], k.dgfr[1], k.dgfr[2]);
    if (with_d2) plan.synth_sym_tensor(g.node_d2(i), k.ddgfr[0], k.ddgfr[1], k.ddgfr[2]);
    const int n = int(k.gfr[0].size());
    k.i00.resize(n);
    k.i01.resize(n);
    k.i11.resize(n);
    k.trK.resize(n);
    k.khat2.resize(n);
    for (auto& v : k.khat) v.resize(n);
    if (with_d2) {
        k.dtrK.resize(n);
        for (auto& v : k.dkhat) v.resize(n);
    }
    for (int p = 0; p < n; ++p) {
        const double a = k.gfr[0][p], b = k.gfr[1][p], c = k.gfr[2][p];
        const double det = a * c - b * b;
        if (!(det > 0.0)) throw std::runtime_error("node_kinematics: metric not positive definite");
        const double i00 = c / det, i01 = -b / det, i11 = a / det;
        k.i00[p] = i00;
        k.i01[p] = i01;
        k.i11[p] = i11;
        const double da = k.dgfr[0][p], db = k.dgfr[1][p], dc = k.dgfr[2][p];
        const double trk = 0.5 * (i00 * da + 2.0 * i01 * db + i11 * dc);
        k.trK[p] = trk;
        const double kh0 = 0.5 * da - 0.5 * trk * a;
        const double kh1 = 0.5 * db - 0.5 * trk * b;
        const double kh2 = 0.5 * dc - 0.5 * trk * c;
        k.khat[0][p] = kh0;
        k.khat[1][p] = kh1;
        k.khat[2][p] = kh2;
        const double m00 = i00 * kh0 + i01 * kh1;
        const double m01 = i00 * kh1 + i01 * kh2;
        const double m10 = i01 * kh0 + i11 * kh1;
        const double m11 = i01 * kh1 + i11 * kh2;
        k.khat2[p] = m00 * m00 + m01 * m10 + m10 * m01 + m11 * m11;
        if (with_d2) {
            const double dda = k.ddgfr[0][p], ddb = k.ddgfr[1][p], ddc = k.ddgfr[2][p];
            const double n00 = i00 * da + i01 * db, n01 = i00 * db + i01 * dc;
            const double n10 = i01 * da + i11 * db, n11 = i01 * db + i11 * dc;
            const double tr_sq = n00 * n00 + n01 * n10 + n10 * n01 + n11 * n11;
            const double tr_dd = i00 * dda + 2.0 * i01 * ddb + i11 * ddc;
            const double dtrk = 0.5 * (tr_dd - tr_sq);
            k.dtrK[p] = dtrk;
            k.dkhat[0][p] = 0.5 * dda - 0.5 * dtrk * a - 0.5 * trk * da;
            k.dkhat[1][p] = 0.5 * ddb - 0.5 * dtrk * b - 0.5 * trk * db;
            k.dkhat[2][p] = 0.5 * ddc - 0.5 * dtrk * c - 0.5 * trk * dc;
        }
    }
    return k;
}

SecondFundamentalForm second_fundamental_form(const FoliatedMetric& fm) {
    SecondFundamentalForm out;
    const int N = fm.grid->size();
    out.trK.resize(N, n_modes(fm.plan->L_max()));
    out.khat = TensorStack::zero(*fm.grid, fm.plan->L_max());
    for (int i = 0; i < N; ++i) {
        const auto k = node_kinematics(*fm.plan, fm.g, i, false);
        out.trK.row(i) = fm.plan->analyze(k.trK).c.transpose();
        const SymTensorField kt = fm.plan->analyze_sym_tensor(k.khat[0], k.khat[1], k.khat[2]);
        out.khat.tau.row(i) = kt.tau.c.transpose();
        out.khat.te.row(i) = kt.tt.e.c.transpose();
        out.khat.tb.row(i) = kt.tt.b.c.transpose();
    }
    return out;
}

Eigen::MatrixXd laplacian(const FoliatedMetric& fm, const UStack& u) {
    const int N = fm.grid->size();
    Eigen::MatrixXd out(N, u.v.cols());
    for (int i = 0; i < N; ++i) {
        const auto k = node_kinematics(*fm.plan, fm.g, i, false);
        const auto mj = metric_jet(*fm.plan, fm.g.node(i), false);
        const Eigen::VectorXd lap_ang = laplacian_nonround_grid(*fm.plan, mj, u.node(i));
        const Eigen::VectorXd d1 = fm.plan->synth(u.node_d1(i));
        const Eigen::VectorXd d2 = fm.plan->synth(u.node_d2(i));
        Eigen::VectorXd total(d1.size());
        for (int p = 0; p < d1.size(); ++p) total[p] = d2[p] + k.trK[p] * d1[p] + lap_ang[p];
        out.row(i) = fm.plan->analyze(total).c.transpose();
    }
    return out;
}

TransportResiduals transport_step_residuals(const FoliatedMetric& fm, const UStack& u) {
    const auto& plan = *fm.plan;
    const auto& gr = plan.grid();
    const int N = fm.grid->size();
    TransportResiduals out;
    out.r2.resize(N, u.v.cols());
    out.r3 = TensorStack::zero(*fm.grid, plan.L_max());
    for (int i = 0; i < N; ++i) {
        const auto k = node_kinematics(plan, fm.g, i, true);
        const ScalarJet uj = plan.scalar_jet(u.node(i));
        const Eigen::VectorXd d1 = plan.synth(u.node_d1(i));
        const int n = gr.npts();
        Eigen::VectorXd r2(n), t0(n), t1(n), t2(n);
        for (int ii = 0; ii < gr.n_theta; ++ii) {
            const double st = gr.sin_theta[ii];
            for (int jj = 0; jj < gr.n_phi; ++jj) {
                const int p = gr.idx(ii, jj);
                const double ut = uj.dt[p], up = uj.dp[p] / st;
                const double du2_ang = k.i00[p] * ut * ut + 2.0 * k.i01[p] * ut * up + k.i11[p] * up * up;
                const double grad2 = d1[p] * d1[p] + du2_ang;
                r2[p] = k.dtrK[p] + 0.5 * k.trK[p] * k.trK[p] + k.khat2[p] + 2.0 * d1[p] * d1[p];
                const double s = d1[p] * d1[p] - grad2;
                t0[p] = k.dkhat[0][p] + 2.0 * ut * ut + k.gfr[0][p] * s;
                t1[p] = k.dkhat[1][p] + 2.0 * ut * up + k.gfr[1][p] * s;
                t2[p] = k.dkhat[2][p] + 2.0 * up * up + k.gfr[2][p] * s;
            }
        }
        out.r2.row(i) = plan.analyze(r2).c.transpose();
        const SymTensorField rt = plan.analyze_sym_tensor(t0, t1, t2);
        out.r3.tau.row(i) = rt.tau.c.transpose();
        out.r3.te.row(i) = rt.tt.e.c.transpose();
        out.r3.tb.row(i) = rt.tt.b.c.transpose();
    }
    return out;
}

ConstraintResidual boundary_constraints(const FoliatedMetric& fm, const UStack& u, const BartnikData& data) {
    const auto& plan = *fm.plan;
    const auto& gr = plan.grid();
    const int n = gr.npts();
    ConstraintResidual out;
    const auto k = node_kinematics(plan, fm.g, 0, false);
    const ScalarJet uj = plan.scalar_jet(u.node(0));
    const Eigen::VectorXd d1 = plan.synth(u.node_d1(0));

    Eigen::VectorXd b0, b1, b2;
    plan.synth_sym_tensor(data.gamma, b0, b1, b2);
    Eigen::VectorXd c0(n), c1(n), c2(n);
    for (int p = 0; p < n; ++p) {
        const double e2u = std::exp(2.0 * uj.v[p]);
        c0[p] = e2u * b0[p];
        c1[p] = e2u * b1[p];
        c2[p] = e2u * b2[p];
    }
    const SymTensorField bdry_metric = plan.analyze_sym_tensor(c0, c1, c2);
    const Eigen::VectorXd Rbdry = 2.0 * gauss_curvature(plan, metric_jet(plan, bdry_metric, true));

    const SymTensorField khat_field = plan.analyze_sym_tensor(k.khat[0], k.khat[1], k.khat[2]);
    Eigen::VectorXd divk_t, divk_p;
    div_sym_tensor_grid(plan, metric_jet(plan, fm.g.node(0), false), khat_field, divk_t, divk_p);

    const ScalarJet tj = plan.scalar_jet(plan.analyze(k.trK));
    const Eigen::VectorXd trKB = plan.synth(data.trK);

    Eigen::VectorXd gauss(n), cod_t(n), cod_p(n), mtrk(n);
    for (int ii = 0; ii < gr.n_theta; ++ii) {
        const double st = gr.sin_theta[ii];
        for (int jj = 0; jj < gr.n_phi; ++jj) {
            const int p = gr.idx(ii, jj);
            const double ut = uj.dt[p], up = uj.dp[p] / st;
            const double du2_ang = k.i00[p] * ut * ut + 2.0 * k.i01[p] * ut * up + k.i11[p] * up * up;
            gauss[p] = 2.0 * du2_ang - 2.0 * d1[p] * d1[p] - k.khat2[p] - Rbdry[p] +
                       0.5 * k.trK[p] * k.trK[p];
            cod_t[p] = 2.0 * d1[p] * ut - divk_t[p] + 0.5 * tj.dt[p];
            cod_p[p] = 2.0 * d1[p] * up - divk_p[p] + 0.5 * tj.dp[p] / st;
            mtrk[p] = k.trK[p] - std::exp(-uj.v[p]) * trKB[p] - 2.0 * d1[p];
        }
    }
    out.gauss = plan.analyze(gauss);
    out.codazzi = plan.analyze_vector(cod_t, cod_p);
    out.ck = plan.ck_projection(out.codazzi);
    out.match_trK = plan.analyze(mtrk);

    Eigen::VectorXd m0(n), m1(n), m2(n);
    for (int p = 0; p < n; ++p) {
        const double e2u = std::exp(-2.0 * uj.v[p]);
        m0[p] = e2u * k.gfr[0][p] - b0[p];
        m1[p] = e2u * k.gfr[1][p] - b1[p];
        m2[p] = e2u * k.gfr[2][p] - b2[p];
    }
    out.match_g = plan.analyze_sym_tensor(m0, m1, m2);
    return out;
}

AHTransport ah_transport(const FoliatedMetric& fm, const TangentField& omega) {
    const auto& plan = *fm.plan;
    const auto& g = *fm.grid;
    const int N = g.size();
    AHTransport out;
    Eigen::VectorXd sigma(N), c(N);
    for (int i = 0; i < N; ++i) {
        const auto k = node_kinematics(plan, fm.g, i, false);
        sigma[i] = plan.analyze(k.trK).c[0] / kSqrt4Pi;
        c[i] = fm.g.tau(i, 0) / kSqrt4Pi;
    }
    Eigen::VectorXd w(N);
    for (int i = 0; i < N; ++i) w[i] = sigma[i] - 2.0 / g.r()[i];
    const Eigen::VectorXd cum = g.cumulative(w);
    out.L.resize(N);
    for (int i = 0; i < N; ++i) out.L[i] = std::exp(cum[i] + 2.0 * std::log(g.r()[i] / g.r0()));

    const int nm = int(omega.e.c.size());
    out.A_e.resize(N, nm);
    out.A_b.resize(N, nm);
    out.H.resize(N, nm);
    const ScalarField divw = plan.divergence(omega);
    Eigen::MatrixXd integrand(N, nm);
    for (int i = 0; i < N; ++i) {
        out.A_e.row(i) = omega.e.c.transpose() / out.L[i];
        out.A_b.row(i) = omega.b.c.transpose() / out.L[i];
        integrand.row(i) = 2.0 * divw.c.transpose() / c[i];
    }
    for (int q = 0; q < nm; ++q) {
        const Eigen::VectorXd Hq = g.cumulative(integrand.col(q));
        for (int i = 0; i < N; ++i) out.H(i, q) = Hq[i] / out.L[i];
    }
    Eigen::VectorXd anorm(N), hnorm(N);
    const double w2 = std::sqrt(plan.dot(omega, omega));
    for (int i = 0; i < N; ++i) {
        anorm[i] = w2 / (std::sqrt(c[i]) * out.L[i]);
        hnorm[i] = out.H.row(i).norm();
    }
    out.fit_exponent_A = g.fitted_decay_exponent(anorm);
    out.fit_exponent_H = g.fitted_decay_exponent(hnorm);
    return out;
}

InteriorCheck interior_gauss_codazzi(const FoliatedMetric& fm, const UStack& u,
                                     const std::vector<double>& radii) {
    const auto& plan = *fm.plan;
    const auto& gr = plan.grid();
    InteriorCheck out;
    for (double rq : radii) {
        int best = 0;
        for (int i = 0; i < fm.grid->size(); ++i)
            if (std::abs(fm.grid->r()[i] - rq) < std::abs(fm.grid->r()[best] - rq)) best = i;
        const int i = best;
        const auto k = node_kinematics(plan, fm.g, i, false);
        const ScalarJet uj = plan.scalar_jet(u.node(i));
        const Eigen::VectorXd d1 = plan.synth(u.node_d1(i));
        const Eigen::VectorXd Rs = 2.0 * gauss_curvature(plan, metric_jet(plan, fm.g.node(i), true));
        const SymTensorField khat_field = plan.analyze_sym_tensor(k.khat[0], k.khat[1], k.khat[2]);
        Eigen::VectorXd divk_t, divk_p;
        div_sym_tensor_grid(plan, metric_jet(plan, fm.g.node(i), false), khat_field, divk_t, divk_p);
        const ScalarJet tj = plan.scalar_jet(plan.analyze(k.trK));
        double gmax = 0.0, cmax = 0.0;
        for (int ii = 0; ii < gr.n_theta; ++ii) {
            const double st = gr.sin_theta[ii];
            for (int jj = 0; jj < gr.n_phi; ++jj) {
                const int p = gr.idx(ii, jj);
                const double ut = uj.dt[p], up = uj.dp[p] / st;
                const double du2_ang = k.i00[p] * ut * ut + 2.0 * k.i01[p] * ut * up + k.i11[p] * up * up;
                const double gauss = 2.0 * du2_ang - 2.0 * d1[p] * d1[p] - k.khat2[p] - Rs[p] +
                                     0.5 * k.trK[p] * k.trK[p];
                const double ct = 2.0 * d1[p] * ut - divk_t[p] + 0.5 * tj.dt[p];
                const double cp = 2.0 * d1[p] * up - divk_p[p] + 0.5 * tj.dp[p] / st;
                gmax = std::max(gmax, std::abs(gauss));
                cmax = std::max(cmax, std::hypot(ct, cp));
            }
        }
        out.radii.push_back(fm.grid->r()[i]);
        out.gauss_resid.push_back(gmax);
        out.codazzi_resid.push_back(cmax);
    }
    return out;
}

} // namespace bartnik
