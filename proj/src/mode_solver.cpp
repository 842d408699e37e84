#include "bartnik/mode_solver.hpp"

#include "bartnik/legendre.hpp"
#include "bartnik/parallel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bartnik {

namespace {

// Z^l-scaled tail of int_{Zcut}^inf Q_l(t) f(t) dt from the fitted power of f:
// Z^l int_Z^inf q(t) t^{-l-1} f_end (t/Z)^p dt ~ q(Z) f_end / (l - p).
double q_tail_scaled(const RadialGrid& g, const Eigen::VectorXd& f_r, double q_scaled_end, int l) {
    const double fend = f_r[g.size() - 1];
    if (std::abs(fend) < 1e-290) return 0.0;
    const double p = g.fitted_decay_exponent(f_r); // exponent in r; z ~ r/m0, same power
    if (!std::isfinite(p)) return 0.0;
    if (double(l) - p < 0.25) throw std::runtime_error("solve_mode: source tail decays too slowly");
    return q_scaled_end * fend / (double(l) - p);
}

} // namespace

ModeProfile solve_mode(int l, int m, const Background& bg, const RadialGrid& g,
                       const Eigen::VectorXd& b, double c) {
    if (b.size() != g.size()) throw std::invalid_argument("solve_mode: rhs size mismatch");
    const int N = g.size();
    const double m0 = bg.m0, n = bg.n;
    ModeProfile out;
    out.l = l;
    out.m = m;
    out.a.resize(N);
    out.da.resize(N);
    out.dda.resize(N);

    if (l == 0) {
        Eigen::VectorXd src(N);
        for (int i = 0; i < N; ++i) src[i] = g.r()[i] * (g.r()[i] - 2.0 * m0) * b[i];
        const Eigen::VectorXd Jb = g.cumulative(src);
        Eigen::VectorXd outer(N);
        for (int i = 0; i < N; ++i) outer[i] = Jb[i] / (g.r()[i] * (g.r()[i] - 2.0 * m0));
        double I = g.integrate(outer);
        // tail: J_inf estimated from Jb(Rcut) plus the fitted source tail, then
        // int_{Rcut}^inf J_inf/(r(r-2m0)) dr in closed form; the remainder
        // (Jb - J_inf)/(r(r-2m0)) decays at least like the source and is fitted
        {
            double Jinf = Jb[N - 1];
            const double send = src[N - 1];
            if (std::abs(send) > 1e-290) {
                const double ps = g.fitted_decay_exponent(src);
                if (!(ps < -1.25)) throw std::runtime_error("solve_mode: l=0 source tail too slow");
                Jinf += -send * g.r_cut() / (ps + 1.0);
            }
            I += Jinf / (2.0 * m0) * std::log(g.r_cut() / (g.r_cut() - 2.0 * m0));
            Eigen::VectorXd rem(N);
            for (int i = 0; i < N; ++i) rem[i] = outer[i] - Jinf / (g.r()[i] * (g.r()[i] - 2.0 * m0));
            const double rend = rem[N - 1];
            if (std::abs(rend) > 1e-14 * (std::abs(outer[N - 1]) + 1e-290)) {
                const double pr = g.fitted_decay_exponent(rem.cwiseAbs());
                if (std::isfinite(pr) && pr < -1.25) I += -rend * g.r_cut() / (pr + 1.0);
            }
        }
        const double ap0 = 2.0 / (n * (n - 2.0) * m0 * std::log(n / (n - 2.0))) * (-c - I);
        for (int i = 0; i < N; ++i)
            out.da[i] = (Jb[i] + n * (n - 2.0) * m0 * m0 * ap0) / (g.r()[i] * (g.r()[i] - 2.0 * m0));
        const Eigen::VectorXd acc = g.cumulative(out.da);
        for (int i = 0; i < N; ++i) out.a[i] = c + acc[i];
    } else {
        // z-variable quantities; all Legendre factors kept in scaled form.
        // The two variation-of-parameters integrals are built by a ratio
        // recursion with the bounded kernel (min/max)^l so the growing
        // solution never multiplies round-off of the decaying one.
        const double R = n - 1.0;
        Eigen::VectorXd z(N), p(N), dp(N), q(N), dq(N), f(N);
        for (int i = 0; i < N; ++i) {
            z[i] = g.r()[i] / m0 - 1.0;
            const auto s = legendre_scaled(l, std::max(z[i], R));
            p[i] = s.p;
            dp[i] = s.dp;
            q[i] = s.q;
            dq[i] = s.dq;
            f[i] = g.r()[i] * (g.r()[i] - 2.0 * m0) * b[i];
        }
        const double wc = (p[0] * dq[0] - dp[0] * q[0]) * (z[0] * z[0] - 1.0) / (z[0] * z[0]);

        // 10-point Gauss-Legendre rule for the subinterval integrals
        static const double gx[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                     0.8650633666889845, 0.9739065285171717};
        static const double gw[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                     0.1494513491505806, 0.0666713443086881};
        const bool have_f = f.cwiseAbs().maxCoeff() > 0.0;

        // T_i = z_i^l int_{z_i}^{inf} Q f dt ; U_i = z_i^{-l} int_R^{z_i} P f dt
        Eigen::VectorXd T = Eigen::VectorXd::Zero(N), U = Eigen::VectorXd::Zero(N);
        if (have_f) {
            T[N - 1] = q_tail_scaled(g, f, q[N - 1], l);
            for (int i = N - 2; i >= 0; --i) {
                const double za = z[i], zb = z[i + 1];
                double J = 0.0;
                for (int gk = 0; gk < 5; ++gk) {
                    for (double sgn : {-1.0, 1.0}) {
                        const double t = 0.5 * (za + zb) + sgn * 0.5 * (zb - za) * gx[gk];
                        const double rt = m0 * (t + 1.0);
                        const double ft = g.interpolate(f, rt);
                        const auto s = legendre_scaled(l, t);
                        J += 0.5 * (zb - za) * gw[gk] * s.q * ft * std::pow(za / t, double(l)) / t;
                    }
                }
                T[i] = std::pow(za / zb, double(l)) * T[i + 1] + J;
            }
            for (int i = 1; i < N; ++i) {
                const double za = z[i - 1], zb = z[i];
                double K = 0.0;
                for (int gk = 0; gk < 5; ++gk) {
                    for (double sgn : {-1.0, 1.0}) {
                        const double t = 0.5 * (za + zb) + sgn * 0.5 * (zb - za) * gx[gk];
                        const double rt = m0 * (t + 1.0);
                        const double ft = g.interpolate(f, rt);
                        const auto s = legendre_scaled(l, t);
                        K += 0.5 * (zb - za) * gw[gk] * s.p * ft * std::pow(t / zb, double(l));
                    }
                }
                U[i] = std::pow(za / zb, double(l)) * U[i - 1] + K;
            }
        }
        const double Bq = (c - p[0] * T[0] / wc) / q[0];
        for (int i = 0; i < N; ++i) {
            const double zi = z[i];
            const double ratio = std::pow(z[0] / zi, double(l) + 1.0);
            out.a[i] = Bq * q[i] * ratio + (p[i] * T[i] + q[i] * U[i] / zi) / wc;
            out.da[i] = (Bq * dq[i] * ratio / zi + (dp[i] * T[i] / zi + dq[i] * U[i] / (zi * zi)) / wc) / m0;
        }
    }
    for (int i = 0; i < N; ++i) {
        const double r = g.r()[i];
        const double rr = r * (r - 2.0 * m0);
        out.dda[i] = (rr * b[i] + double(l) * (l + 1) * out.a[i] - 2.0 * (r - m0) * out.da[i]) / rr;
    }
    return out;
}

DirichletSolution solve_dirichlet(const Background& bg, const RadialGrid& g, const SphHarmPlan& plan,
                                  const Eigen::MatrixXd& F, const ScalarField& h) {
    const int N = g.size();
    const int nm = n_modes(plan.L_max());
    if (F.rows() != N || F.cols() != nm) throw std::invalid_argument("solve_dirichlet: F shape mismatch");
    DirichletSolution sol;
    sol.u.v.resize(N, nm);
    sol.u.d1.resize(N, nm);
    sol.u.d2.resize(N, nm);
    sol.u.order = 2;
    double mismatch = 0.0;
    std::vector<double> mis(nm, 0.0);
    parallel_for(nm, [&](int q) {
        const int l = mode_degree(q);
        const auto mp = solve_mode(l, 0, bg, g, F.col(q), h.c[q]);
        sol.u.v.col(q) = mp.a;
        sol.u.d1.col(q) = mp.da;
        sol.u.d2.col(q) = mp.dda;
        mis[q] = std::abs(mp.a[0] - h.c[q]);
    });
    for (double v : mis) mismatch = std::max(mismatch, v);
    sol.boundary_mismatch = mismatch;
    return sol;
}

Eigen::MatrixXd dirichlet_residual(const Background& bg, const RadialGrid& g, const FieldStack& u,
                                   const Eigen::MatrixXd& F) {
    Eigen::MatrixXd res(u.v.rows(), u.v.cols());
    for (int q = 0; q < u.v.cols(); ++q) {
        const int l = mode_degree(q);
        for (int i = 0; i < u.v.rows(); ++i) {
            const auto bpt = eval_background(bg, g.r()[i]);
            res(i, q) = u.d2(i, q) + bpt.trK * u.d1(i, q) -
                        double(l) * (l + 1) * u.v(i, q) / bpt.angular_factor - F(i, q);
        }
    }
    return res;
}

double EstimateReport::plateau_H(int lo1, int hi1, int lo2, int hi2) const {
    double a = 0.0, b = 0.0;
    for (int l = lo1; l <= hi1 && l < max_ratio_H.size(); ++l) a = std::max(a, max_ratio_H[l]);
    for (int l = lo2; l <= hi2 && l < max_ratio_H.size(); ++l) b = std::max(b, max_ratio_H[l]);
    return (a > 0.0) ? b / a : 0.0;
}

EstimateReport verify_mode_estimates(const Background& bg, const RadialGrid& g, int l_max, int samples,
                                     double delta, std::uint64_t seed) {
    EstimateReport rep;
    rep.max_ratio_H = Eigen::VectorXd::Zero(l_max + 1);
    rep.max_ratio_C = Eigen::VectorXd::Zero(l_max + 1);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.3, 3.0);
    for (int l = 1; l <= l_max; ++l) {
        const double lam1 = 1.0 + double(l) * (l + 1);
        for (int s = 0; s < samples; ++s) {
            Eigen::VectorXd b(g.size());
            const double kappa = ud(rng) / bg.m0, amp = nd(rng);
            for (int i = 0; i < g.size(); ++i)
                b[i] = amp * std::exp(-kappa * (g.r()[i] - bg.r0())) * std::pow(g.r()[i] / bg.r0(), delta - 2.0);
            const double c = nd(rng);
            const auto mp = solve_mode(l, 0, bg, g, b, c);
            ProfileStack pb{b, b, b, 0};
            const double H_lhs = weighted_H_profile(g, {mp.dda, mp.dda, mp.dda, 0}, 0, delta - 2.0).value +
                                 lam1 * weighted_H_profile(g, {mp.da, mp.da, mp.da, 0}, 0, delta - 1.0).value +
                                 lam1 * lam1 * weighted_H_profile(g, {mp.a, mp.a, mp.a, 0}, 0, delta).value;
            const double H_rhs = weighted_H_profile(g, pb, 0, delta - 2.0).value + std::pow(lam1, 1.5) * c * c;
            const double C_lhs = weighted_C_profile(g, {mp.dda, mp.dda, mp.dda, 0}, 0, delta - 2.0).value +
                                 lam1 * weighted_C_profile(g, {mp.da, mp.da, mp.da, 0}, 0, delta - 1.0).value +
                                 lam1 * lam1 * weighted_C_profile(g, {mp.a, mp.a, mp.a, 0}, 0, delta).value;
            const double C_rhs = weighted_C_profile(g, pb, 0, delta - 2.0).value + lam1 * lam1 * c * c;
            rep.max_ratio_H[l] = std::max(rep.max_ratio_H[l], H_lhs / H_rhs);
            rep.max_ratio_C[l] = std::max(rep.max_ratio_C[l], C_lhs / C_rhs);
        }
    }
    return rep;
}

} // namespace bartnik
