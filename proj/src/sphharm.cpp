#include "bartnik/sphharm.hpp"

#include <cmath>
#include <stdexcept>

namespace bartnik {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// Derivative ladder from the associated Legendre ODE:
// P'' = -cot P' + (m^2/sin^2 - lam) P, and its theta-derivatives.
struct Ladder {
    double P2, P3, P4;
};
inline Ladder ladder(double m2, double lam, double ct, double st, double P, double P1) {
    Ladder L;
    const double cot = ct / st;
    const double is2 = 1.0 / (st * st);
    L.P2 = -cot * P1 + (m2 * is2 - lam) * P;
    const double A = (m2 + 1.0) * is2 - lam;
    const double B = -2.0 * m2 * ct / (st * st * st);
    L.P3 = -cot * L.P2 + A * P1 + B * P;
    const double Ap = -2.0 * (m2 + 1.0) * ct / (st * st * st);
    const double Bp = 2.0 * m2 * (1.0 + 2.0 * ct * ct) / (st * st * st * st);
    L.P4 = -cot * L.P3 + (A + is2) * L.P2 + (Ap + B) * P1 + Bp * P;
    return L;
}

} // namespace

void SphHarmPlan::legendre_row(int m, double theta, Eigen::VectorXd& P, Eigen::VectorXd& dP) const {
    const int L = grid_.L_max;
    const double ct = std::cos(theta), st = std::sin(theta);
    P.resize(L + 1 - m);
    dP.resize(L + 1 - m);
    // P~_mm upward seed
    double pmm = 1.0 / std::sqrt(2.0);
    for (int k = 1; k <= m; ++k) pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;
    P[0] = pmm;
    dP[0] = (m == 0) ? 0.0 : m * (ct / st) * pmm;
    if (m == L) return;
    const double p1 = std::sqrt(2.0 * m + 3.0) * ct * pmm;
    P[1] = p1;
    for (int l = m + 2; l <= L; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        const double b = std::sqrt((2.0 * l + 1.0) * (double(l - 1) * (l - 1) - double(m) * m) /
                                   ((2.0 * l - 3.0) * (double(l) * l - double(m) * m)));
        P[l - m] = a * ct * P[l - 1 - m] - b * P[l - 2 - m];
    }
    for (int l = m + 1; l <= L; ++l) {
        const double f = std::sqrt((double(l) * l - double(m) * m) * (2.0 * l + 1.0) / (2.0 * l - 1.0));
        dP[l - m] = (l * ct * P[l - m] - f * P[l - 1 - m]) / st;
    }
}

SphHarmPlan::SphHarmPlan(int L_max, int n_theta, int n_phi) {
    if (L_max < 2) throw std::invalid_argument("SphHarmPlan: L_max >= 2 required");
    grid_.L_max = L_max;
    grid_.n_theta = (n_theta > 0) ? n_theta : (3 * L_max) / 2 + 4;
    grid_.n_phi = (n_phi > 0) ? n_phi : 3 * L_max + 5;
    if (grid_.n_theta < L_max + 1 || grid_.n_phi < 2 * L_max + 1)
        throw std::invalid_argument("SphHarmPlan: grid too small for L_max");

    gauss_legendre(grid_.n_theta, grid_.mu, grid_.w_theta);
    grid_.theta.resize(grid_.n_theta);
    grid_.sin_theta.resize(grid_.n_theta);
    for (int i = 0; i < grid_.n_theta; ++i) {
        grid_.theta[i] = std::acos(grid_.mu[i]);
        grid_.sin_theta[i] = std::sin(grid_.theta[i]);
    }
    grid_.phi.resize(grid_.n_phi);
    for (int j = 0; j < grid_.n_phi; ++j) grid_.phi[j] = 2.0 * M_PI * j / grid_.n_phi;

    const int L = L_max;
    ptab_.resize(L + 1);
    dptab_.resize(L + 1);
    for (int m = 0; m <= L; ++m) {
        ptab_[m].resize(L + 1 - m, grid_.n_theta);
        dptab_[m].resize(L + 1 - m, grid_.n_theta);
        Eigen::VectorXd P, dP;
        for (int i = 0; i < grid_.n_theta; ++i) {
            legendre_row(m, grid_.theta[i], P, dP);
            ptab_[m].col(i) = P;
            dptab_[m].col(i) = dP;
        }
    }
    cos_tab_.resize(L + 1, grid_.n_phi);
    sin_tab_.resize(L + 1, grid_.n_phi);
    for (int m = 0; m <= L; ++m) {
        const double nu = (m == 0) ? 1.0 / std::sqrt(2.0 * M_PI) : 1.0 / std::sqrt(M_PI);
        for (int j = 0; j < grid_.n_phi; ++j) {
            cos_tab_(m, j) = nu * std::cos(m * grid_.phi[j]);
            sin_tab_(m, j) = nu * std::sin(m * grid_.phi[j]);
        }
    }

    // measure the traceless-divergence multipliers from the forward operator:
    // mu_l = |H[Y_l0]|^2 by quadrature, lambda_l = -mu_l / (l(l+1)).
    mu_ = Eigen::VectorXd::Zero(L + 1);
    lambda_ = Eigen::VectorXd::Zero(L + 1);
    for (int l = 2; l <= L; ++l) {
        const double lam = double(l) * (l + 1);
        double acc = 0.0;
        for (int i = 0; i < grid_.n_theta; ++i) {
            const double st = grid_.sin_theta[i], ct = grid_.mu[i];
            const double P = ptab_[0](l, i), P1 = dptab_[0](l, i);
            const auto Ld = ladder(0.0, lam, ct, st, P, P1);
            const double T1 = Ld.P2 + 0.5 * lam * P;
            const double T2 = (P1 - (ct / st) * P) / st; // zero for m=0 modes
            acc += grid_.w_theta[i] * 2.0 * (T1 * T1 + 0.0 * T2 * T2);
        }
        mu_[l] = acc; // azimuthal factor: int (cos_tab_0)^2 dphi = 1
        lambda_[l] = -mu_[l] / lam;
    }
    ck_ = std::make_unique<CKBasis>(L);
}

// ---------------------------------------------------------------- scalars

Eigen::VectorXd SphHarmPlan::synth(const ScalarField& f) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(L + 1, nt), B = Eigen::MatrixXd::Zero(L + 1, nt);
    for (int m = 0; m <= L; ++m)
        for (int l = m; l <= L; ++l) {
            const double cc = f.c[mode_index(l, m)];
            if (cc != 0.0) A.row(m) += cc * ptab_[m].row(l - m);
            if (m > 0) {
                const double cs = f.c[mode_index(l, -m)];
                if (cs != 0.0) B.row(m) += cs * ptab_[m].row(l - m);
            }
        }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(nt * np);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            double s = 0.0;
            for (int m = 0; m <= L; ++m) s += A(m, i) * cos_tab_(m, j) + B(m, i) * sin_tab_(m, j);
            out[grid_.idx(i, j)] = s;
        }
    return out;
}

ScalarField SphHarmPlan::analyze(const Eigen::VectorXd& values) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    if (values.size() != nt * np) throw std::invalid_argument("analyze: grid size mismatch");
    const double dphi = 2.0 * M_PI / np;
    Eigen::MatrixXd Fc = Eigen::MatrixXd::Zero(L + 1, nt), Fs = Eigen::MatrixXd::Zero(L + 1, nt);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            const double v = values[grid_.idx(i, j)] * dphi;
            for (int m = 0; m <= L; ++m) {
                Fc(m, i) += v * cos_tab_(m, j);
                Fs(m, i) += v * sin_tab_(m, j);
            }
        }
    ScalarField f(L);
    for (int m = 0; m <= L; ++m)
        for (int l = m; l <= L; ++l) {
            double sc = 0.0, ss = 0.0;
            for (int i = 0; i < nt; ++i) {
                const double p = ptab_[m](l - m, i) * grid_.w_theta[i];
                sc += p * Fc(m, i);
                ss += p * Fs(m, i);
            }
            f.c[mode_index(l, m)] = sc;
            if (m > 0) f.c[mode_index(l, -m)] = ss;
        }
    return f;
}

// ------------------------------------------------- shared pair machinery
//
// Electric/magnetic pairs (vectors and traceless tensors) share the frame
// structure u1 = E Ta trig + B Tb dtrig, u2 = E Tb dtrig - B Ta trig,
// with (Ta, Tb) = (P~', P~/sin) for 1-forms and (P~'' + lam P~/2,
// (P~' - cot P~)/sin) for tensors.

void SphHarmPlan::synth_vector(const TangentField& X, Eigen::VectorXd& ft, Eigen::VectorXd& fp) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    Eigen::MatrixXd C1 = Eigen::MatrixXd::Zero(L + 1, nt), S1 = Eigen::MatrixXd::Zero(L + 1, nt);
    Eigen::MatrixXd C2 = Eigen::MatrixXd::Zero(L + 1, nt), S2 = Eigen::MatrixXd::Zero(L + 1, nt);
    for (int m = 0; m <= L; ++m)
        for (int l = std::max(1, m); l <= L; ++l) {
            const double ec = X.e.c[mode_index(l, m)];
            const double bc = X.b.c[mode_index(l, m)];
            const double es = (m > 0) ? X.e.c[mode_index(l, -m)] : 0.0;
            const double bs = (m > 0) ? X.b.c[mode_index(l, -m)] : 0.0;
            for (int i = 0; i < nt; ++i) {
                const double Ta = dptab_[m](l - m, i);
                const double Tb = ptab_[m](l - m, i) / grid_.sin_theta[i];
                C1(m, i) += ec * Ta + m * bs * Tb;
                S1(m, i) += es * Ta - m * bc * Tb;
                C2(m, i) += m * es * Tb - bc * Ta;
                S2(m, i) += -m * ec * Tb - bs * Ta;
            }
        }
    ft = Eigen::VectorXd::Zero(nt * np);
    fp = Eigen::VectorXd::Zero(nt * np);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            double s1 = 0.0, s2 = 0.0;
            for (int m = 0; m <= L; ++m) {
                s1 += C1(m, i) * cos_tab_(m, j) + S1(m, i) * sin_tab_(m, j);
                s2 += C2(m, i) * cos_tab_(m, j) + S2(m, i) * sin_tab_(m, j);
            }
            ft[grid_.idx(i, j)] = s1;
            fp[grid_.idx(i, j)] = s2;
        }
}

TangentField SphHarmPlan::analyze_vector(const Eigen::VectorXd& ft, const Eigen::VectorXd& fp) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    const double dphi = 2.0 * M_PI / np;
    Eigen::MatrixXd Fc1 = Eigen::MatrixXd::Zero(L + 1, nt), Fs1 = Eigen::MatrixXd::Zero(L + 1, nt);
    Eigen::MatrixXd Fc2 = Eigen::MatrixXd::Zero(L + 1, nt), Fs2 = Eigen::MatrixXd::Zero(L + 1, nt);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            const double v1 = ft[grid_.idx(i, j)] * dphi;
            const double v2 = fp[grid_.idx(i, j)] * dphi;
            for (int m = 0; m <= L; ++m) {
                Fc1(m, i) += v1 * cos_tab_(m, j);
                Fs1(m, i) += v1 * sin_tab_(m, j);
                Fc2(m, i) += v2 * cos_tab_(m, j);
                Fs2(m, i) += v2 * sin_tab_(m, j);
            }
        }
    TangentField X(L);
    for (int m = 0; m <= L; ++m)
        for (int l = std::max(1, m); l <= L; ++l) {
            const double lam = double(l) * (l + 1);
            double ec = 0.0, es = 0.0, bc = 0.0, bs = 0.0;
            for (int i = 0; i < nt; ++i) {
                const double w = grid_.w_theta[i];
                const double Ta = dptab_[m](l - m, i);
                const double Tb = ptab_[m](l - m, i) / grid_.sin_theta[i];
                ec += w * (Ta * Fc1(m, i) - m * Tb * Fs2(m, i));
                es += w * (Ta * Fs1(m, i) + m * Tb * Fc2(m, i));
                bc += w * (-m * Tb * Fs1(m, i) - Ta * Fc2(m, i));
                bs += w * (m * Tb * Fc1(m, i) - Ta * Fs2(m, i));
            }
            X.e.c[mode_index(l, m)] = ec / lam;
            X.b.c[mode_index(l, m)] = bc / lam;
            if (m > 0) {
                X.e.c[mode_index(l, -m)] = es / lam;
                X.b.c[mode_index(l, -m)] = bs / lam;
            }
        }
    return X;
}

void SphHarmPlan::synth_sym_tensor(const SymTensorField& T, Eigen::VectorXd& att, Eigen::VectorXd& atp,
                                   Eigen::VectorXd& app) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    Eigen::MatrixXd C1 = Eigen::MatrixXd::Zero(L + 1, nt), S1 = Eigen::MatrixXd::Zero(L + 1, nt);
    Eigen::MatrixXd C2 = Eigen::MatrixXd::Zero(L + 1, nt), S2 = Eigen::MatrixXd::Zero(L + 1, nt);
    for (int m = 0; m <= L; ++m)
        for (int l = std::max(2, m); l <= L; ++l) {
            const double lam = double(l) * (l + 1);
            const double ec = T.tt.e.c[mode_index(l, m)];
            const double bc = T.tt.b.c[mode_index(l, m)];
            const double es = (m > 0) ? T.tt.e.c[mode_index(l, -m)] : 0.0;
            const double bs = (m > 0) ? T.tt.b.c[mode_index(l, -m)] : 0.0;
            if (ec == 0.0 && bc == 0.0 && es == 0.0 && bs == 0.0) continue;
            for (int i = 0; i < nt; ++i) {
                const double st = grid_.sin_theta[i], ct = grid_.mu[i];
                const double P = ptab_[m](l - m, i), P1 = dptab_[m](l - m, i);
                const auto Ld = ladder(double(m) * m, lam, ct, st, P, P1);
                const double Ta = Ld.P2 + 0.5 * lam * P;
                const double Tb = (P1 - (ct / st) * P) / st;
                C1(m, i) += ec * Ta + m * bs * Tb;
                S1(m, i) += es * Ta - m * bc * Tb;
                C2(m, i) += m * es * Tb - bc * Ta;
                S2(m, i) += -m * ec * Tb - bs * Ta;
            }
        }
    Eigen::VectorXd tau = synth(T.tau);
    att.resize(nt * np);
    atp.resize(nt * np);
    app.resize(nt * np);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            double a = 0.0, b = 0.0;
            for (int m = 0; m <= L; ++m) {
                a += C1(m, i) * cos_tab_(m, j) + S1(m, i) * sin_tab_(m, j);
                b += C2(m, i) * cos_tab_(m, j) + S2(m, i) * sin_tab_(m, j);
            }
            const int k = grid_.idx(i, j);
            att[k] = tau[k] + a;
            atp[k] = b;
            app[k] = tau[k] - a;
        }
}

SymTensorField SphHarmPlan::analyze_sym_tensor(const Eigen::VectorXd& att, const Eigen::VectorXd& atp,
                                               const Eigen::VectorXd& app) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    const double dphi = 2.0 * M_PI / np;
    SymTensorField T(L);
    T.tau = analyze(0.5 * (att + app));
    const Eigen::VectorXd a = 0.5 * (att - app);
    Eigen::MatrixXd Fc1 = Eigen::MatrixXd::Zero(L + 1, nt), Fs1 = Eigen::MatrixXd::Zero(L + 1, nt);
    Eigen::MatrixXd Fc2 = Eigen::MatrixXd::Zero(L + 1, nt), Fs2 = Eigen::MatrixXd::Zero(L + 1, nt);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            const double v1 = a[grid_.idx(i, j)] * dphi;
            const double v2 = atp[grid_.idx(i, j)] * dphi;
            for (int m = 0; m <= L; ++m) {
                Fc1(m, i) += v1 * cos_tab_(m, j);
                Fs1(m, i) += v1 * sin_tab_(m, j);
                Fc2(m, i) += v2 * cos_tab_(m, j);
                Fs2(m, i) += v2 * sin_tab_(m, j);
            }
        }
    for (int m = 0; m <= L; ++m)
        for (int l = std::max(2, m); l <= L; ++l) {
            const double lam = double(l) * (l + 1);
            double ec = 0.0, es = 0.0, bc = 0.0, bs = 0.0;
            for (int i = 0; i < nt; ++i) {
                const double w = grid_.w_theta[i];
                const double st = grid_.sin_theta[i], ct = grid_.mu[i];
                const double P = ptab_[m](l - m, i), P1 = dptab_[m](l - m, i);
                const auto Ld = ladder(double(m) * m, lam, ct, st, P, P1);
                const double Ta = Ld.P2 + 0.5 * lam * P;
                const double Tb = (P1 - (ct / st) * P) / st;
                ec += w * (Ta * Fc1(m, i) - m * Tb * Fs2(m, i));
                es += w * (Ta * Fs1(m, i) + m * Tb * Fc2(m, i));
                bc += w * (-m * Tb * Fs1(m, i) - Ta * Fc2(m, i));
                bs += w * (m * Tb * Fc1(m, i) - Ta * Fs2(m, i));
            }
            const double inv = 2.0 / mu_[l];
            T.tt.e.c[mode_index(l, m)] = ec * inv;
            T.tt.b.c[mode_index(l, m)] = bc * inv;
            if (m > 0) {
                T.tt.e.c[mode_index(l, -m)] = es * inv;
                T.tt.b.c[mode_index(l, -m)] = bs * inv;
            }
        }
    return T;
}

// ---------------------------------------------------------------- operators

ScalarField SphHarmPlan::laplace_beltrami(const ScalarField& f) const {
    ScalarField g = f;
    for (int l = 0; l <= grid_.L_max; ++l)
        for (int m = -l; m <= l; ++m) g.c[mode_index(l, m)] *= -double(l) * (l + 1);
    return g;
}

TangentField SphHarmPlan::grad(const ScalarField& f) const {
    TangentField X(grid_.L_max);
    X.e = f;
    X.e.c[0] = 0.0;
    return X;
}

ScalarField SphHarmPlan::divergence(const TangentField& X) const {
    ScalarField d = laplace_beltrami(X.e);
    d.c[0] = 0.0;
    return d;
}

TangentField SphHarmPlan::div_traceless(const TracelessTensor& T, double radius) const {
    TangentField out(grid_.L_max);
    const double s = 1.0 / (radius * radius);
    for (int l = 2; l <= grid_.L_max; ++l)
        for (int m = -l; m <= l; ++m) {
            const int k = mode_index(l, m);
            out.e.c[k] = s * lambda_[l] * T.e.c[k];
            out.b.c[k] = s * lambda_[l] * T.b.c[k];
        }
    return out;
}

SphHarmPlan::DivInverse SphHarmPlan::div_traceless_inverse(const TangentField& rhs, double radius) const {
    if (!(radius > 0.0)) throw std::invalid_argument("div_traceless_inverse: radius must be positive");
    DivInverse res;
    res.tensor = TracelessTensor(grid_.L_max);
    res.ck = ck_projection(rhs);
    const double a2 = radius * radius;
    for (int l = 2; l <= grid_.L_max; ++l) {
        if (std::abs(lambda_[l]) < 1e-14)
            throw std::runtime_error("div_traceless_inverse: vanishing multiplier at l >= 2");
        for (int m = -l; m <= l; ++m) {
            const int k = mode_index(l, m);
            res.tensor.e.c[k] = a2 * rhs.e.c[k] / lambda_[l];
            res.tensor.b.c[k] = a2 * rhs.b.c[k] / lambda_[l];
        }
    }
    return res;
}

std::array<double, 6> SphHarmPlan::ck_projection(const TangentField& rhs) const {
    std::array<double, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = dot(ck_->fields[i], rhs);
    return out;
}

double SphHarmPlan::dot(const TangentField& a, const TangentField& b) const {
    double s = 0.0;
    for (int l = 1; l <= grid_.L_max; ++l) {
        const double lam = double(l) * (l + 1);
        for (int m = -l; m <= l; ++m) {
            const int k = mode_index(l, m);
            s += lam * (a.e.c[k] * b.e.c[k] + a.b.c[k] * b.b.c[k]);
        }
    }
    return s;
}

Eigen::VectorXd SphHarmPlan::quad_weights() const {
    Eigen::VectorXd w(grid_.npts());
    const double dphi = 2.0 * M_PI / grid_.n_phi;
    for (int i = 0; i < grid_.n_theta; ++i)
        for (int j = 0; j < grid_.n_phi; ++j) w[grid_.idx(i, j)] = grid_.w_theta[i] * dphi;
    return w;
}

// ---------------------------------------------------------------- jets

ScalarJet SphHarmPlan::scalar_jet(const ScalarField& f) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    ScalarJet J;
    J.v = Eigen::VectorXd::Zero(nt * np);
    J.dt = Eigen::VectorXd::Zero(nt * np);
    J.dp = Eigen::VectorXd::Zero(nt * np);
    Eigen::MatrixXd Av = Eigen::MatrixXd::Zero(L + 1, nt), Bv = Av, At = Av, Bt = Av;
    for (int m = 0; m <= L; ++m)
        for (int l = m; l <= L; ++l) {
            const double cc = f.c[mode_index(l, m)];
            const double cs = (m > 0) ? f.c[mode_index(l, -m)] : 0.0;
            if (cc == 0.0 && cs == 0.0) continue;
            for (int i = 0; i < nt; ++i) {
                const double P = ptab_[m](l - m, i), P1 = dptab_[m](l - m, i);
                Av(m, i) += cc * P;
                Bv(m, i) += cs * P;
                At(m, i) += cc * P1;
                Bt(m, i) += cs * P1;
            }
        }
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            double v = 0.0, dt = 0.0, dp = 0.0;
            for (int m = 0; m <= L; ++m) {
                const double C = cos_tab_(m, j), S = sin_tab_(m, j);
                v += Av(m, i) * C + Bv(m, i) * S;
                dt += At(m, i) * C + Bt(m, i) * S;
                dp += m * (Bv(m, i) * C - Av(m, i) * S);
            }
            const int k = grid_.idx(i, j);
            J.v[k] = v;
            J.dt[k] = dt;
            J.dp[k] = dp;
        }
    return J;
}

VectorJet SphHarmPlan::vector_jet(const TangentField& X) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    VectorJet J;
    const int n = nt * np;
    J.vt = Eigen::VectorXd::Zero(n);
    J.vp = Eigen::VectorXd::Zero(n);
    J.dt_vt = Eigen::VectorXd::Zero(n);
    J.dp_vt = Eigen::VectorXd::Zero(n);
    J.dt_vp = Eigen::VectorXd::Zero(n);
    J.dp_vp = Eigen::VectorXd::Zero(n);
    for (int m = 0; m <= L; ++m)
        for (int l = std::max(1, m); l <= L; ++l) {
            const double lam = double(l) * (l + 1);
            const int kc = mode_index(l, m), ks = (m > 0) ? mode_index(l, -m) : -1;
            const double ec = X.e.c[kc], bc = X.b.c[kc];
            const double es = (ks >= 0) ? X.e.c[ks] : 0.0, bs = (ks >= 0) ? X.b.c[ks] : 0.0;
            if (ec == 0.0 && bc == 0.0 && es == 0.0 && bs == 0.0) continue;
            for (int i = 0; i < nt; ++i) {
                const double st = grid_.sin_theta[i], ct = grid_.mu[i];
                const double P = ptab_[m](l - m, i), P1 = dptab_[m](l - m, i);
                const auto Ld = ladder(double(m) * m, lam, ct, st, P, P1);
                const double T2 = (P1 - (ct / st) * P) / st;
                for (int j = 0; j < np; ++j) {
                    const double C = cos_tab_(m, j), S = sin_tab_(m, j);
                    const int k = grid_.idx(i, j);
                    // electric: w_t = P' trig, w_p = P dtrig
                    // magnetic: w_t = P dtrig / sin, w_p = -sin P' trig
                    const double trig_e = ec * C + es * S;
                    const double dtrig_e = m * (es * C - ec * S);
                    const double trig_b = bc * C + bs * S;
                    const double dtrig_b = m * (bs * C - bc * S);
                    J.vt[k] += P1 * trig_e + (P / st) * dtrig_b;
                    J.vp[k] += P * dtrig_e - st * P1 * trig_b;
                    J.dt_vt[k] += Ld.P2 * trig_e + T2 * dtrig_b;
                    J.dp_vt[k] += P1 * dtrig_e - (P / st) * m * m * trig_b;
                    J.dt_vp[k] += P1 * dtrig_e - (ct * P1 + st * Ld.P2) * trig_b;
                    J.dp_vp[k] += -m * m * P * trig_e - st * P1 * dtrig_b;
                }
            }
        }
    return J;
}

TensorJet SphHarmPlan::sym_tensor_jet(const SymTensorField& T, bool second_derivs) const {
    const int L = grid_.L_max, nt = grid_.n_theta, np = grid_.n_phi;
    const int n = nt * np;
    TensorJet J;
    for (int q = 0; q < 3; ++q) {
        J.v[q] = Eigen::VectorXd::Zero(n);
        J.dt[q] = Eigen::VectorXd::Zero(n);
        J.dp[q] = Eigen::VectorXd::Zero(n);
        if (second_derivs) {
            J.dtt[q] = Eigen::VectorXd::Zero(n);
            J.dtp[q] = Eigen::VectorXd::Zero(n);
            J.dpp[q] = Eigen::VectorXd::Zero(n);
        }
    }
    for (int m = 0; m <= L; ++m)
        for (int l = m; l <= L; ++l) {
            const double lam = double(l) * (l + 1);
            const int kc = mode_index(l, m), ks = (m > 0) ? mode_index(l, -m) : -1;
            const double tc = T.tau.c[kc];
            const double ts = (ks >= 0) ? T.tau.c[ks] : 0.0;
            const double ec = (l >= 2) ? T.tt.e.c[kc] : 0.0;
            const double es = (l >= 2 && ks >= 0) ? T.tt.e.c[ks] : 0.0;
            const double bc = (l >= 2) ? T.tt.b.c[kc] : 0.0;
            const double bs = (l >= 2 && ks >= 0) ? T.tt.b.c[ks] : 0.0;
            if (tc == 0 && ts == 0 && ec == 0 && es == 0 && bc == 0 && bs == 0) continue;
            const double m2 = double(m) * m;
            for (int i = 0; i < nt; ++i) {
                const double st = grid_.sin_theta[i], ct = grid_.mu[i];
                const double s2 = st * st;
                const double P = ptab_[m](l - m, i), P1 = dptab_[m](l - m, i);
                const auto Ld = ladder(m2, lam, ct, st, P, P1);
                const double T1 = Ld.P2 + 0.5 * lam * P;
                const double T1p = Ld.P3 + 0.5 * lam * P1;
                const double T1pp = Ld.P4 + 0.5 * lam * Ld.P2;
                const double U2 = P1 - (ct / st) * P;
                const double U2p = Ld.P2 - (ct / st) * P1 + P / s2;
                const double U2pp = Ld.P3 - (ct / st) * Ld.P2 + 2.0 * P1 / s2 - 2.0 * ct * P / (s2 * st);
                const double V = U2 / st;
                const double Vp = (U2p - (ct / st) * U2) / st;
                const double Vpp = U2pp / st - 2.0 * U2p * ct / s2 + U2 * (1.0 + ct * ct) / (s2 * st);
                for (int j = 0; j < np; ++j) {
                    const double C = cos_tab_(m, j), S = sin_tab_(m, j);
                    const int k = grid_.idx(i, j);
                    const double tr = tc * C + ts * S, dtr_t = m * (ts * C - tc * S);
                    const double te = ec * C + es * S, dte = m * (es * C - ec * S);
                    const double tb = bc * C + bs * S, dtb = m * (bs * C - bc * S);
                    // trace part: (tau, 0, sin^2 tau)
                    J.v[0][k] += P * tr;
                    J.dt[0][k] += P1 * tr;
                    J.dp[0][k] += P * dtr_t;
                    J.v[2][k] += s2 * P * tr;
                    J.dt[2][k] += (2.0 * st * ct * P + s2 * P1) * tr;
                    J.dp[2][k] += s2 * P * dtr_t;
                    // electric tt: (T1 trig, U2 dtrig, -sin^2 T1 trig)
                    J.v[0][k] += T1 * te;
                    J.dt[0][k] += T1p * te;
                    J.dp[0][k] += T1 * dte;
                    J.v[1][k] += U2 * dte;
                    J.dt[1][k] += U2p * dte;
                    J.dp[1][k] += -m2 * U2 * te;
                    J.v[2][k] += -s2 * T1 * te;
                    J.dt[2][k] += -(2.0 * st * ct * T1 + s2 * T1p) * te;
                    J.dp[2][k] += -s2 * T1 * dte;
                    // magnetic tt: (V dtrig, -sin T1 trig, -sin U2 dtrig)
                    J.v[0][k] += V * dtb;
                    J.dt[0][k] += Vp * dtb;
                    J.dp[0][k] += -m2 * V * tb;
                    J.v[1][k] += -st * T1 * tb;
                    J.dt[1][k] += -(ct * T1 + st * T1p) * tb;
                    J.dp[1][k] += -st * T1 * dtb;
                    J.v[2][k] += -st * U2 * dtb;
                    J.dt[2][k] += -(ct * U2 + st * U2p) * dtb;
                    J.dp[2][k] += m2 * st * U2 * tb;
                    if (second_derivs) {
                        const double c2t = ct * ct - st * st; // cos(2 theta)
                        J.dtt[0][k] += Ld.P2 * tr + T1pp * te + Vpp * dtb;
                        J.dtp[0][k] += P1 * dtr_t + T1p * dte - m2 * Vp * tb;
                        J.dpp[0][k] += -m2 * (P * tr + T1 * te + V * dtb);
                        J.dtt[1][k] += U2pp * dte - (-st * T1 + 2.0 * ct * T1p + st * T1pp) * tb;
                        J.dtp[1][k] += -m2 * U2p * te - (ct * T1 + st * T1p) * dtb;
                        J.dpp[1][k] += -m2 * (U2 * dte + st * T1 * tb);
                        J.dtt[2][k] += (2.0 * c2t * P + 4.0 * st * ct * P1 + s2 * Ld.P2) * tr -
                                       (2.0 * c2t * T1 + 4.0 * st * ct * T1p + s2 * T1pp) * te -
                                       (-st * U2 + 2.0 * ct * U2p + st * U2pp) * dtb;
                        J.dtp[2][k] += (2.0 * st * ct * P + s2 * P1) * dtr_t -
                                       (2.0 * st * ct * T1 + s2 * T1p) * dte + m2 * (ct * U2 + st * U2p) * tb;
                        J.dpp[2][k] += -m2 * (s2 * P * tr - s2 * T1 * te - st * U2 * dtb);
                    }
                }
            }
        }
    return J;
}

// ---------------------------------------------------------------- CK basis

CKBasis::CKBasis(int L) {
    const double inv = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < 6; ++k) fields[k] = TangentField(L);
    for (int m = -1; m <= 1; ++m) {
        fields[m + 1].b.c[mode_index(1, m)] = inv;     // rotations
        fields[m + 4].e.c[mode_index(1, m)] = inv;     // boosts
    }
}

Eigen::Matrix<double, 6, 6> CKBasis::gram(const SphHarmPlan& plan) const {
    Eigen::Matrix<double, 6, 6> G;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) G(i, j) = plan.dot(fields[i], fields[j]);
    return G;
}

} // namespace bartnik
