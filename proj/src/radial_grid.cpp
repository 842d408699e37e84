#include "bartnik/radial_grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace bartnik {

RadialGrid::RadialGrid(int n_nodes, double r0, double r_cut) : r0_(r0), r_cut_(r_cut) {
    if (n_nodes < 8) throw std::invalid_argument("RadialGrid: need at least 8 nodes");
    if (!(r_cut > r0 && r0 > 0.0)) throw std::invalid_argument("RadialGrid: need 0 < r0 < Rcut");
    const int N = n_nodes;
    const int M = N - 1;
    x_max_ = 1.0 - r0 / r_cut;

    y_.resize(N);
    r_.resize(N);
    for (int k = 0; k < N; ++k) {
        y_[k] = std::cos(M_PI * double(k) / double(M));
        const double x = x_max_ * (1.0 - y_[k]) / 2.0;
        r_[k] = r0 / (1.0 - x);
    }
    r_[0] = r0;
    r_[N - 1] = r_cut;

    // CGL differentiation matrix in y, then chain rule to r
    Eigen::MatrixXd Dy(N, N);
    auto cw = [&](int i) { return (i == 0 || i == M) ? 2.0 : 1.0; };
    for (int i = 0; i < N; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            const double sgn = (((i + j) % 2) == 0) ? 1.0 : -1.0;
            Dy(i, j) = (cw(i) / cw(j)) * sgn / (y_[i] - y_[j]);
            rowsum += Dy(i, j);
        }
        Dy(i, i) = -rowsum;
    }
    Eigen::VectorXd dxdr(N);
    for (int k = 0; k < N; ++k) dxdr[k] = r0 / (r_[k] * r_[k]);
    // x = x_max (1-y)/2 so dy/dx = -2/x_max
    d1_ = (-2.0 / x_max_) * dxdr.asDiagonal() * Dy;
    d2_ = d1_ * d1_;

    // Clenshaw-Curtis weights on [-1,1]
    Eigen::VectorXd wcc = Eigen::VectorXd::Zero(N);
    for (int k = 0; k < N; ++k) {
        double s = 1.0;
        for (int j = 1; j <= M / 2; ++j) {
            const double bj = (2 * j == M) ? 1.0 : 2.0;
            s -= bj * std::cos(2.0 * j * M_PI * k / M) / (4.0 * j * j - 1.0);
        }
        wcc[k] = 2.0 * s / M;
        if (k == 0 || k == M) wcc[k] *= 0.5;
    }
    w_.resize(N);
    for (int k = 0; k < N; ++k) w_[k] = (x_max_ / 2.0) * wcc[k] * r_[k] * r_[k] / r0;

    // DCT-I style transforms between nodal values and Chebyshev coefficients
    cheb_to_vals_.resize(N, N);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j) cheb_to_vals_(k, j) = std::cos(M_PI * double(j) * double(k) / double(M));
    vals_to_cheb_.resize(N, N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            double v = (2.0 / M) * std::cos(M_PI * double(j) * double(k) / double(M));
            if (k == 0 || k == M) v *= 0.5;
            if (j == 0 || j == M) v *= 0.5;
            vals_to_cheb_(j, k) = v;
        }

    bary_w_.resize(N);
    for (int k = 0; k < N; ++k) {
        bary_w_[k] = ((k % 2) == 0) ? 1.0 : -1.0;
        if (k == 0 || k == M) bary_w_[k] *= 0.5;
    }
}

Eigen::VectorXd RadialGrid::cumulative(const Eigen::VectorXd& f) const {
    const int N = size();
    if (f.size() != N) throw std::invalid_argument("cumulative: size mismatch");
    // g(y) = f * dr/dx * dx/dy on the y-grid; antiderivative in y from y=-1
    Eigen::VectorXd g(N);
    for (int k = 0; k < N; ++k) g[k] = f[k] * (r_[k] * r_[k] / r0_) * (-x_max_ / 2.0);
    Eigen::VectorXd c = vals_to_cheb_ * g;
    Eigen::VectorXd A = Eigen::VectorXd::Zero(N + 1);
    for (int j = 1; j <= N; ++j) {
        const double cjm1 = (j == 1) ? 2.0 * c[0] : c[j - 1];
        const double cjp1 = (j + 1 < N) ? c[j + 1] : 0.0;
        A[j] = (cjm1 - cjp1) / (2.0 * j);
    }
    double a0 = 0.0;
    for (int j = 1; j <= N; ++j) a0 -= A[j] * ((j % 2) ? -1.0 : 1.0);
    A[0] = a0;
    // F(y_k) = sum_j A_j T_j(y_k); cumulative from r0 (y=1): F(y_k) - F(1)
    Eigen::VectorXd F = Eigen::VectorXd::Zero(N);
    for (int k = 0; k < N; ++k) {
        // Clenshaw evaluation of sum A_j T_j(y_k)
        double b1 = 0.0, b2 = 0.0;
        for (int j = N; j >= 1; --j) {
            const double b0 = 2.0 * y_[k] * b1 - b2 + A[j];
            b2 = b1;
            b1 = b0;
        }
        F[k] = y_[k] * b1 - b2 + A[0];
    }
    double F1 = 0.0;
    {
        double b1 = 0.0, b2 = 0.0;
        for (int j = N; j >= 1; --j) {
            const double b0 = 2.0 * b1 - b2 + A[j];
            b2 = b1;
            b1 = b0;
        }
        F1 = b1 - b2 + A[0];
    }
    for (int k = 0; k < N; ++k) F[k] -= F1;
    return F;
}

double RadialGrid::interpolate(const Eigen::VectorXd& f, double r) const {
    const int N = size();
    const double x = 1.0 - r0_ / r;
    const double y = 1.0 - 2.0 * x / x_max_;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < N; ++k) {
        const double d = y - y_[k];
        if (std::abs(d) < 1e-14) return f[k];
        const double t = bary_w_[k] / d;
        num += t * f[k];
        den += t;
    }
    return num / den;
}

double RadialGrid::fitted_decay_exponent(const Eigen::VectorXd& f) const {
    const int N = size();
    int lo = (3 * N) / 4;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = lo; k < N; ++k) {
        const double a = std::abs(f[k]);
        if (a < 1e-290) continue;
        const double X = std::log(r_[k]);
        const double Y = std::log(a);
        sx += X; sy += Y; sxx += X * X; sxy += X * Y;
        ++cnt;
    }
    if (cnt < 4) return -std::numeric_limits<double>::infinity();
    const double det = cnt * sxx - sx * sx;
    if (std::abs(det) < 1e-30) return -std::numeric_limits<double>::infinity();
    return (cnt * sxy - sx * sy) / det;
}

std::pair<double, bool> RadialGrid::tail_of_weighted_square(const Eigen::VectorXd& f, double w) const {
    const double p = fitted_decay_exponent(f);
    if (!std::isfinite(p)) return {0.0, false};
    const double fN = f[size() - 1];
    const double expo = w + 2.0 * p + 1.0;
    if (expo >= -1e-9) return {std::numeric_limits<double>::infinity(), true};
    const double val = -fN * fN * std::pow(r_cut_, w + 1.0) / expo;
    return {val, false};
}

} // namespace bartnik
