#include "bartnik/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace bartnik {

namespace {

// P_l(z) = sum_{k=0}^{l} a_k z^{l-k}, a_0 = 1, a_1 = 0,
// a_k = (l-k+2)(l-k+1) / (k^2 - k(2l+1)) a_{k-2}.
std::vector<double> p_coeffs(int ell) {
    std::vector<double> a(ell + 1, 0.0);
    a[0] = 1.0;
    for (int k = 2; k <= ell; k += 2) {
        const double num = double(ell - k + 2) * double(ell - k + 1);
        const double den = double(k) * k - double(k) * (2.0 * ell + 1.0);
        a[k] = num / den * a[k - 2];
    }
    return a;
}

// Series Q_l(z) = sum_k b_k z^{-l-1-k}, b_0 = 1, b_1 = 0,
// b_k = (l+k-1)(l+k) / (k(2l+k+1)) b_{k-2}.
// Returns scaled (q, dq) = (z^{l+1} Q, z^{l+2} Q'). Throws if the tail
// bound cannot reach tol within the iteration cap.
std::pair<double, double> q_series_scaled(int ell, double z, double tol) {
    const double zi2 = 1.0 / (z * z);
    double bk = 1.0;        // b_k z^{-k}, even k only
    double q = bk;
    double dq = -(double(ell) + 1.0) * bk;
    const int kcap = 40000;
    for (int k = 2; k <= kcap; k += 2) {
        bk *= double(ell + k - 1) * double(ell + k) / (double(k) * double(2 * ell + k + 1)) * zi2;
        q += bk;
        dq += -(double(ell) + 1.0 + k) * bk;
        // consecutive even-term ratios are all below 1/z^2, so the geometric
        // tail with ratio zi2 is a rigorous bound
        if (zi2 < 1.0 && bk * zi2 / (1.0 - zi2) < tol) return {q, dq};
    }
    throw std::runtime_error("legendre_Q: series did not reach requested tolerance");
}

// Olver-normalized bold-Q via Miller downward recurrence, anchored to the
// closed form bold-Q_0 = artanh(1/z). Used near z = 1 where the series is slow.
// Returns our normalization: Q_l = 2^{l+1} Gamma(l+3/2) / (sqrt(pi) Gamma(l+1)) bold-Q_l.
double q_downward(int ell, double z) {
    const int start = ell + 30 + int(20.0 / std::max(z - 1.0, 1e-3));
    double qp = 0.0;   // trial bold-Q_{k+1}
    double qk = 1e-280; // trial bold-Q_k
    double q_ell = 0.0;
    for (int k = start; k >= 1; --k) {
        // (2k+1) z bold-Q_k = (k+1) bold-Q_{k+1} + k bold-Q_{k-1}
        double qm = ((2.0 * k + 1.0) * z * qk - (k + 1.0) * qp) / double(k);
        qp = qk;
        qk = qm;
        if (k - 1 == ell) q_ell = qm;
        if (std::abs(qk) > 1e250) { // rescale to avoid overflow
            qp /= 1e250;
            qk /= 1e250;
            q_ell /= 1e250;
        }
    }
    const double q0_true = std::atanh(1.0 / z);
    double scale = q0_true / qk;
    double bold_q = (ell == 0) ? q0_true : q_ell * scale;
    // c_l = 2^{l+1} Gamma(l+3/2)/(sqrt(pi) Gamma(l+1)); c_0 = 1, c_l/c_{l-1} = 2(l+1/2)/l
    double c = 1.0;
    for (int k = 1; k <= ell; ++k) c *= 2.0 * (double(k) + 0.5) / double(k);
    return bold_q * c;
}

} // namespace

LegendreValue legendre_P(int ell, double z) {
    if (!(z > 1.0)) throw std::domain_error("legendre_P: requires z > 1");
    const auto a = p_coeffs(ell);
    double v = 0.0, d = 0.0, vabs = 0.0;
    for (int k = 0; k <= ell; ++k) { // Horner over descending powers z^{l-k}
        v = v * z + a[k];
        vabs = vabs * z + std::abs(a[k]);
        if (k < ell) d = d * z + a[k] * double(ell - k);
    }
    if (vabs <= 1e3 * std::abs(v)) return {v, d};
    // the alternating sum cancels badly near z = 1 at large degree; switch to
    // the positive-term binomial form bold-P = sum C(l,k)^2 u^{l-k} v^k,
    // u = (z-1)/2, v = (z+1)/2, rescaled into this normalization
    const double u = 0.5 * (z - 1.0), w = 0.5 * (z + 1.0);
    double bp = 0.0, bdp = 0.0, C = 1.0; // C = C(l,k)
    std::vector<double> upow(ell + 1), wpow(ell + 1);
    upow[0] = wpow[0] = 1.0;
    for (int k = 1; k <= ell; ++k) {
        upow[k] = upow[k - 1] * u;
        wpow[k] = wpow[k - 1] * w;
    }
    for (int k = 0; k <= ell; ++k) {
        const double c2 = C * C;
        bp += c2 * upow[ell - k] * wpow[k];
        if (ell - k > 0) bdp += 0.5 * c2 * double(ell - k) * upow[ell - k - 1] * wpow[k];
        if (k > 0) bdp += 0.5 * c2 * double(k) * upow[ell - k] * wpow[k - 1];
        C *= double(ell - k) / double(k + 1);
    }
    // rescale: P_l = sqrt(pi) Gamma(l+1) / (2^l Gamma(l+1/2)) bold-P_l
    double scale = 1.0; // ratio at l=0 is 1; build up by Gamma recurrences
    for (int k = 1; k <= ell; ++k) scale *= double(k) / (2.0 * (double(k) - 0.5));
    return {scale * bp, scale * bdp};
}

LegendreValue legendre_Q(int ell, double z, double tol) {
    if (!(z > 1.0)) throw std::domain_error("legendre_Q: requires z > 1");
    if (z >= 1.2) {
        auto [q, dq] = q_series_scaled(ell, z, tol);
        const double zf = std::pow(z, -(double(ell) + 1.0));
        return {q * zf, dq * zf / z};
    }
    const double q = q_downward(ell, z);
    // derivative from the recurrence (z^2-1) Q_l' = l (z Q_l - Q_{l-1});
    // for l = 0, Q_0 = artanh(1/z) gives Q_0' = -1/(z^2-1) directly.
    if (ell == 0) return {q, -1.0 / (z * z - 1.0)};
    const double qm1 = (ell == 1) ? std::atanh(1.0 / z) : q_downward(ell - 1, z);
    // our normalization carries c_l / c_{l-1} = 2(l+1/2)/l into the recurrence
    const double cl_ratio = 2.0 * (double(ell) + 0.5) / double(ell);
    const double dq = double(ell) * (z * q - cl_ratio * qm1) / (z * z - 1.0);
    return {q, dq};
}

ScaledPair legendre_scaled(int ell, double z, double tol) {
    if (!(z > 1.0)) throw std::domain_error("legendre_scaled: requires z > 1");
    ScaledPair s{};
    // p = z^{-l} P: evaluate the sum in powers of z^{-k} directly
    {
        const auto a = p_coeffs(ell);
        double v = 0.0, d = 0.0, vabs = 0.0;
        const double zi = 1.0 / z;
        for (int k = ell; k >= 0; --k) {
            v = v * zi + a[k];
            vabs = vabs * zi + std::abs(a[k]);
            d = d * zi + a[k] * double(ell - k);
        }
        s.p = v;         // z^{-l} P   = sum a_k z^{-k}
        s.dp = d;        // z^{-(l-1)} P' = sum a_k (l-k) z^{-k}
        if (vabs > 1e3 * std::abs(v)) { // cancellation near z = 1: reroute
            const auto P = legendre_P(ell, z);
            const double zl = std::pow(z, double(ell));
            s.p = P.value / zl;
            s.dp = P.deriv / (zl / z);
        }
    }
    if (z >= 1.2) {
        auto [q, dq] = q_series_scaled(ell, z, tol);
        s.q = q;
        s.dq = dq;
    } else {
        auto qv = legendre_Q(ell, z, tol);
        s.q = qv.value * std::pow(z, double(ell) + 1.0);
        s.dq = qv.deriv * std::pow(z, double(ell) + 2.0);
    }
    return s;
}

double wronskian_constant(int ell, double z, double tol) {
    const auto P = legendre_P(ell, z);
    const auto Q = legendre_Q(ell, z, tol);
    return (P.value * Q.deriv - P.deriv * Q.value) * (z * z - 1.0);
}

UniformBoundReport verify_uniform_bounds(int ell_max, const std::vector<double>& z_grid, double R) {
    if (!(R > 1.0)) throw std::domain_error("verify_uniform_bounds: R must exceed 1");
    UniformBoundReport rep{};
    for (int ell = 1; ell <= ell_max; ++ell) {
        for (double z : z_grid) {
            if (z < R) continue;
            const auto s = legendre_scaled(ell, z);
            const double base = 2.0 * z / (z + std::sqrt(z * z - 1.0));
            const double wP = std::abs(s.p) * std::pow(base, double(ell));
            const double wQ = std::abs(s.q) * std::pow(base, -double(ell));
            const double wdP = std::abs(s.dp) * std::pow(base, double(ell)) / double(ell);
            const double wdQ = std::abs(s.dq) * std::pow(base, -double(ell)) / double(ell);
            if (wP > rep.max_ratio_P) { rep.max_ratio_P = wP; rep.argmax_ell_P = ell; rep.argmax_z_P = z; }
            if (wQ > rep.max_ratio_Q) { rep.max_ratio_Q = wQ; rep.argmax_ell_Q = ell; rep.argmax_z_Q = z; }
            if (wdP > rep.max_ratio_dP) { rep.max_ratio_dP = wdP; rep.argmax_ell_dP = ell; rep.argmax_z_dP = z; }
            if (wdQ > rep.max_ratio_dQ) { rep.max_ratio_dQ = wdQ; rep.argmax_ell_dQ = ell; rep.argmax_z_dQ = z; }
        }
    }
    return rep;
}

} // namespace bartnik
