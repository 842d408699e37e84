#include "bartnik/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bartnik {

namespace {
const Eigen::VectorXd& pick(const ProfileStack& f, int t) {
    switch (t) {
        case 0: return f.v;
        case 1: return f.d1;
        default: return f.d2;
    }
}
} // namespace

RadialNormResult weighted_H_profile(const RadialGrid& g, const ProfileStack& f, int t, double tau) {
    if (t > f.order) throw std::invalid_argument("weighted_H_profile: derivative stack too short");
    RadialNormResult res;
    res.fitted_exponent = g.fitted_decay_exponent(f.v);
    for (int tp = 0; tp <= t; ++tp) {
        const Eigen::VectorXd& ft = pick(f, tp);
        Eigen::VectorXd integrand(g.size());
        for (int i = 0; i < g.size(); ++i)
            integrand[i] = std::pow(g.r()[i], -2.0 * tau - 1.0 + 2.0 * tp) * ft[i] * ft[i];
        res.truncated += g.integrate(integrand);
        const auto [tail, div] = g.tail_of_weighted_square(ft, -2.0 * tau - 1.0 + 2.0 * tp);
        if (div) res.divergent = true;
        else res.tail += tail;
    }
    res.value = res.truncated + res.tail;
    return res;
}

RadialNormResult weighted_C_profile(const RadialGrid& g, const ProfileStack& f, int t, double tau) {
    if (t > f.order) throw std::invalid_argument("weighted_C_profile: derivative stack too short");
    RadialNormResult res;
    res.fitted_exponent = g.fitted_decay_exponent(f.v);
    for (int tp = 0; tp <= t; ++tp) {
        const Eigen::VectorXd& ft = pick(f, tp);
        double best = 0.0;
        int arg = 0;
        for (int i = 0; i < g.size(); ++i) {
            const double w = std::pow(g.r()[i], -2.0 * tau + 2.0 * tp) * ft[i] * ft[i];
            if (w > best) {
                best = w;
                arg = i;
            }
        }
        // the sup beyond Rcut can exceed the nodal sup only for non-decaying tails
        if (res.fitted_exponent >= tau - 1e-12 && std::abs(ft[g.size() - 1]) > 1e-290) res.divergent = true;
        res.truncated += best;
        if (tp == 0) res.argmax_node = arg;
    }
    res.value = res.truncated;
    return res;
}

NormReport weighted_norm_field(const RadialGrid& g, const FieldStack& f, int t, int k, double delta) {
    NormReport rep;
    const int nm = int(f.v.cols());
    rep.per_mode_H2 = Eigen::VectorXd::Zero(nm);
    double H2 = 0.0, C2 = 0.0;
    std::vector<double> AH2(t + 1, 0.0), AC2(t + 1, 0.0);
    for (int q = 0; q < nm; ++q) {
        const int l = mode_degree(q);
        const double lamk = std::pow(1.0 + double(l) * (l + 1), double(k));
        ProfileStack p;
        p.v = f.v.col(q);
        if (f.order >= 1) p.d1 = f.d1.col(q);
        if (f.order >= 2) p.d2 = f.d2.col(q);
        p.order = f.order;
        const auto rh = weighted_H_profile(g, p, t, delta);
        const auto rc = weighted_C_profile(g, p, t, delta);
        rep.per_mode_H2[q] = lamk * rh.value;
        H2 += lamk * rh.value;
        C2 += lamk * rc.value;
        rep.divergent = rep.divergent || rh.divergent || rc.divergent;
        rep.tail += lamk * rh.tail;
        for (int tp = 0; tp <= t; ++tp) {
            const double lams = std::pow(1.0 + double(l) * (l + 1), double(k - tp));
            AH2[tp] += lams * weighted_H_profile(g, p, tp, delta).value;
            AC2[tp] += lams * weighted_C_profile(g, p, tp, delta).value;
        }
    }
    rep.H = std::sqrt(H2);
    rep.C = std::sqrt(C2);
    for (int tp = 0; tp <= t; ++tp) {
        rep.A_H = std::max(rep.A_H, std::sqrt(AH2[tp]));
        rep.A_C = std::max(rep.A_C, std::sqrt(AC2[tp]));
        rep.A = std::max(rep.A, std::sqrt(AH2[tp] + AC2[tp]));
    }
    return rep;
}

} // namespace bartnik
