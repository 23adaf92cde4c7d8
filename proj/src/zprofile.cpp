#include "bgx/zprofile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bgx {

PowProfile PowProfile::term(double c, int k, double e) {
    PowProfile p;
    if (c != 0.0) p.t_[{k, e}] = c;
    return p;
}

double PowProfile::operator()(double z) const {
    double s = 0.0;
    const double q = 1.0 + z * z;
    for (const auto& [ke, c] : t_) s += c * std::pow(z, ke.first) * std::pow(q, ke.second);
    return s;
}

PowProfile PowProfile::derivative() const {
    // d/dz z^k q^e = k z^{k-1} q^e + 2e z^{k+1} q^{e-1}
    PowProfile out;
    for (const auto& [ke, c] : t_) {
        const auto [k, e] = ke;
        if (k != 0) out += term(c * k, k - 1, e);
        if (e != 0.0) out += term(2.0 * e * c, k + 1, e - 1.0);
    }
    return out;
}

PowProfile& PowProfile::operator+=(const PowProfile& o) {
    for (const auto& [ke, c] : o.t_) {
        const double v = (t_[ke] += c);
        if (v == 0.0) t_.erase(ke);
    }
    return *this;
}

PowProfile& PowProfile::operator*=(double s) {
    if (s == 0.0) t_.clear();
    for (auto& [ke, c] : t_) c *= s;
    return *this;
}

PowProfile operator+(PowProfile a, const PowProfile& b) { return a += b; }
PowProfile operator*(double s, PowProfile a) { return a *= s; }

ProfileSet ProfileSet::closed_form(const ModelParams& m) {
    if (!m.closed_form_ok()) throw std::domain_error("ProfileSet: requires a < 1 and n-2p-a > 0");
    const double a = m.a;
    const double k = m.n - 2.0 * m.p;
    const double base = gamma((2.0 - a) / 2.0) / (std::sqrt(std::numbers::pi) * gamma((1.0 - a) / 2.0));
    ProfileSet s;
    s.params = m;
    s.v1 = PowProfile::term(base, 0, (a - 2.0) / 2.0);
    const double c2 = base / (k - a);
    s.v2 = PowProfile::term(c2 * (k + a - 2.0), 2, (a - 4.0) / 2.0) +
           PowProfile::term(c2 * (k - a + 2.0), 0, (a - 4.0) / 2.0);
    s.v3 = PowProfile::term(c2 * 2.0 * (2.0 - a), 1, (a - 4.0) / 2.0);
    return s;
}

void HypTerm::eval(double z, double& v, double& d1, double& d2) const {
    // g = z^k F(w), w = -z^m, dw/dz = m w / z
    const double w = -std::pow(z, m);
    const double F = hyp2f1(alpha, beta, gamma, w);
    const double F1 = alpha * beta / gamma * hyp2f1(alpha + 1, beta + 1, gamma + 1, w);
    const double F2 = alpha * beta * (alpha + 1) * (beta + 1) / (gamma * (gamma + 1)) *
                      hyp2f1(alpha + 2, beta + 2, gamma + 2, w);
    if (z == 0.0) {
        // Taylor coefficients of z^k (F(0) - F'(0) z^2 + ...)
        if (m != 2 || (k != 0.0 && k != 1.0))
            throw std::domain_error("HypTerm: z = 0 not supported for this term");
        v = k == 0.0 ? c * F : 0.0;
        d1 = k == 0.0 ? 0.0 : c * F;
        d2 = k == 0.0 ? -2.0 * c * F1 : 0.0;
        return;
    }
    const double zk = std::pow(z, k);
    v = c * zk * F;
    d1 = c * zk / z * (k * F + m * w * F1);
    d2 = c * zk / (z * z) *
         ((k - 1) * (k * F + m * w * F1) + k * m * w * F1 + m * m * w * F1 + m * m * w * w * F2);
}

double HypProfile::operator()(double z) const {
    double v, d1, d2;
    eval(z, v, d1, d2);
    return v;
}

void HypProfile::eval(double z, double& v, double& d1, double& d2) const {
    v = d1 = d2 = 0.0;
    for (const auto& t : terms) {
        double a, b, c;
        t.eval(z, a, b, c);
        v += a;
        d1 += b;
        d2 += c;
    }
}

}  // namespace bgx
