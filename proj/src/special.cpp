#include "bgx/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bgx {

namespace {

bool is_nonpos_int(double z) { return z <= 0.0 && z == std::nearbyint(z); }

double series(double a, double b, double c, double x) {
    double term = 1.0, sum = 1.0;
    int small = 0;
    for (int k = 0; k < 20000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++small == 2) return sum;
        } else {
            small = 0;
        }
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

double near_int_gap(double v) { return std::abs(v - std::nearbyint(v)); }

double hyp2f1_generic(double a, double b, double c, double x);

// The 1/x and 1-x connection formulas are singular when the relevant parameter
// difference is an integer. There the function is analytic in the perturbed
// parameter, so a symmetric sixth-order extrapolation recovers it.
template <class F>
double perturbed(F&& f) {
    constexpr double h = 2e-3;
    double acc[3];
    for (int k = 1; k <= 3; ++k) acc[k - 1] = 0.5 * (f(k * h) + f(-k * h));
    return (15.0 * acc[0] - 6.0 * acc[1] + acc[2]) / 10.0;
}

// x < -2: expansion in 1/x.
double inv_x(double a, double b, double c, double x) {
    if (near_int_gap(a - b) < 1e-3)
        return perturbed([&](double e) { return inv_x(a, b + e, c, x); });
    const double w = 1.0 / x;
    const double t1 = gamma(c) * gamma(b - a) * rgamma(b) * rgamma(c - a);
    const double t2 = gamma(c) * gamma(a - b) * rgamma(a) * rgamma(c - b);
    double r = 0.0;
    if (t1 != 0.0) r += t1 * std::pow(-x, -a) * series(a, 1.0 - c + a, 1.0 - b + a, w);
    if (t2 != 0.0) r += t2 * std::pow(-x, -b) * series(b, 1.0 - c + b, 1.0 - a + b, w);
    return r;
}

// 0.5 < x < 1: expansion in 1-x.
double one_minus_x(double a, double b, double c, double x) {
    const double d = c - a - b;
    if (near_int_gap(d) < 1e-3)
        return perturbed([&](double e) { return one_minus_x(a + e, b, c, x); });
    const double y = 1.0 - x;
    const double t1 = gamma(c) * gamma(d) * rgamma(c - a) * rgamma(c - b);
    const double t2 = gamma(c) * gamma(-d) * rgamma(a) * rgamma(b);
    double r = 0.0;
    if (t1 != 0.0) r += t1 * series(a, b, 1.0 - d, y);
    if (t2 != 0.0) r += t2 * std::pow(y, d) * series(c - a, c - b, d + 1.0, y);
    return r;
}

double hyp2f1_generic(double a, double b, double c, double x) {
    if (std::abs(x) <= 0.5) return series(a, b, c, x);
    if (x < -2.0) return inv_x(a, b, c, x);
    if (x < 0.0) return std::pow(1.0 - x, -a) * series(a, c - b, c, x / (x - 1.0));
    return one_minus_x(a, b, c, x);
}

}  // namespace

double gamma(double z) {
    if (is_nonpos_int(z)) throw std::domain_error("gamma: pole");
    return std::tgamma(z);
}

double rgamma(double z) {
    if (is_nonpos_int(z)) return 0.0;
    return 1.0 / std::tgamma(z);
}

double beta(double x, double y) { return gamma(x) * gamma(y) * rgamma(x + y); }

double digamma(double z) {
    if (is_nonpos_int(z)) throw std::domain_error("digamma: pole");
    double r = 0.0;
    if (z < 0.0) {
        // reflection
        return digamma(1.0 - z) - std::numbers::pi / std::tan(std::numbers::pi * z);
    }
    while (z < 10.0) {
        r -= 1.0 / z;
        z += 1.0;
    }
    const double z2 = 1.0 / (z * z);
    r += std::log(z) - 0.5 / z -
         z2 * (1.0 / 12 - z2 * (1.0 / 120 - z2 * (1.0 / 252 - z2 * (1.0 / 240 - z2 / 132))));
    return r;
}

double hyp2f1(double a, double b, double c, double x) {
    if (is_nonpos_int(c)) throw std::domain_error("hyp2f1: c is a non-positive integer");
    if (!(x < 1.0)) throw std::domain_error("hyp2f1: x must be < 1");
    if (x == 0.0) return 1.0;
    // polynomial cases
    if (is_nonpos_int(a) || is_nonpos_int(b)) return series(a, b, c, x);
    return hyp2f1_generic(a, b, c, x);
}

bool ModelParams::dirichlet_ok() const { return 2.0 - n + 2.0 * p < a && a < 1.0; }

bool ModelParams::closed_form_ok() const { return a < 1.0 && n - 2.0 * p - a > 0.0; }

bool ModelParams::selfadj_ok() const { return 2.0 - n + 2.0 * p < a && a <= 2.0; }

bool ModelParams::dtn_ok() const {
    const double sv = s();
    return sv > 0.0 && sv < 1.0 && 2 * p <= n - 3;
}

double c_poisson(const ModelParams& m) {
    const double den = m.n - 2.0 * m.p - m.a;
    if (den == 0.0) throw std::domain_error("c_poisson: n - 2p - a = 0");
    const double g = (1.0 - m.a) / 2.0;
    if (is_nonpos_int(g)) throw std::domain_error("c_poisson: Gamma((1-a)/2) is singular");
    return 2.0 * gamma((m.n - m.a + 2.0) / 2.0) /
           (std::pow(std::numbers::pi, (m.n - 1) / 2.0) * den * gamma(g));
}

double d_dtn(const ModelParams& m) {
    if (!m.dtn_ok()) throw std::domain_error("d_dtn: requires s in (0,1) and p <= (n-3)/2");
    return 1.0 / (gamma(-m.s()) * c_poisson(m));
}

double isometry_const(const ModelParams& m) {
    if (!m.closed_form_ok()) throw std::domain_error("isometry_const: requires a < 1 and n-2p-a > 0");
    const double k = m.n - 2.0 * m.p - m.a;
    return 2.0 * std::sqrt(std::numbers::pi) * (k + 2.0) * gamma((2.0 - m.a) / 2.0) /
           (k * gamma((1.0 - m.a) / 2.0));
}

std::pair<double, double> beta_profile_integrals(double a, int n, int p) {
    if (!(a < 1.0)) throw std::domain_error("beta_profile_integrals: divergent for a >= 1");
    const double first =
        std::sqrt(std::numbers::pi) * gamma((1.0 - a) / 2.0) / gamma((2.0 - a) / 2.0);
    return {first, (n - 2.0 * p - a) * first};
}

}  // namespace bgx
