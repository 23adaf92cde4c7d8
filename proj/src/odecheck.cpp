#include "bgx/odecheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bgx/parallel.hpp"
#include "bgx/quadrature.hpp"

namespace bgx {

double scalar_ode(double a, double c, double v, double d1, double d2, double z) {
    return (1.0 + z * z) * d2 - (a - 4.0) * z * d1 - c * v;
}

double OdeResidual::max() const { return std::max({std::abs(eq1), std::abs(eq2), std::abs(eq3), std::abs(eq4)}); }

namespace {

struct Derivs {
    PowProfile v, d1, d2;
    explicit Derivs(const PowProfile& p) : v(p), d1(p.derivative()), d2(d1.derivative()) {}
};

double rel(double r, std::initializer_list<double> terms) {
    double s = 0.0;
    for (double t : terms) s = std::max(s, std::abs(t));
    return s == 0.0 ? std::abs(r) : r / s;
}

}  // namespace

OdeResidual profile_residuals(const ProfileSet& s, double z) {
    const double a = s.params.a;
    const double c1 = a - 2.0, c3 = s.params.n - 2.0 * s.params.p + a - 2.0;
    const Derivs p1(s.v1), p2(s.v2), p3(s.v3), p4(s.v4);
    auto terms = [&](const Derivs& p, double c) {
        return std::array<double, 3>{(1.0 + z * z) * p.d2(z), (a - 4.0) * z * p.d1(z), c * p.v(z)};
    };
    OdeResidual r;
    {
        const auto t = terms(p1, c1);
        r.eq1 = rel(t[0] - t[1] - t[2], {t[0], t[1], t[2]});
    }
    {
        const auto t = terms(p2, c1);
        const double x = 2.0 * p3.d1(z);
        r.eq2 = rel(t[0] - t[1] - t[2] + x, {t[0], t[1], t[2], x});
    }
    {
        const auto t = terms(p3, c3);
        const double x = -2.0 * p2.d1(z);
        r.eq3 = rel(t[0] - t[1] - t[2] + x, {t[0], t[1], t[2], x});
    }
    {
        const auto t = terms(p4, c3);
        r.eq4 = rel(t[0] - t[1] - t[2], {t[0], t[1], t[2]});
    }
    return r;
}

OdeResidual profile_residuals(const ProfileSet& s, const std::vector<double>& zs) {
    OdeResidual m;
    for (double z : zs) {
        const OdeResidual r = profile_residuals(s, z);
        m.eq1 = std::max(m.eq1, std::abs(r.eq1));
        m.eq2 = std::max(m.eq2, std::abs(r.eq2));
        m.eq3 = std::max(m.eq3, std::abs(r.eq3));
        m.eq4 = std::max(m.eq4, std::abs(r.eq4));
    }
    return m;
}

IndicialData indicial_roots(Equation eq, const ModelParams& m) {
    if (!m.dirichlet_ok()) throw std::domain_error("indicial_roots: requires 2-n+2p < a < 1");
    const double a = m.a, h = (3.0 - a) / 2.0;
    const double S = std::sqrt(h * h + (m.n - 2.0 * m.p + a - 2.0));
    IndicialData d;
    d.eq = eq;
    switch (eq) {
        case Equation::I: d.roots = {1.0, 2.0 - a}; break;
        case Equation::IV: d.roots = {h - S, h + S}; break;
        case Equation::II_III: d.roots = {h - S, 1.0, 2.0 - a, h + S}; break;
    }
    std::sort(d.roots.begin(), d.roots.end());
    for (std::size_t i = 1; i < d.roots.size(); ++i)
        if (d.roots[i] - d.roots[i - 1] < 1e-12) d.distinct = false;
    return d;
}

HypProfile eq1_mu1_branch(const ModelParams& m) {
    // alpha = 1/2, beta = (2-a)/2, gamma = 1/2
    const double a = m.a;
    if (std::abs((1.0 + a) / 2.0 - std::nearbyint((1.0 + a) / 2.0)) < 1e-14 && (1.0 + a) / 2.0 <= 0.0)
        throw std::domain_error("eq1_mu1_branch: degenerate parameters");
    return {{HypTerm{1.0, -1.0, -2, 0.5, 1.0, (1.0 + a) / 2.0}}};
}

HypProfile eq4_mu2_branch_right(const ModelParams& m) {
    const auto r = indicial_roots(Equation::IV, m).roots;
    const double al = r[0] / 2.0, be = r[1] / 2.0, ga = 0.5;
    return {{HypTerm{1.0, -2.0 * be, -2, be, 1.0 + be - ga, 1.0 + be - al}}};
}

HypProfile eq4_mu2_branch_global(const ModelParams& m) {
    const auto r = indicial_roots(Equation::IV, m).roots;
    const double mu1 = r[0], mu2 = r[1];
    const double g = gamma((mu2 - mu1 + 2.0) / 2.0);
    const double A = gamma(0.5) * g * rgamma((mu2 + 1.0) / 2.0) * rgamma((2.0 - mu1) / 2.0);
    const double B = gamma(-0.5) * g * rgamma(mu2 / 2.0) * rgamma((1.0 - mu1) / 2.0);
    return {{HypTerm{A, 0.0, 2, mu1 / 2.0, mu2 / 2.0, 0.5},
             HypTerm{B, 1.0, 2, (mu1 + 1.0) / 2.0, (mu2 + 1.0) / 2.0, 1.5}}};
}

double Mu4Branch::connection(double z) const {
    return coef_regular * hyp2f1(alpha, beta, gamma, -z * z) +
           coef_singular / z * hyp2f1(1.0 + alpha - gamma, 1.0 + beta - gamma, 2.0 - gamma, -z * z);
}

Mu4Branch mu4_branch(const ModelParams& m) {
    if (!m.dirichlet_ok()) throw std::domain_error("mu4_branch: requires 2-n+2p < a < 1");
    const double a = m.a, h = (3.0 - a) / 2.0;
    const double S = std::sqrt(h * h + (m.n - 2.0 * m.p + a - 2.0));
    Mu4Branch b;
    b.alpha = 0.5 * ((7.0 - a) / 2.0 + S);
    b.beta = 0.5 * ((7.0 - a) / 2.0 - S);
    b.gamma = 1.5;
    const double g = gamma(1.0 + b.alpha - b.beta);
    b.coef_regular = gamma(1.0 - b.gamma) * g * rgamma(1.0 + b.alpha - b.gamma) * rgamma(1.0 - b.beta);
    b.coef_singular = gamma(b.gamma - 1.0) * g * rgamma(b.alpha) * rgamma(b.gamma - b.beta);
    b.phi_right = {{HypTerm{1.0, -2.0 * b.alpha, -2, b.alpha, 1.0 + b.alpha - b.gamma, 1.0 + b.alpha - b.beta}}};
    return b;
}

TailFit admissibility(const std::function<double(double)>& v, double a, double zmax, int side, int samples) {
    if (samples < 3) throw std::invalid_argument("admissibility: need at least 3 samples");
    std::vector<double> lx(samples), ly(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = std::log(zmax / 4.0) + std::log(4.0) * i / (samples - 1);
        const double z = side >= 0 ? std::exp(t) : -std::exp(t);
        const double val = std::abs(v(z));
        if (!(val > 0.0) || !std::isfinite(val)) throw std::runtime_error("admissibility: profile vanishes or overflows");
        lx[i] = t;
        ly[i] = std::log(val);
    }
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < samples; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= samples;
    my /= samples;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < samples; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    TailFit f;
    f.slope = sxy / sxx;
    for (int i = 0; i < samples; ++i)
        f.max_dev = std::max(f.max_dev, std::abs(ly[i] - (my + f.slope * (lx[i] - mx))));
    if (f.max_dev > 0.05) throw std::runtime_error("admissibility: tail is not a power law");
    f.integrand_exponent = 2.0 - a + 2.0 * f.slope;
    f.admissible = f.integrand_exponent < -1.0;
    return f;
}

NormalizationIntegrals normalization_integrals(const ModelParams& m) {
    const ProfileSet s = ProfileSet::closed_form(m);
    // z = tan(theta): c z^k (1+z^2)^e dz = c sin^k cos^{-k-2e-2} dtheta, with cos taken
    // from the endpoint gap so the algebraic tails become accurate endpoint singularities
    const Rule1D r = tanh_sinh(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi, 1.0 / 32, 6.2);
    auto integrate = [&](const PowProfile& v) {
        std::vector<double> t(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double c = std::sin(r.gap[i]), sn = std::sin(r.x[i]);
            double sum = 0.0;
            for (const auto& [ke, coef] : v.terms())
                sum += coef * std::pow(sn, ke.first) * std::pow(c, -ke.first - 2.0 * ke.second - 2.0);
            t[i] = r.w[i] * sum;
        }
        return pairwise_sum(t);
    };
    return {integrate(s.v1), integrate(s.v2), integrate(s.v3)};
}

Multivector embed(const Multivector& w, int n) {
    if (w.dim() > n) throw std::invalid_argument("embed: target dimension too small");
    Multivector out(n, w.degree());
    for (const auto& [b, c] : w.coeffs()) out.add(b, c);
    return out;
}

namespace {

struct Assembled {
    Multivector A, B, C;  // f_I, xihat' ^ f_II, e_n ^ f_II in Lambda^p C^n
    std::vector<double> xh;
    double scale = 0.0;   // sqrt(2 pi) / |xi'|
};

Assembled assemble(const ModelParams& m, const std::vector<double>& xi_prime, const std::vector<cplx>& fhat) {
    const int n = m.n;
    if (static_cast<int>(xi_prime.size()) != n - 1) throw std::invalid_argument("assembled_v: xi' has wrong size");
    double k = 0.0;
    for (double v : xi_prime) k += v * v;
    k = std::sqrt(k);
    if (k == 0.0) throw std::domain_error("assembled_v: xi' = 0");
    Assembled s;
    s.xh.assign(n, 0.0);
    std::vector<double> xh1(n - 1);
    for (int j = 0; j < n - 1; ++j) s.xh[j] = xh1[j] = xi_prime[j] / k;
    const Multivector F = Multivector::from_dense(n - 1, m.p, fhat);
    const Multivector f2 = iota(xh1, F);
    const Multivector f1 = F - eps(xh1, f2);
    s.A = embed(f1, n);
    s.B = embed(eps(xh1, f2), n);
    s.C = eps_e(n, embed(f2, n));
    s.scale = std::sqrt(2.0 * std::numbers::pi) / k;
    return s;
}

}  // namespace

std::vector<cplx> assembled_v(const ModelParams& m, const std::vector<double>& xi_prime,
                              const std::vector<cplx>& fhat, double z) {
    const ProfileSet ps = ProfileSet::closed_form(m);
    const Assembled s = assemble(m, xi_prime, fhat);
    const Multivector v = cplx(s.scale) * (cplx(ps.v1(z)) * s.A + cplx(ps.v2(z)) * s.B + cplx(ps.v3(z)) * s.C);
    std::vector<cplx> out = v.to_dense();
    out.resize(basis_blades(m.n, m.p).size());
    return Multivector::from_dense(m.n, m.p, out).to_dense();
}

std::pair<double, double> assembled_residual(const ModelParams& m, const std::vector<double>& xi_prime,
                                             const std::vector<cplx>& fhat, double z) {
    const int n = m.n, p = m.p;
    const double a = m.a;
    const ProfileSet ps = ProfileSet::closed_form(m);
    const Assembled s = assemble(m, xi_prime, fhat);
    auto combo = [&](const PowProfile& q1, const PowProfile& q2, const PowProfile& q3) {
        return cplx(s.scale) * (cplx(q1(z)) * s.A + cplx(q2(z)) * s.B + cplx(q3(z)) * s.C);
    };
    const Derivs d1(ps.v1), d2(ps.v2), d3(ps.v3);
    const Multivector v = combo(d1.v, d2.v, d3.v);
    const Multivector v1 = combo(d1.d1, d2.d1, d3.d1);
    const Multivector v2 = combo(d1.d2, d2.d2, d3.d2);
    const Multivector t1 = cplx(1.0 + z * z) * v2;
    const Multivector t2 = cplx((a - 4.0) * z) * v1;
    const Multivector t3 = cplx(2.0) * (iota_e(n, eps(s.xh, v1)) + eps_e(n, iota(s.xh, v1)));
    const Multivector t4 = cplx(a - 2.0) * v;
    const Multivector t5 = cplx(double(n - 2 * p)) * eps_e(n, iota_e(n, v));
    const Multivector r = t1 - t2 - t3 - t4 - t5;
    const double scale = std::max({t1.max_abs(), t2.max_abs(), t3.max_abs(), t4.max_abs(), t5.max_abs()});
    return {r.max_abs(), scale};
}

}  // namespace bgx
