#include "bgx/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bgx {

Rule1D gauss_legendre(int m, double a, double b) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: m < 1");
    Rule1D r;
    r.x.resize(m);
    r.w.resize(m);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= m; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= m; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = m * (z * p0 - p1) / (z * z - 1.0);
        }
        const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[i] = mid - half * z;
        r.x[m - 1 - i] = mid + half * z;
        r.w[i] = r.w[m - 1 - i] = half * wt;
    }
    return r;
}

Rule1D composite_gl(int panels, int m, double a, double b) {
    Rule1D r;
    const double step = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const Rule1D g = gauss_legendre(m, a + k * step, a + (k + 1) * step);
        r.x.insert(r.x.end(), g.x.begin(), g.x.end());
        r.w.insert(r.w.end(), g.w.begin(), g.w.end());
    }
    return r;
}

Rule1D tanh_sinh(double a, double b, double h, double tmax) {
    Rule1D r;
    const double half = 0.5 * (b - a);
    const double hp = 0.5 * std::numbers::pi;
    const int kmax = static_cast<int>(std::ceil(tmax / h));
    for (int k = -kmax; k <= kmax; ++k) {
        const double t = k * h;
        const double u = hp * std::sinh(t);
        // distance of the node from the nearer endpoint, in units of half, without cancellation
        const double comp = 2.0 / (1.0 + std::exp(2.0 * std::abs(u)));
        const double ch = std::cosh(u);
        const double wt = h * hp * std::cosh(t) / (ch * ch);
        if (comp < 1e-300 || wt < 1e-300) continue;
        const double x = t < 0 ? a + half * comp : b - half * comp;
        r.x.push_back(x);
        r.w.push_back(half * wt);
        r.gap.push_back(half * comp);
    }
    return r;
}

double sphere_area(int d) {
    return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

namespace {

void sphere_recurse(int d, int m, std::vector<double>& pts, std::vector<double>& w) {
    if (d == 1) {
        pts = {1.0, -1.0};
        w = {1.0, 1.0};
        return;
    }
    if (d == 2) {
        const int k = 2 * m;
        pts.resize(2 * k);
        w.assign(k, 2.0 * std::numbers::pi / k);
        for (int i = 0; i < k; ++i) {
            const double t = 2.0 * std::numbers::pi * (i + 0.5) / k;
            pts[2 * i] = std::cos(t);
            pts[2 * i + 1] = std::sin(t);
        }
        return;
    }
    std::vector<double> sp, sw;
    sphere_recurse(d - 1, m, sp, sw);
    const std::size_t cnt = sw.size();
    // first coordinate cos(theta); d = 3 integrates in cos(theta) directly
    Rule1D pol;
    std::vector<double> cth, sth;
    if (d == 3) {
        pol = gauss_legendre(m, -1.0, 1.0);
        for (double c : pol.x) {
            cth.push_back(c);
            sth.push_back(std::sqrt(1.0 - c * c));
        }
    } else {
        pol = gauss_legendre(m, 0.0, std::numbers::pi);
        for (std::size_t i = 0; i < pol.size(); ++i) {
            cth.push_back(std::cos(pol.x[i]));
            sth.push_back(std::sin(pol.x[i]));
            pol.w[i] *= std::pow(sth.back(), d - 2);
        }
    }
    pts.clear();
    w.clear();
    for (std::size_t i = 0; i < pol.size(); ++i) {
        for (std::size_t j = 0; j < cnt; ++j) {
            pts.push_back(cth[i]);
            for (int k = 0; k < d - 1; ++k) pts.push_back(sth[i] * sp[j * (d - 1) + k]);
            w.push_back(pol.w[i] * sw[j]);
        }
    }
}

}  // namespace

SphereRule sphere_rule(int d, int m) {
    if (d < 1) throw std::invalid_argument("sphere_rule: d < 1");
    SphereRule s;
    s.d = d;
    sphere_recurse(d, m, s.pts, s.w);
    return s;
}

NodeSet polar_nodes(int d, const Rule1D& radial, const SphereRule& sphere) {
    NodeSet ns;
    ns.d = d;
    ns.pts.reserve(radial.size() * sphere.size() * d);
    ns.w.reserve(radial.size() * sphere.size());
    for (std::size_t i = 0; i < radial.size(); ++i) {
        const double r = radial.x[i];
        const double wr = radial.w[i] * std::pow(r, d - 1);
        for (std::size_t j = 0; j < sphere.size(); ++j) {
            const double* th = sphere.point(j);
            for (int k = 0; k < d; ++k) ns.pts.push_back(r * th[k]);
            ns.w.push_back(wr * sphere.w[j]);
        }
    }
    return ns;
}

NodeSet polar_nodes(int d, double R, int m, double h) {
    return polar_nodes(d, tanh_sinh(0.0, R, h), sphere_rule(d, m));
}

}  // namespace bgx
