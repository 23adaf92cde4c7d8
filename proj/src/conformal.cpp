#include "bgx/conformal.hpp"

#include <cmath>
#include <stdexcept>

#include "bgx/formops.hpp"

namespace bgx {

GroupElement GroupElement::translation(std::vector<double> b) {
    GroupElement g;
    g.kind = Kind::translation;
    g.b = std::move(b);
    return g;
}

GroupElement GroupElement::dilation(double t) {
    GroupElement g;
    g.kind = Kind::dilation;
    g.t = t;
    return g;
}

GroupElement GroupElement::rotation(std::vector<double> m, int eps) {
    const std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(double(m.size()))));
    if (n * n != m.size()) throw std::invalid_argument("rotation: matrix must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += m[k * n + i] * m[k * n + j];
            if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-12)
                throw std::invalid_argument("rotation: matrix is not orthogonal");
        }
    if (eps != 1 && eps != -1) throw std::invalid_argument("rotation: eps must be +-1");
    GroupElement g;
    g.kind = Kind::rotation;
    g.m = std::move(m);
    g.eps = eps;
    return g;
}

GroupElement GroupElement::inversion() {
    GroupElement g;
    g.kind = Kind::inversion;
    return g;
}

namespace {

double det_small(std::vector<double> a, int k) {
    double det = 1.0;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c])) piv = r;
        if (a[piv * k + c] == 0.0) return 0.0;
        if (piv != c) {
            for (int j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
            det = -det;
        }
        det *= a[c * k + c];
        for (int r = c + 1; r < k; ++r) {
            const double f = a[r * k + c] / a[c * k + c];
            for (int j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
        }
    }
    return det;
}

void check_field(const PolyGaussField& u, const RepParams& r) {
    if (u.dim() != r.n || u.degree() != r.p)
        throw std::invalid_argument("act: field shape does not match the representation");
}

}  // namespace

DenseOp exterior_power(const std::vector<double>& m, int n, int p) {
    if (static_cast<int>(m.size()) != n * n) throw std::invalid_argument("exterior_power: bad matrix");
    const auto blades = basis_blades(n, p);
    DenseOp d;
    d.n = n;
    d.p = d.q = p;
    d.rows = d.cols = static_cast<int>(blades.size());
    d.m.assign(static_cast<std::size_t>(d.rows) * d.cols, 0.0);
    std::vector<double> minor(static_cast<std::size_t>(p) * p);
    for (int r = 0; r < d.rows; ++r) {
        const auto ri = blades[r].indices();
        for (int c = 0; c < d.cols; ++c) {
            const auto ci = blades[c].indices();
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) minor[i * p + j] = m[(ri[i] - 1) * n + (ci[j] - 1)];
            d.at(r, c) = p == 0 ? 1.0 : det_small(minor, p);
        }
    }
    return d;
}

std::vector<double> random_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<double> q(static_cast<std::size_t>(n) * n);
    // modified Gram-Schmidt on the columns
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) q[r * n + c] = g(rng);
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < c; ++k) {
                double dot = 0.0;
                for (int r = 0; r < n; ++r) dot += q[r * n + k] * q[r * n + c];
                for (int r = 0; r < n; ++r) q[r * n + c] -= dot * q[r * n + k];
            }
        double nn = 0.0;
        for (int r = 0; r < n; ++r) nn += q[r * n + c] * q[r * n + c];
        nn = std::sqrt(nn);
        for (int r = 0; r < n; ++r) q[r * n + c] /= nn;
    }
    return q;
}

PolyGaussField act(const GroupElement& g, const PolyGaussField& u, const RepParams& r) {
    check_field(u, r);
    const int n = r.n;
    std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0), b(n, 0.0);
    switch (g.kind) {
    case GroupElement::Kind::translation:
        if (static_cast<int>(g.b.size()) != n) throw std::invalid_argument("act: translation size");
        for (int i = 0; i < n; ++i) {
            A[i * n + i] = 1.0;
            b[i] = -g.b[i];
        }
        return pullback_similarity(u, A, b);
    case GroupElement::Kind::dilation: {
        for (int i = 0; i < n; ++i) A[i * n + i] = std::exp(g.t);
        PolyGaussField out = pullback_similarity(u, A, b);
        out *= std::exp((r.lambda + r.rho()) * g.t);
        return out;
    }
    case GroupElement::Kind::rotation: {
        if (static_cast<int>(g.m.size()) != n * n) throw std::invalid_argument("act: rotation size");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A[i * n + j] = g.eps * g.m[j * n + i];
        const PolyGaussField pulled = pullback_similarity(u, A, b);
        const DenseOp L = exterior_power(g.m, n, r.p);
        return apply_linear(pulled, r.p, [&L, n, p = r.p](const Multivector& w) {
            const auto in = w.to_dense();
            std::vector<cplx> out(in.size());
            L.apply(in.data(), out.data());
            return Multivector::from_dense(n, p, out);
        });
    }
    case GroupElement::Kind::inversion:
        throw std::invalid_argument("act: the inversion does not preserve PolyGauss fields");
    }
    return u;
}

Sampler act(const GroupElement& g, const Sampler& u, const RepParams& r) {
    const int n = r.n, p = r.p;
    const int nb = static_cast<int>(basis_blades(n, p).size());
    const double w = r.lambda + r.rho();
    switch (g.kind) {
    case GroupElement::Kind::translation:
        if (static_cast<int>(g.b.size()) != n) throw std::invalid_argument("act: translation size");
        return [u, b = g.b, n](const double* x, cplx* out) {
            double y[8];
            for (int i = 0; i < n; ++i) y[i] = x[i] - b[i];
            u(y, out);
        };
    case GroupElement::Kind::dilation:
        return [u, n, nb, e = std::exp(g.t), s = std::exp(w * g.t)](const double* x, cplx* out) {
            double y[8];
            for (int i = 0; i < n; ++i) y[i] = e * x[i];
            u(y, out);
            for (int i = 0; i < nb; ++i) out[i] *= s;
        };
    case GroupElement::Kind::rotation: {
        if (static_cast<int>(g.m.size()) != n * n) throw std::invalid_argument("act: rotation size");
        const DenseOp L = exterior_power(g.m, n, p);
        return [u, L, m = g.m, eps = g.eps, n, nb](const double* x, cplx* out) {
            double y[8];
            for (int i = 0; i < n; ++i) {
                y[i] = 0.0;
                for (int j = 0; j < n; ++j) y[i] += eps * m[j * n + i] * x[j];
            }
            std::vector<cplx> tmp(nb);
            u(y, tmp.data());
            L.apply(tmp.data(), out);
        };
    }
    case GroupElement::Kind::inversion:
        return [u, n, p, nb, w](const double* x, cplx* out) {
            double r2 = 0.0;
            for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
            if (r2 == 0.0) {
                std::fill(out, out + nb, cplx{});
                return;
            }
            double y[8];
            for (int i = 0; i < n; ++i) y[i] = -x[i] / r2;
            std::vector<cplx> tmp(nb);
            u(y, tmp.data());
            const double s = std::pow(r2, -w);
            if (p == 0 || p == n) {
                // Lambda^0 is trivial and Lambda^n is det = -1 for a reflection
                const double sg = p == 0 ? s : -s;
                for (int i = 0; i < nb; ++i) out[i] = sg * tmp[i];
                return;
            }
            std::vector<double> R(static_cast<std::size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) R[i * n + j] = (i == j ? 1.0 : 0.0) - 2.0 * x[i] * x[j] / r2;
            const DenseOp L = exterior_power(R, n, p);
            L.apply(tmp.data(), out);
            for (int i = 0; i < nb; ++i) out[i] *= s;
        };
    }
    return u;
}

GridField act(const GroupElement& g, const GridField& u, const RepParams& r, Exec ex) {
    if (u.domain() != Domain::physical) throw std::invalid_argument("act: physical grid expected");
    if (u.dim() != r.n || u.degree() != r.p)
        throw std::invalid_argument("act: field shape does not match the representation");
    const double L = u.half_width();
    const int n = r.n, nb = u.blades();
    const Sampler src = [&u, L, n, nb](const double* x, cplx* out) {
        for (int i = 0; i < n; ++i)
            if (!(x[i] >= -L && x[i] < L)) {
                std::fill(out, out + nb, cplx{});
                return;
            }
        interpolate(u, x, out);
    };
    return GridField::sample(act(g, src, r), n, r.p, L, u.points_per_axis(), ex);
}

double mass_fraction_within(const GridField& u, double r) {
    double inner = 0.0, total = 0.0;
    for (std::size_t pt = 0; pt < u.points(); ++pt) {
        double x[8], r2 = 0.0, v = 0.0;
        u.coords(pt, x);
        for (int i = 0; i < u.dim(); ++i) r2 += x[i] * x[i];
        for (int b = 0; b < u.blades(); ++b) v += std::norm(u.at(pt)[b]);
        total += v;
        if (r2 < r * r) inner += v;
    }
    return total > 0.0 ? inner / total : 0.0;
}

namespace {

PolyGaussField dxi(const PolyGaussField& u, int j, int k) {
    return apply_linear(u, u.degree(), [j, k](const Multivector& w) { return rot_gen_any(j, k, w); });
}

}  // namespace

PolyGaussField dpi(const Generator& g, const PolyGaussField& u, double lambda) {
    const int n = u.dim();
    const double lr = lambda + n / 2.0;
    auto check = [n](int j) {
        if (j < 1 || j > n) throw std::invalid_argument("dpi: generator index out of range");
    };
    switch (g.kind) {
    case Generator::Kind::H:
        return euler(u) + cplx(lr) * u;
    case Generator::Kind::Xbar:
        check(g.j);
        return cplx(-1.0) * derivative(u, g.j);
    case Generator::Kind::M:
        check(g.j);
        check(g.k);
        return coordinate_mul(derivative(u, g.k), g.j) - coordinate_mul(derivative(u, g.j), g.k) +
               dxi(u, g.j, g.k);
    case Generator::Kind::X: {
        check(g.j);
        const PolyGaussField dj = derivative(u, g.j);
        PolyGaussField out = same_envelope(u, u.degree());
        for (int i = 1; i <= n; ++i) {
            out -= coordinate_mul(coordinate_mul(dj, i), i);
            out -= cplx(2.0) * coordinate_mul(dxi(u, i, g.j), i);
        }
        out += cplx(2.0) * coordinate_mul(euler(u) + cplx(lr) * u, g.j);
        return out;
    }
    }
    return u;
}

PolyGaussField casimir_basis(const PolyGaussField& u, double lambda) {
    const int n = u.dim();
    const Generator H = Generator::h();
    const PolyGaussField hu = dpi(H, u, lambda);
    PolyGaussField out = dpi(H, hu, lambda) - cplx(double(n - 1)) * hu;
    for (int j = 1; j <= n - 1; ++j)
        for (int k = j + 1; k <= n - 1; ++k)
            out -= dpi(Generator::m(j, k), dpi(Generator::m(j, k), u, lambda), lambda);
    for (int j = 1; j <= n - 1; ++j)
        out += dpi(Generator::x(j), dpi(Generator::xbar(j), u, lambda), lambda);
    return out;
}

double casimir_constant(int n, int p, double lambda) {
    const double rho = n / 2.0;
    return (lambda + rho) * (lambda - rho + 1.0) + double(p) * (n - p - 1);
}

PolyGaussField casimir_closed(const PolyGaussField& u, double lambda) {
    return delta_ap(u, 2.0 * (lambda + 1.0)) + cplx(casimir_constant(u.dim(), u.degree(), lambda)) * u;
}

double relative_residual(const PolyGaussField& u, const PolyGaussField& v, const std::vector<double>& xs) {
    if (u.dim() != v.dim() || u.degree() != v.degree())
        throw std::invalid_argument("relative_residual: shape mismatch");
    const int n = u.dim();
    const PolyGaussField::Evaluator eu(u), ev(v);
    std::vector<cplx> a(eu.size()), b(ev.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + n <= xs.size(); i += n) {
        eu(xs.data() + i, a.data());
        ev(xs.data() + i, b.data());
        for (std::size_t k = 0; k < a.size(); ++k) {
            num = std::max(num, std::abs(a[k] - b[k]));
            den = std::max(den, std::abs(b[k]));
        }
    }
    return den > 0.0 ? num / den : num;
}

}  // namespace bgx
