#include "bgx/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

#include "bgx/parallel.hpp"
#include "bgx/quadrature.hpp"

namespace bgx {

void WeightedField::check(const WeightedField& o) const {
    if (beta_ != o.beta_) throw std::invalid_argument("WeightedField: weights differ");
}

Multivector WeightedField::eval(const std::vector<double>& x) const {
    const int n = dim();
    if (!(x.at(n - 1) > 0.0)) throw std::invalid_argument("WeightedField: x_n > 0 required");
    Multivector v = g_.eval(x);
    v *= std::pow(x[n - 1], beta_);
    return v;
}

WeightedField& WeightedField::operator+=(const WeightedField& o) {
    check(o);
    g_ += o.g_;
    return *this;
}

WeightedField& WeightedField::operator-=(const WeightedField& o) {
    check(o);
    g_ -= o.g_;
    return *this;
}

WeightedField& WeightedField::operator*=(cplx s) {
    g_ *= s;
    return *this;
}

WeightedField operator+(WeightedField a, const WeightedField& b) { return a += b; }
WeightedField operator-(WeightedField a, const WeightedField& b) { return a -= b; }
WeightedField operator*(cplx s, WeightedField a) { return a *= s; }

WeightedField zero_like(const WeightedField& u, int q) {
    return WeightedField(u.beta(), same_envelope(u.base(), q));
}

WeightedField derivative(const WeightedField& u, int j) {
    PolyGaussField g = derivative(u.base(), j);
    const int n = u.dim();
    if (j == n && u.beta() != 0.0) {
        PolyGaussField w = same_envelope(u.base(), u.degree());
        for (const auto& [b, q] : u.base().components()) w.add(b, q.mul_var(n, -1));
        g += cplx(u.beta()) * w;
    }
    return WeightedField(u.beta(), std::move(g));
}

WeightedField coordinate_mul(const WeightedField& u, int j) {
    return WeightedField(u.beta(), coordinate_mul(u.base(), j));
}

WeightedField apply_linear(const WeightedField& u, int q, const LinOp& op) {
    return WeightedField(u.beta(), apply_linear(u.base(), q, op));
}

double hyp_identity_residual(const PolyGaussField& u) {
    PolyGaussField a = hyp_laplacian_composed(u);
    const PolyGaussField b = hyp_laplacian(u);
    const double scale = std::max({a.max_coeff(), b.max_coeff(), u.max_coeff()});
    a -= b;
    return scale > 0.0 ? a.max_coeff() / scale : 0.0;
}

double conjugation_beta(int n, int p, double a) { return (a + n - 2.0 * p - 2.0) / 2.0; }

double conjugation_constant(int n, int p, double a) {
    return 0.25 * (a + n - 2.0 * p - 2.0) * (a - n + 2.0 * p);
}

double conjugation_residual(const PolyGaussField& u, double a, const std::vector<double>& xs) {
    const int n = u.dim(), p = u.degree();
    const double beta = conjugation_beta(n, p, a);
    const WeightedField lhs = hyp_laplacian(WeightedField(beta, u));
    const PolyGaussField rhs = delta_ap(u, a) + cplx(conjugation_constant(n, p, a)) * u;
    // both sides carry x_n^beta, which cancels from the ratio
    const PolyGaussField::Evaluator el(lhs.base()), er(rhs);
    std::vector<cplx> l(el.size()), r(er.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + n <= xs.size(); i += n) {
        const double xn = xs[i + n - 1];
        if (!(xn > 0.0)) throw std::invalid_argument("conjugation_residual: x_n > 0 required");
        const double w = std::pow(xn, beta);
        el(xs.data() + i, l.data());
        er(xs.data() + i, r.data());
        for (std::size_t k = 0; k < l.size(); ++k) {
            num = std::max(num, w * std::abs(l[k] - r[k]));
            den = std::max(den, w * std::abs(r[k]));
        }
    }
    return den > 0.0 ? num / den : num;
}

AdjointnessCheck codiff_adjointness(const PolyGaussField& alpha, const PolyGaussField& beta, double L,
                                    double h, int panels, int order) {
    const int n = alpha.dim(), p = beta.degree();
    if (beta.dim() != n || alpha.degree() != p - 1)
        throw std::invalid_argument("codiff_adjointness: alpha must have degree deg(beta) - 1");
    const PolyGaussField da = d(alpha), ds = hyp_codiff(beta);
    const PolyGaussField::Evaluator e_da(da), e_b(beta), e_a(alpha), e_ds(ds);
    const Rule1D tang = composite_gl(panels, order, -L, L);
    const Rule1D norm = composite_gl(panels, order, h, L);
    std::size_t count = norm.size();
    for (int k = 0; k < n - 1; ++k) count *= tang.size();
    std::vector<cplx> sl(norm.size()), sr(norm.size());
    for_each_index(Exec::parallel, norm.size(), [&](std::size_t i) {
        std::vector<cplx> va(e_da.size()), vb(e_b.size()), wa(e_a.size()), wb(e_ds.size());
        std::vector<cplx> accl, accr;
        const std::size_t inner = count / norm.size();
        accl.reserve(inner);
        accr.reserve(inner);
        double x[8];
        x[n - 1] = norm.x[i];
        const double wn = norm.w[i] * std::pow(norm.x[i], 2.0 * p - n);
        // weight on (p-1)-forms is x_n^{2(p-1)-n}
        const double wn1 = norm.w[i] * std::pow(norm.x[i], 2.0 * (p - 1) - n);
        for (std::size_t c = 0; c < inner; ++c) {
            std::size_t r = c;
            double wt = 1.0;
            for (int k = 0; k < n - 1; ++k) {
                const std::size_t idx = r % tang.size();
                r /= tang.size();
                x[k] = tang.x[idx];
                wt *= tang.w[idx];
            }
            e_da(x, va.data());
            e_b(x, vb.data());
            e_a(x, wa.data());
            e_ds(x, wb.data());
            cplx l = 0.0, rr = 0.0;
            for (std::size_t b = 0; b < va.size(); ++b) l += va[b] * std::conj(vb[b]);
            for (std::size_t b = 0; b < wa.size(); ++b) rr += wa[b] * std::conj(wb[b]);
            accl.push_back(wt * wn * l);
            accr.push_back(wt * wn1 * rr);
        }
        sl[i] = pairwise_sum(accl);
        sr[i] = pairwise_sum(accr);
    });
    AdjointnessCheck out;
    out.lhs = pairwise_sum(sl);
    out.rhs = pairwise_sum(sr);
    out.defect = std::abs(out.lhs - out.rhs) / std::abs(out.lhs);
    return out;
}

}  // namespace bgx
