#include "bgx/sobolev.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "bgx/quadrature.hpp"
#include "bgx/special.hpp"

namespace bgx {

namespace {

constexpr int kMaxBlades = 256;

double envelope_radius(const PolyGaussField& uh, double scale) {
    double shift = 0.0;
    for (const cplx& b : uh.beta()) shift += b.real() * b.real();
    return scale / std::sqrt(uh.sigma()) + std::sqrt(shift) / uh.sigma();
}

cplx dot(const cplx* a, const cplx* b, int nb) {
    cplx s = 0.0;
    for (int i = 0; i < nb; ++i) s += a[i] * std::conj(b[i]);
    return s;
}

double xi_norm(const double* xi, int d) {
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) r2 += xi[k] * xi[k];
    return std::sqrt(r2);
}

}  // namespace

bool NormSpec::valid() const { return d >= 1 && p >= 0 && p <= d && std::abs(lambda) < 0.5 * d - p; }

void InvariantSymbol::operator()(const double* xi, const cplx* in, cplx* out) const {
    const double r = xi_norm(xi, spec.d);
    const double h = 0.5 * spec.d - spec.p;
    ops.apply(xi, h - spec.lambda, h + spec.lambda, in, out);
    const double w = std::pow(r, -2.0 * spec.lambda - 2.0);
    for (int b = 0; b < ops.size(); ++b) out[b] *= w;
}

cplx spectral_form(const PolyGaussField& u, const PolyGaussField& v, const Multiplier& m, Exec ex,
                   const NormQuadOptions& opt) {
    if (u.dim() != v.dim() || u.degree() != v.degree())
        throw std::invalid_argument("spectral_form: operands differ in shape");
    const int d = u.dim();
    const bool same = &u == &v;
    const PolyGaussField uh = fourier(u), vh = same ? PolyGaussField() : fourier(v);
    const double R = same ? envelope_radius(uh, opt.radius_scale)
                          : std::max(envelope_radius(uh, opt.radius_scale), envelope_radius(vh, opt.radius_scale));
    int m_sph = opt.sphere_m;
    if (m_sph <= 0) m_sph = d <= 2 ? 48 : (d == 3 ? 32 : 20);
    const NodeSet nodes = polar_nodes(d, R, m_sph, opt.ts_step);
    const PolyGaussField::Evaluator eu(uh), ev(same ? uh : vh);
    const int nb = eu.size();
    if (nb > kMaxBlades) throw std::invalid_argument("spectral_form: too many blades");
    std::vector<cplx> terms(nodes.size());
    for_each_index(ex, nodes.size(), [&](std::size_t i) {
        std::array<cplx, kMaxBlades> a, b, c;
        eu(nodes.point(i), a.data());
        if (!same) ev(nodes.point(i), b.data());
        m(nodes.point(i), a.data(), c.data());
        terms[i] = nodes.w[i] * dot(c.data(), same ? a.data() : b.data(), nb);
    });
    return pairwise_sum(terms);
}

cplx spectral_form(const GridField& u, const GridField& v, const Multiplier& m, Exec ex) {
    const GridField uh = u.domain() == Domain::physical ? fourier(u) : u;
    const GridField vh = v.domain() == Domain::physical ? fourier(v) : v;
    if (!uh.compatible(vh)) throw std::invalid_argument("spectral_form: incompatible grids");
    const int d = uh.dim(), nb = uh.blades(), N = uh.points_per_axis();
    if (nb > kMaxBlades) throw std::invalid_argument("spectral_form: too many blades");
    std::size_t zero = 0;
    for (int k = 0; k < d; ++k) zero = zero * N + N / 2;
    std::vector<cplx> terms(uh.points());
    for_each_index(ex, uh.points(), [&](std::size_t pt) {
        if (pt == zero) return;
        double xi[8];
        uh.coords(pt, xi);
        std::array<cplx, kMaxBlades> c;
        m(xi, uh.at(pt), c.data());
        terms[pt] = dot(c.data(), vh.at(pt), nb);
    });
    return pairwise_sum(terms) * std::pow(uh.dual_spacing(), d);
}

namespace {

void check_spec(const NormSpec& spec, int d, int p) {
    if (!spec.valid()) throw std::domain_error("NormSpec: requires |lambda| < d/2 - p");
    if (spec.d != d || spec.p != p) throw std::invalid_argument("NormSpec: does not match the field");
}

Multiplier plain_weight(const NormSpec& spec, int nb) {
    const int d = spec.d;
    const double e = -2.0 * spec.lambda;
    return [=](const double* xi, const cplx* in, cplx* out) {
        const double w = std::pow(xi_norm(xi, d), e);
        for (int b = 0; b < nb; ++b) out[b] = w * in[b];
    };
}

}  // namespace

double invariant_norm_sq(const PolyGaussField& u, const NormSpec& spec, Exec ex,
                         const NormQuadOptions& opt) {
    check_spec(spec, u.dim(), u.degree());
    const InvariantSymbol sym(spec);
    return spectral_form(u, u, [&](const double* xi, const cplx* in, cplx* out) { sym(xi, in, out); },
                         ex, opt)
        .real();
}

double invariant_norm_sq(const GridField& u, const NormSpec& spec, Exec ex) {
    check_spec(spec, u.dim(), u.degree());
    const InvariantSymbol sym(spec);
    return spectral_form(u, u, [&](const double* xi, const cplx* in, cplx* out) { sym(xi, in, out); }, ex)
        .real();
}

cplx invariant_inner(const PolyGaussField& u, const PolyGaussField& v, const NormSpec& spec, Exec ex,
                     const NormQuadOptions& opt) {
    check_spec(spec, u.dim(), u.degree());
    const InvariantSymbol sym(spec);
    return spectral_form(u, v, [&](const double* xi, const cplx* in, cplx* out) { sym(xi, in, out); },
                         ex, opt);
}

double plain_norm_sq(const PolyGaussField& u, const NormSpec& spec, Exec ex, const NormQuadOptions& opt) {
    const int nb = static_cast<int>(basis_blades(u.dim(), u.degree()).size());
    return spectral_form(u, u, plain_weight(spec, nb), ex, opt).real();
}

double plain_norm_sq(const GridField& u, const NormSpec& spec, Exec ex) {
    return spectral_form(u, u, plain_weight(spec, u.blades()), ex).real();
}

bool Sandwich::holds(double rel_tol) const {
    const double slack = rel_tol * std::abs(value);
    return lower <= value + slack && value <= upper + slack;
}

Sandwich sandwich(const PolyGaussField& u, const NormSpec& spec, Exec ex) {
    check_spec(spec, u.dim(), u.degree());
    // both norms from one pass over the nodes
    const InvariantSymbol sym(spec);
    const int nb = sym.ops.size();
    const PolyGaussField uh = fourier(u);
    const NormQuadOptions opt;
    const int d = spec.d;
    const NodeSet nodes = polar_nodes(d, envelope_radius(uh, opt.radius_scale), d <= 2 ? 48 : (d == 3 ? 32 : 20),
                                      opt.ts_step);
    const PolyGaussField::Evaluator eu(uh);
    std::vector<double> t_inv(nodes.size()), t_pl(nodes.size());
    for_each_index(ex, nodes.size(), [&](std::size_t i) {
        std::array<cplx, kMaxBlades> a, c;
        eu(nodes.point(i), a.data());
        sym(nodes.point(i), a.data(), c.data());
        t_inv[i] = nodes.w[i] * dot(c.data(), a.data(), nb).real();
        t_pl[i] = nodes.w[i] * std::pow(xi_norm(nodes.point(i), d), -2.0 * spec.lambda) *
                  dot(a.data(), a.data(), nb).real();
    });
    const double inv = pairwise_sum(t_inv), pl = pairwise_sum(t_pl);
    const double h = 0.5 * spec.d - spec.p, l = std::abs(spec.lambda);
    return {(h - l) * pl, inv, (h + l) * pl};
}

double trace_constant(double lambda) {
    if (!(lambda < -0.5)) throw std::domain_error("trace_constant: requires lambda < -1/2");
    // (a - 2)/2 = lambda
    return beta_profile_integrals(2.0 * lambda + 2.0, 3, 0).first;
}

TraceBound trace_norm_bound(const PolyGaussField& u, double lambda, Exec ex) {
    TraceBound t;
    t.cprime = trace_constant(lambda);
    const PolyGaussField r = restrict_to_boundary(u);
    t.lhs = plain_norm_sq(r, {r.dim(), r.degree(), lambda + 0.5}, ex);
    t.rhs = t.cprime * plain_norm_sq(u, {u.dim(), u.degree(), lambda}, ex);
    return t;
}

TangentialParts tangential_split(const Multivector& fhat, const std::vector<double>& xi) {
    double r = 0.0;
    for (double v : xi) r += v * v;
    r = std::sqrt(r);
    if (r == 0.0) throw std::domain_error("tangential_split: xi = 0");
    std::vector<double> u(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k) u[k] = xi[k] / r;
    TangentialParts t;
    t.f2 = iota(u, fhat);
    t.f1 = fhat - eps(u, t.f2);
    return t;
}

}  // namespace bgx
