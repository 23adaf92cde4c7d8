#pragma once

#include <vector>

#include "bgx/grid.hpp"
#include "bgx/multivec.hpp"
#include "bgx/parallel.hpp"
#include "bgx/polygauss.hpp"
#include "bgx/quadrature.hpp"

namespace bgx {

// Empty field of degree q shaped like u.
inline PolyGaussField zero_like(const PolyGaussField& u, int q) { return same_envelope(u, q); }
inline GridField zero_like(const GridField& u, int q) {
    return GridField(u.dim(), q, u.half_width(), u.points_per_axis(), u.domain());
}

// Sum over j = 1..m of op_j(d/dx_j u), with op_j = eps_{e_j} or -i_{e_j}.
template <class F>
F d_partial(const F& u, int m) {
    F out = zero_like(u, u.degree() + 1);
    for (int j = 1; j <= m; ++j)
        out += apply_linear(derivative(u, j), u.degree() + 1,
                            [j](const Multivector& w) { return eps_e(j, w); });
    return out;
}

template <class F>
F delta_partial(const F& u, int m) {
    F out = zero_like(u, u.degree() - 1);
    for (int j = 1; j <= m; ++j)
        out += apply_linear(derivative(u, j), u.degree() - 1,
                            [j](const Multivector& w) { return -iota_e(j, w); });
    return out;
}

template <class F>
F d(const F& u) {
    return d_partial(u, u.dim());
}
template <class F>
F delta(const F& u) {
    return delta_partial(u, u.dim());
}
// Tangential versions, summing over the first n-1 axes.
template <class F>
F d_prime(const F& u) {
    return d_partial(u, u.dim() - 1);
}
template <class F>
F delta_prime(const F& u) {
    return delta_partial(u, u.dim() - 1);
}

// Componentwise sum of second derivatives; equals -(d delta + delta d).
template <class F>
F laplacian(const F& u) {
    F out = zero_like(u, u.degree());
    for (int j = 1; j <= u.dim(); ++j) out += derivative(derivative(u, j), j);
    return out;
}

// x_n^2 Lap + a x_n d_n + 2 x_n (i_{e_n} d' - eps_{e_n} delta') - (n - 2p) eps_{e_n} i_{e_n}
template <class F>
F delta_ap(const F& u, double a) {
    const int n = u.dim(), p = u.degree();
    F out = coordinate_mul(coordinate_mul(laplacian(u), n), n);
    out += cplx(a) * coordinate_mul(derivative(u, n), n);
    F mixed = apply_linear(d_prime(u), p, [n](const Multivector& w) { return iota_e(n, w); });
    mixed -= apply_linear(delta_prime(u), p, [n](const Multivector& w) { return eps_e(n, w); });
    out += cplx(2.0) * coordinate_mul(mixed, n);
    out -= cplx(double(n - 2 * p)) *
           apply_linear(u, p, [n](const Multivector& w) { return eps_e(n, iota_e(n, w)); });
    return out;
}

// (delta d)^N and (d delta)^N applied literally, combined with the weights
// (dim/2 - p + N) and (dim/2 - p - N).
template <class F>
F bg_composition(const F& u, int N) {
    if (N < 1) throw std::invalid_argument("bg_composition: N >= 1 required");
    const double h = 0.5 * u.dim() - u.degree();
    F a = u, b = u;
    for (int k = 0; k < N; ++k) {
        a = delta(d(a));
        b = d(delta(b));
    }
    return cplx(h + N) * a + cplx(h - N) * b;
}

// Dense kernels for i_xi eps_xi and eps_xi i_xi on Lambda^p C^n.
class XiOps {
public:
    XiOps() = default;
    XiOps(int n, int p);
    int dim() const { return n_; }
    int degree() const { return p_; }
    int size() const { return nb_; }
    // out = c1 i_xi eps_xi in + c2 eps_xi i_xi in
    void apply(const double* xi, double c1, double c2, const cplx* in, cplx* out) const;

private:
    struct Entry {
        int target;
        int sign;
    };
    int n_ = 0, p_ = 0, nb_ = 0, nup_ = 0, ndn_ = 0;
    std::vector<Entry> up_;     // eps_{e_j} on Lambda^p, [b * n + j]
    std::vector<Entry> up_dn_;  // i_{e_j} on Lambda^{p+1}
    std::vector<Entry> dn_;     // i_{e_j} on Lambda^p
    std::vector<Entry> dn_up_;  // eps_{e_j} on Lambda^{p-1}
};

// |xi|^{2s-2} [ (d/2 - p + s) i_xi eps_xi + (d/2 - p - s) eps_xi i_xi ]; at s = N this
// is the symbol of D_{N,p} and at s = -lambda the symbol in the invariant norm.
struct BGSymbol {
    int d = 2, p = 0;
    double s = 0.5;
    XiOps ops;
    BGSymbol(int d_, int p_, double s_) : d(d_), p(p_), s(s_), ops(d_, p_) {}
    void operator()(const double* xi, const cplx* in, cplx* out) const;
};

// Constant in front of BGSymbol in the symbol of L_{s,p} on R^d:
// pi^{d/2} / (4^s Gamma(d/2 + s + 1)).
double fractional_bg_constant(int d, double s);

// Fourier-side D_{N,p}: transform, multiply by the polynomial symbol, transform back.
PolyGaussField bg_multiplier(const PolyGaussField& u, int N);
GridField bg_multiplier(const GridField& u, int N, Exec ex = Exec::parallel);

// Applies a Fourier multiplier m(xi) to a PolyGauss field at the points xs
// (row-major, d per point) by quadrature of the inverse transform in polar
// coordinates. Suitable for symbols with an algebraic singularity at xi = 0.
struct SpectralQuadOptions {
    double radius_scale = 9.0;  // R = radius_scale / sqrt(sigma of the transform)
    int sphere_m = 0;           // 0 selects a default by dimension
    double ts_step = 1.0 / 16;
};
std::vector<cplx> apply_symbol_at(const PolyGaussField& u, const Multiplier& m, int q,
                                  const std::vector<double>& xs, Exec ex = Exec::parallel,
                                  const SpectralQuadOptions& opt = {});

// Regularized Knapp-Stein operator T_{lambda,p} for lambda in (-1, 0) by principal
// value quadrature of PV int |y|^{2 lambda - d} (i_yhat eps_yhat - eps_yhat i_yhat)
// (u(x+y) - u(x)) dy. Returns dense values at each point.
struct PVOptions {
    double r0 = 0.1;         // inner radius of the polynomial-fit region
    int panels = 24;         // log-spaced Gauss-Legendre panels on [r0, R]
    int order = 12;
    double reach = 10.0;     // R = |x - centre| + reach / sqrt(sigma)
    int angular_base = 16;   // sphere resolution grows as base + 6 r sqrt(sigma)
};
std::vector<cplx> knapp_stein_pv(const PolyGaussField& u, double lambda,
                                 const std::vector<double>& xs, Exec ex = Exec::parallel,
                                 const PVOptions& opt = {});
// Same operator through its Fourier symbol.
std::vector<cplx> knapp_stein_symbol(const PolyGaussField& u, double lambda,
                                     const std::vector<double>& xs, Exec ex = Exec::parallel);

// L_{s,p} = T_{-s,p} / Gamma(-s) on R^d, by principal value quadrature and by symbol.
std::vector<cplx> fractional_bg_pv(const PolyGaussField& u, double s, const std::vector<double>& xs,
                                   Exec ex = Exec::parallel, const PVOptions& opt = {});
std::vector<cplx> fractional_bg_symbol(const PolyGaussField& u, double s,
                                       const std::vector<double>& xs, Exec ex = Exec::parallel,
                                       const SpectralQuadOptions& opt = {});

// Ratio of T_{lambda,p} to the invariant-norm symbol, derived from the symbol of
// L_{s,p}: Gamma(lambda) pi^{d/2} 4^lambda / Gamma(d/2 - lambda + 1).
double knapp_stein_norm_ratio(int d, double lambda);

}  // namespace bgx
