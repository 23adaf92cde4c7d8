#pragma once

#include <vector>

#include "bgx/formops.hpp"
#include "bgx/polygauss.hpp"

namespace bgx {

// x_n^beta * g(x) on the upper half space, g a PolyGauss field whose polynomial parts may
// carry negative powers of x_n. Satisfies the field interface of the formops templates,
// so d, delta and delta_ap act on it with the product rule for the weight.
class WeightedField {
public:
    WeightedField() = default;
    WeightedField(double beta, PolyGaussField g) : beta_(beta), g_(std::move(g)) {}

    int dim() const { return g_.dim(); }
    int degree() const { return g_.degree(); }
    double beta() const { return beta_; }
    const PolyGaussField& base() const { return g_; }

    // Requires x_n > 0.
    Multivector eval(const std::vector<double>& x) const;

    WeightedField& operator+=(const WeightedField& o);
    WeightedField& operator-=(const WeightedField& o);
    WeightedField& operator*=(cplx s);

private:
    void check(const WeightedField& o) const;
    double beta_ = 0.0;
    PolyGaussField g_;
};

WeightedField operator+(WeightedField a, const WeightedField& b);
WeightedField operator-(WeightedField a, const WeightedField& b);
WeightedField operator*(cplx s, WeightedField a);

WeightedField zero_like(const WeightedField& u, int q);
WeightedField derivative(const WeightedField& u, int j);
WeightedField coordinate_mul(const WeightedField& u, int j);
WeightedField apply_linear(const WeightedField& u, int q, const LinOp& op);

// d* = x_n^2 delta - (2p - n) x_n i_{e_n} on p-forms, the adjoint of d for the weight
// x_n^{2p-n} on p-forms. Throws for p = 0.
template <class F>
F hyp_codiff(const F& u) {
    const int n = u.dim(), p = u.degree();
    if (p < 1) throw std::invalid_argument("hyp_codiff: degree >= 1 required");
    F out = coordinate_mul(coordinate_mul(delta(u), n), n);
    out -= cplx(double(2 * p - n)) *
           coordinate_mul(apply_linear(u, p - 1, [n](const Multivector& w) { return iota_e(n, w); }), n);
    return out;
}

// Form Laplace-Beltrami operator -(d* d + d d*) for the metric x_n^{-2} |dx|^2.
template <class F>
F hyp_laplacian_composed(const F& u) {
    F out = cplx(-1.0) * hyp_codiff(d(u));
    if (u.degree() >= 1) out -= d(hyp_codiff(u));
    return out;
}

// The same operator as Delta_{2(p+1)-n,p}.
template <class F>
F hyp_laplacian(const F& u) {
    return delta_ap(u, 2.0 * (u.degree() + 1) - u.dim());
}

// max |composed - delta_ap| over the coefficients, relative to the largest coefficient of
// either side.
double hyp_identity_residual(const PolyGaussField& u);

// beta = (a + n - 2p - 2)/2 and the constant (a + n - 2p - 2)(a - n + 2p)/4.
double conjugation_beta(int n, int p, double a);
double conjugation_constant(int n, int p, double a);

// Both sides of box_p[x_n^beta u] = x_n^beta [Delta_{a,p} + c] u at the points xs
// (n per point, x_n > 0); returns max |lhs - rhs| / max |rhs|. Throws on x_n <= 0.
double conjugation_residual(const PolyGaussField& u, double a, const std::vector<double>& xs);

// <<d alpha, beta>> - <<alpha, d* beta>> relative to |<<d alpha, beta>>| by tensor quadrature
// over [-L, L]^{n-1} x [h, L] with the weight x_n^{2p-n}, p = deg beta. The data must be
// negligible on the box boundary.
struct AdjointnessCheck {
    cplx lhs, rhs;
    double defect = 0.0;
};
AdjointnessCheck codiff_adjointness(const PolyGaussField& alpha, const PolyGaussField& beta, double L = 5.0,
                                    double h = 0.1, int panels = 16, int order = 10);

}  // namespace bgx
