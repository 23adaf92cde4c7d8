#pragma once

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "bgx/multivec.hpp"
#include "bgx/polynomial.hpp"

namespace bgx {

using LinOp = std::function<Multivector(const Multivector&)>;

// p-form field on R^n whose blade components are q_B(x) * exp(phi(x)) with the shared
// exponent phi(x) = -sigma |x|^2 / 2 + beta . x + gamma (beta complex, gamma complex).
// The family is closed under derivatives, multiplication by coordinates, similarity
// pullbacks (translations, rotations, dilations) and the Fourier transform.
class PolyGaussField {
public:
    PolyGaussField() = default;
    PolyGaussField(int n, int p, double sigma = 1.0);

    // w * exp(-sigma |x|^2 / 2)
    static PolyGaussField gaussian(const Multivector& w, double sigma = 1.0);

    int dim() const { return n_; }
    int degree() const { return p_; }
    double sigma() const { return sigma_; }
    const std::vector<cplx>& beta() const { return beta_; }
    cplx gamma() const { return gamma_; }
    void set_envelope(double sigma, std::vector<cplx> beta, cplx gamma);

    const std::map<Blade, Poly>& components() const { return comps_; }
    Poly component(Blade b) const;
    void add(Blade b, const Poly& q);

    bool zero() const { return comps_.empty(); }
    double max_coeff() const;
    int poly_degree() const;
    void prune(double tol);

    Multivector eval(const std::vector<double>& x) const;

    PolyGaussField& operator+=(const PolyGaussField& o);
    PolyGaussField& operator-=(const PolyGaussField& o);
    PolyGaussField& operator*=(cplx s);

    // Flattened evaluator for hot loops; output is dense in basis_blades(n, p) order.
    class Evaluator {
    public:
        explicit Evaluator(const PolyGaussField& f);
        int dim() const { return n_; }
        int size() const { return nb_; }
        void operator()(const double* x, cplx* out) const;

    private:
        struct Term {
            int comp;
            cplx c;
            std::array<std::int8_t, kMaxVars> e;
        };
        int n_ = 0, nb_ = 0;
        int lo_ = 0, hi_ = 0;
        std::vector<Term> terms_;
        double sigma_ = 1.0;
        std::vector<cplx> beta_;
        cplx gamma_;
    };

private:
    friend PolyGaussField same_envelope(const PolyGaussField& like, int p);
    bool same_shape(const PolyGaussField& o) const;

    int n_ = 0, p_ = 0;
    double sigma_ = 1.0;
    std::vector<cplx> beta_;
    cplx gamma_ = 0.0;
    std::map<Blade, Poly> comps_;
};

PolyGaussField operator+(PolyGaussField a, const PolyGaussField& b);
PolyGaussField operator-(PolyGaussField a, const PolyGaussField& b);
PolyGaussField operator*(cplx s, PolyGaussField a);

// Empty field of degree p with the envelope of `like`.
PolyGaussField same_envelope(const PolyGaussField& like, int p);

PolyGaussField derivative(const PolyGaussField& u, int j);
PolyGaussField coordinate_mul(const PolyGaussField& u, int j);
PolyGaussField euler(const PolyGaussField& u);
// Applies a linear map on Lambda^* C^n blade by blade; q is the output degree.
PolyGaussField apply_linear(const PolyGaussField& u, int q, const LinOp& op);

// Fourier transform with u^(xi) = (2 pi)^{-n/2} int e^{-i x.xi} u(x) dx.
PolyGaussField fourier(const PolyGaussField& u);
PolyGaussField inverse_fourier(const PolyGaussField& u);

// x -> u(A x + b) for A with A^T A = c^2 I (values are not transformed).
PolyGaussField pullback_similarity(const PolyGaussField& u, const std::vector<double>& A,
                                   const std::vector<double>& b);

// Pullback to R^{n-1} = {x_n = 0}: substitute x_n = 0, drop blades containing e_n.
PolyGaussField restrict_to_boundary(const PolyGaussField& u);

struct RandomFieldOptions {
    int max_degree = 2;
    double sigma_min = 0.6, sigma_max = 1.6;
    double shift = 0.0;  // scale of a random real linear term beta
    bool complex_coeffs = false;
};
PolyGaussField random_polygauss(int n, int p, std::mt19937_64& rng,
                                const RandomFieldOptions& opt = {});

}  // namespace bgx
