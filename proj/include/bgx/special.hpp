#pragma once

#include <utility>

namespace bgx {

// Gamma function on the real line. Throws std::domain_error at 0, -1, -2, ...
double gamma(double z);
// 1/Gamma(z), equal to 0 at the poles of Gamma.
double rgamma(double z);
double beta(double x, double y);
// Digamma, used by the hypergeometric tests.
double digamma(double z);

// Gauss hypergeometric function 2F1(a, b; c; x) for real x < 1, continued from the
// power series by the Pfaff, 1/x and 1-x transformations.
double hyp2f1(double a, double b, double c, double x);

// Model parameters (n, p, a) with the derived spectral quantities.
struct ModelParams {
    int n = 3;
    int p = 0;
    double a = 0.0;

    static ModelParams from_s(int n, int p, double s) { return {n, p, 1.0 - 2.0 * s}; }

    double lambda() const { return (a - 2.0) / 2.0; }
    double nu() const { return (a - 1.0) / 2.0; }
    double s() const { return (1.0 - a) / 2.0; }
    double rho() const { return n / 2.0; }
    double rho_prime() const { return (n - 1) / 2.0; }

    // 2-n+2p < a < 1: the boundary value problem is uniquely solvable.
    bool dirichlet_ok() const;
    // a < 1 and n-2p-a > 0: the closed-form Poisson solution and its constants are finite.
    // Weaker than dirichlet_ok; outside that window the invariant forms are indefinite.
    bool closed_form_ok() const;
    // 2-n+2p < a <= 2: the operator is essentially self-adjoint on its Sobolev space.
    bool selfadj_ok() const;
    // s in (0,1) and p <= (n-3)/2: the Dirichlet-to-Neumann identity applies.
    bool dtn_ok() const;
};

// Normalizing constant of the Poisson transform P_{a,p}.
double c_poisson(const ModelParams& m);
// Dirichlet-to-Neumann normalization (Gamma(-s) c_{a,p})^{-1}, a = 1 - 2s.
double d_dtn(const ModelParams& m);
// Closed-form isometry constant ||P f||^2 / ||f||^2 of the invariant norms.
double isometry_const(const ModelParams& m);

// Closed forms of
//   int_R (1+z^2)^{(a-2)/2} dz
//   int_R [(n-2p+a-2) z^2 + (n-2p-a+2)] (1+z^2)^{(a-4)/2} dz.
// Throws for a >= 1 where both diverge.
std::pair<double, double> beta_profile_integrals(double a, int n, int p);

}  // namespace bgx
