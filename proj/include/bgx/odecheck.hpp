#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bgx/multivec.hpp"
#include "bgx/special.hpp"
#include "bgx/zprofile.hpp"

namespace bgx {

// [(1+z^2) d^2/dz^2 - (a-4) z d/dz - c] v, the scalar operator of the decoupled equations.
double scalar_ode(double a, double c, double v, double d1, double d2, double z);

// Residuals of the four profile equations at z (I, II, III, IV); c1 = a-2, c3 = n-2p+a-2.
struct OdeResidual {
    double eq1 = 0.0, eq2 = 0.0, eq3 = 0.0, eq4 = 0.0;
    double max() const;
};
OdeResidual profile_residuals(const ProfileSet& s, double z);
// Largest residual over the sample points, each divided by the size of its largest term.
OdeResidual profile_residuals(const ProfileSet& s, const std::vector<double>& zs);

enum class Equation { I, IV, II_III };

struct IndicialData {
    Equation eq = Equation::I;
    std::vector<double> roots;  // increasing
    bool distinct = true;
};
// Roots of the indicial equations at z = infinity.
IndicialData indicial_roots(Equation eq, const ModelParams& m);

// The rejected solution branches, built from the displayed hypergeometric forms.
// v_I equation: the z^{-mu_1} solution on z > 0.
HypProfile eq1_mu1_branch(const ModelParams& m);
// v_IV equation: the z^{-mu_2} solution on z > 0, as (-x)^{-beta} 2F1(beta, 1+beta-gamma; 1+beta-alpha; 1/x).
HypProfile eq4_mu2_branch_right(const ModelParams& m);
// Same solution through the connection formula; defines it on all of R.
HypProfile eq4_mu2_branch_global(const ModelParams& m);
// v_II / v_III equations, mu_4: phi(x) on x < 0 directly, and the two connection coefficients.
struct Mu4Branch {
    double alpha = 0.0, beta = 0.0, gamma = 1.5;
    HypProfile phi_right;           // (-x)^{-alpha} 2F1(alpha, 1+alpha-gamma; 1+alpha-beta; 1/x), as a function of z
    double coef_regular = 0.0;      // multiplies 2F1(alpha, beta; gamma; -z^2)
    double coef_singular = 0.0;     // multiplies z^{-1} 2F1(1+alpha-gamma, 1+beta-gamma; 2-gamma; -z^2)
    // Jump of the odd part of v_II = z phi(-z^2) across z = 0 for the one-sided solution.
    double odd_jump() const { return 2.0 * coef_singular; }
    double connection(double z) const;  // right-hand side of the connection formula at z > 0
};
Mu4Branch mu4_branch(const ModelParams& m);

// Tail classification: fits log|v| against log|z| on [zmax/4, zmax] (sign selects the side)
// and tests whether (1+z^2)^{(2-a)/2} |v|^2 decays faster than |z|^{-1}.
struct TailFit {
    double slope = 0.0;               // exponent of |v|
    double integrand_exponent = 0.0;  // 2 - a + 2 slope
    double max_dev = 0.0;             // largest deviation of the fit in log space
    bool admissible = false;
};
TailFit admissibility(const std::function<double(double)>& v, double a, double zmax = 1e3,
                      int side = +1, int samples = 24);

// int v_I dz, int v_II dz, int v_III dz.
struct NormalizationIntegrals {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
};
NormalizationIntegrals normalization_integrals(const ModelParams& m);

// sqrt(2 pi)/|xi'| [v_I f_I + v_II xihat' ^ f_II + v_III e_n ^ f_II] at z, on Lambda^p C^n,
// for a boundary value fhat (dense, basis_blades(n-1, p) order) at the tangential
// frequency xi'. With z = xi_n/|xi'| this is uhat(xi', xi_n).
std::vector<cplx> assembled_v(const ModelParams& m, const std::vector<double>& xi_prime,
                              const std::vector<cplx>& fhat, double z);
// D_a applied to assembled_v at z, using exact profile derivatives; returns the
// residual and the size of the largest term.
std::pair<double, double> assembled_residual(const ModelParams& m, const std::vector<double>& xi_prime,
                                             const std::vector<cplx>& fhat, double z);

// Multivector of Lambda^p C^{n-1} viewed in Lambda^p C^n.
Multivector embed(const Multivector& w, int n);

}  // namespace bgx
