#pragma once

#include <vector>

#include "bgx/grid.hpp"
#include "bgx/multivec.hpp"
#include "bgx/parallel.hpp"
#include "bgx/polygauss.hpp"

namespace bgx {

// Representation pi_{lambda,p} of O(1, n+1) on p-forms on R^n (noncompact picture).
// rho = n/2.
struct RepParams {
    int n = 3;
    int p = 0;
    double lambda = -1.0;
    double rho() const { return n / 2.0; }
};

struct GroupElement {
    enum class Kind { translation, dilation, rotation, inversion };
    Kind kind = Kind::translation;
    std::vector<double> b;  // translation vector
    double t = 0.0;         // dilation parameter, e^{tH}
    std::vector<double> m;  // rotation, n x n row-major orthogonal
    int eps = 1;            // O(1) sign of diag(eps, eps, m)

    static GroupElement translation(std::vector<double> b);
    static GroupElement dilation(double t);
    static GroupElement rotation(std::vector<double> m, int eps = 1);
    static GroupElement inversion();
};

// Lambda^p of an n x n matrix (row-major) as a dense operator on basis_blades(n, p).
DenseOp exterior_power(const std::vector<double>& m, int n, int p);

// Random orthogonal matrix from QR of a Gaussian matrix.
std::vector<double> random_orthogonal(int n, std::mt19937_64& rng);

// translation: u(x - b); rotation: Lambda^p m u(eps m^T x); dilation: e^{(lambda+rho)t} u(e^t x).
// Inversion is not available on PolyGauss and throws.
PolyGaussField act(const GroupElement& g, const PolyGaussField& u, const RepParams& r);
// Pointwise version, all four kinds. The inversion is
// Lambda^p(1 - 2 x x^T / |x|^2) |x|^{-2(lambda+rho)} u(-x / |x|^2), and 0 at x = 0.
Sampler act(const GroupElement& g, const Sampler& u, const RepParams& r);
// Grid version through 6-point interpolation; points mapped outside the box give 0.
GridField act(const GroupElement& g, const GridField& u, const RepParams& r,
              Exec ex = Exec::parallel);

// Fraction of the squared L2 mass within |x| < r; the inversion is poorly resolved
// when this is not negligible.
double mass_fraction_within(const GridField& u, double r);

struct Generator {
    enum class Kind { H, M, Xbar, X };
    Kind kind = Kind::H;
    int j = 0, k = 0;  // 1-based; M uses (j, k), Xbar and X use j
    static Generator h() { return {Kind::H, 0, 0}; }
    static Generator m(int j, int k) { return {Kind::M, j, k}; }
    static Generator xbar(int j) { return {Kind::Xbar, j, 0}; }
    static Generator x(int j) { return {Kind::X, j, 0}; }
};

// Derived representation:
//   H = E + lambda + rho, Xbar_j = -d_j, M_jk = x_j d_k - x_k d_j + dxi(M_jk),
//   X_j = -|x|^2 d_j + 2 x_j (E + lambda + rho) - 2 sum_i x_i dxi(M_ij),
// with dxi(M_jk) = eps_{e_j} i_{e_k} - eps_{e_k} i_{e_j}.
PolyGaussField dpi(const Generator& g, const PolyGaussField& u, double lambda);

// H^2 - (n-1) H - sum_{j<k<=n-1} M_jk^2 + sum_{j<=n-1} X_j Xbar_j, composed from dpi.
PolyGaussField casimir_basis(const PolyGaussField& u, double lambda);
// Delta_{2(lambda+1),p} + (lambda+rho)(lambda-rho+1) + p(n-p-1).
PolyGaussField casimir_closed(const PolyGaussField& u, double lambda);
double casimir_constant(int n, int p, double lambda);

// max_x |u(x) - v(x)| / max_x |v(x)| over the points xs (n per point).
double relative_residual(const PolyGaussField& u, const PolyGaussField& v,
                         const std::vector<double>& xs);

}  // namespace bgx
