#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bgx/formops.hpp"
#include "bgx/grid.hpp"
#include "bgx/multivec.hpp"
#include "bgx/parallel.hpp"
#include "bgx/polygauss.hpp"
#include "bgx/quadrature.hpp"
#include "bgx/special.hpp"

namespace bgx {

// Dirichlet problem Delta_{a,p} u = 0 on R^n, u = f on x_n = 0. The datum is a
// PolyGauss p-form on R^{n-1}; a pointwise sampler may replace it for the kernel path.
struct BVPInstance {
    ModelParams params;
    PolyGaussField f;          // dim n-1, degree p
    std::optional<Sampler> f_sampled;  // kernel path only; overrides f there
    double data_scale = 1.0;   // sqrt(sigma) of the sampled datum, sets angular resolution
};

// Checks the shape of f and that the closed-form constants are finite: a < 1 and
// n - 2p - a > 0. Uniqueness of the solution needs 2-n+2p < a in addition.
void check_instance(const BVPInstance& inst);

// Fourier multiplier of the Poisson transform: uhat(xi', xi_n) from fhat(xi') (dense on Lambda^p C^{n-1}),
// written on Lambda^p C^n. Throws at xi' = 0.
void poisson_symbol(const ModelParams& m, const double* xi, const cplx* fhat, cplx* out);

struct KernelOptions {
    double ts_step = 1.0 / 32;   // tanh-sinh step in theta, r = |x_n| tan(theta)
    double tmax = 4.5;
    int angular_base = 12;       // sphere resolution base + growth * r * data_scale
    double angular_growth = 3.0;
    int angular_max = 64;
};
// c_{a,p} int |x_n|^{1-a} |x-y|^{-(n-a+2)} (i_{x-y} eps_{x-y} - eps_{x-y} i_{x-y}) f(y) dy
// at the points xs (row-major, n per point, x_n != 0). Dense output per point.
std::vector<cplx> poisson_kernel_apply(const BVPInstance& inst, const std::vector<double>& xs,
                                       Exec ex = Exec::parallel, const KernelOptions& opt = {});

struct SpectralPathOptions {
    double radius_scale = 10.0;  // xi' radius in units of the transform's width
    int sphere_m = 0;            // 0 selects a default by n-1
    double ts_step = 1.0 / 24;
};

// Spectral solution: uhat from poisson_symbol, and physical values from the exact
// inverse transform in xi_n (Bessel K closed forms) followed by polar quadrature in xi'.
class PoissonSpectral {
public:
    PoissonSpectral(const ModelParams& m, const PolyGaussField& f, const SpectralPathOptions& opt = {});

    const ModelParams& params() const { return m_; }
    int size() const { return nb_; }  // dim Lambda^p C^n
    void symbol(const double* xi, cplx* out) const;

    // u(x) at points xs (n per point); x_n = 0 is allowed and uses the boundary values.
    std::vector<cplx> values(const std::vector<double>& xs, Exec ex = Exec::parallel) const;
    // u(x', x_n) - f(x') for each x_n in xns at one x', without forming u and f separately.
    std::vector<std::vector<cplx>> boundary_differences(const std::vector<double>& x_prime,
                                                         const std::vector<double>& xns,
                                                         Exec ex = Exec::parallel) const;

private:
    // coefficients of f_I, xihat' ^ f_II and e_n ^ f_II in the partial inverse transform
    // at z = |xi'| |x_n|; all three depend on z only
    std::array<cplx, 3> coefficients(double z, double xn_sign) const;
    // sum over xi' nodes of e^{i x'.xi'} (c_A A + c_B B + c_C C) for each point
    std::vector<cplx> accumulate(const std::vector<double>& xprimes, const std::vector<double>& xns,
                                 bool subtract_boundary, Exec ex) const;
    ModelParams m_;
    PolyGaussField fh_;  // transform of f on R^{n-1}
    int nb_ = 0;
    double K0_ = 0.0;
    Rule1D radial_;
    SphereRule sphere_;
};

// Fourier-side residuals on a (xi', theta) node set with xi_n = |xi'| tan(theta).
struct SpectralResiduals {
    double boundary = 0.0;  // max |(2pi)^{-1/2} int uhat dxi_n - fhat| / max |fhat|
    double pde = 0.0;       // max |D uhat| / (sum of the term magnitudes), finite differences in xi_n
};
SpectralResiduals spectral_residuals(const ModelParams& m, const PolyGaussField& f,
                                     Exec ex = Exec::parallel);

// ||u||^2_{(a-2)/2,p} on R^n from the Poisson multiplier, by polar nodes in xi' and
// tanh-sinh in theta. The symbol is used without the unitary-window check.
double solution_norm_sq(const ModelParams& m, const PolyGaussField& f, Exec ex = Exec::parallel);
// ||f||^2_{(a-1)/2,p} on R^{n-1}, coefficients (n-2p-a)/2 and (n-2p+a-2)/2 on f_I / f_II.
double boundary_norm_sq(const ModelParams& m, const PolyGaussField& f, Exec ex = Exec::parallel);
double isometry_ratio(const BVPInstance& inst, Exec ex = Exec::parallel);

struct DtNRow {
    double xn = 0.0;
    std::vector<cplx> value;  // d_{s,p} x_n^{a-1} (u - f)
    double rel_err = 0.0;     // against the fractional operator on R^{n-1}
};
struct DtNResult {
    std::vector<DtNRow> rows;
    std::vector<cplx> extrapolated;
    std::vector<cplx> reference;  // L_{s,p} f at x'
    double kappa = 0.0;           // empirical order in log10(x_n)
    double extrapolated_err = 0.0;
    bool monotone = false;
};
// The range p <= (n-3)/2 is enforced unless unchecked is set.
DtNResult dtn_limit(const BVPInstance& inst, const std::vector<double>& x_prime,
                    const std::vector<double>& xns = {1e-1, 1e-2, 1e-3}, bool unchecked = false,
                    Exec ex = Exec::parallel);

struct Report {
    ModelParams params;
    bool in_window = false;  // dirichlet_ok
    double boundary = 0.0;
    double pde = 0.0;
    double two_path = 0.0;
    double solution_norm_sq = 0.0;
    bool finite_norm = false;
    double isometry_measured = 0.0;
    double isometry_closed = 0.0;
    std::vector<std::pair<double, double>> dtn_table;  // (x_n, rel_err), empty outside dtn_ok
    bool passed(double tol_residual = 1e-6, double tol_two_path = 1e-4) const;
};
// Runs both constructions at `points` interior points drawn from the seed.
Report verify_solution(const BVPInstance& inst, int points = 20, unsigned long long seed = 7,
                       Exec ex = Exec::parallel);

// Grid representation: f on an (n-1)-dimensional physical grid; returns uhat on the
// n-dimensional frequency lattice with the same L and N. xi' = 0 bins are zero.
GridField poisson_spectral(const ModelParams& m, const GridField& f);
// Relative max error of the restriction (trapezoidal sum over xi_n) against fhat.
double grid_boundary_residual(const ModelParams& m, const GridField& f);

}  // namespace bgx
