#pragma once

#include <functional>
#include <vector>

#include "bgx/multivec.hpp"
#include "bgx/parallel.hpp"
#include "bgx/polygauss.hpp"

namespace bgx {

enum class Domain { physical, spectral };

// Pointwise form-valued function; writes dim Lambda^p values in basis_blades order.
using Sampler = std::function<void(const double* x, cplx* out)>;
// Pointwise multiplier on the frequency lattice: out = M(xi) in.
using Multiplier = std::function<void(const double* xi, const cplx* in, cplx* out)>;

// p-form sampled on the periodic box [-L, L)^n with N points per axis.
// Physical nodes x_k = -L + k h, h = 2L/N. Spectral index c holds the frequency
// (c - N/2) pi / L, and values approximate the continuum transform
// (2 pi)^{-n/2} int e^{-i x.xi} u(x) dx by the trapezoidal rule.
// Storage is point-major with the blade index innermost.
class GridField {
public:
    GridField() = default;
    GridField(int n, int p, double L, int N, Domain dom = Domain::physical);

    static GridField sample(const Sampler& f, int n, int p, double L, int N,
                            Exec ex = Exec::parallel);
    static GridField sample(const PolyGaussField& u, double L, int N, Exec ex = Exec::parallel);
    // Exact transform of u sampled on the frequency lattice.
    static GridField sample_fourier(const PolyGaussField& u, double L, int N,
                                    Exec ex = Exec::parallel);

    int dim() const { return n_; }
    int degree() const { return p_; }
    double half_width() const { return L_; }
    int points_per_axis() const { return N_; }
    Domain domain() const { return dom_; }
    int blades() const { return nb_; }
    std::size_t points() const { return npts_; }
    double spacing() const { return 2.0 * L_ / N_; }
    double dual_spacing() const;

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }
    cplx* at(std::size_t pt) { return data_.data() + pt * nb_; }
    const cplx* at(std::size_t pt) const { return data_.data() + pt * nb_; }

    // Coordinates (physical) or frequencies (spectral) of a point index.
    void coords(std::size_t pt, double* out) const;

    bool compatible(const GridField& o) const;

    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(cplx s);

private:
    int n_ = 0, p_ = 0, N_ = 0, nb_ = 0;
    double L_ = 0.0;
    Domain dom_ = Domain::physical;
    std::size_t npts_ = 0;
    std::vector<cplx> data_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(cplx s, GridField a);

GridField fourier(const GridField& u);
GridField inverse_fourier(const GridField& u);

// Spectral multiplier; returns a field in the domain of u. The xi = 0 bin is zeroed
// when skip_zero is set.
GridField apply_multiplier(const GridField& u, int q, const Multiplier& m, bool skip_zero,
                           Exec ex = Exec::parallel);

// Spectral differentiation; the Nyquist mode of axis j is dropped.
GridField derivative(const GridField& u, int j);
// Multiplication by x_j (physical) or by xi_j (spectral).
GridField coordinate_mul(const GridField& u, int j);
GridField euler(const GridField& u);
GridField apply_linear(const GridField& u, int q, const LinOp& op, Exec ex = Exec::parallel);

// Slice at x_n = 0 with the blades containing e_n dropped (physical domain).
GridField restrict_to_boundary(const GridField& u);

// sum_k w_k <u_k, v_k> with w = h^n (physical) or (pi/L)^n (spectral).
cplx grid_inner(const GridField& u, const GridField& v);
double grid_norm_sq(const GridField& u);

// Tensor-product Lagrange interpolation (6 points per axis) of a physical grid at
// an arbitrary point, with periodic wrap-around.
void interpolate(const GridField& u, const double* x, cplx* out);

}  // namespace bgx
