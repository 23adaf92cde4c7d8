#pragma once

#include <vector>

#include "bgx/formops.hpp"
#include "bgx/grid.hpp"
#include "bgx/multivec.hpp"
#include "bgx/parallel.hpp"
#include "bgx/polygauss.hpp"

namespace bgx {

// Norm on I_{lambda,p}: homogeneous Sobolev space of order -lambda on R^d.
struct NormSpec {
    int d = 3;
    int p = 0;
    double lambda = -0.5;
    // |lambda| < d/2 - p
    bool valid() const;
};

// Radial-angular quadrature over frequency space for PolyGauss inputs.
struct NormQuadOptions {
    double radius_scale = 9.0;  // R = radius_scale * sqrt(sigma) + shift
    int sphere_m = 0;           // 0 selects a default by dimension
    double ts_step = 1.0 / 16;
};

// |xi|^{-2 lambda - 2} [(d/2 - p - lambda) i_xi eps_xi + (d/2 - p + lambda) eps_xi i_xi]
struct InvariantSymbol {
    NormSpec spec;
    XiOps ops;
    explicit InvariantSymbol(const NormSpec& s) : spec(s), ops(s.d, s.p) {}
    void operator()(const double* xi, const cplx* in, cplx* out) const;
};

// int <M(xi) uhat, vhat> dxi for a multiplier M; no validity checks. Exposed for
// norms outside the unitary window, which appear on boundary data.
cplx spectral_form(const PolyGaussField& u, const PolyGaussField& v, const Multiplier& m,
                   Exec ex = Exec::parallel, const NormQuadOptions& opt = {});
cplx spectral_form(const GridField& u, const GridField& v, const Multiplier& m,
                   Exec ex = Exec::parallel);

// ||u||_lambda^2 of the conformally invariant norm; throws if the NormSpec is invalid.
double invariant_norm_sq(const PolyGaussField& u, const NormSpec& spec, Exec ex = Exec::parallel,
                         const NormQuadOptions& opt = {});
double invariant_norm_sq(const GridField& u, const NormSpec& spec, Exec ex = Exec::parallel);
cplx invariant_inner(const PolyGaussField& u, const PolyGaussField& v, const NormSpec& spec,
                     Exec ex = Exec::parallel, const NormQuadOptions& opt = {});

// |u|_lambda^2 = int |xi|^{-2 lambda} |uhat|^2.
double plain_norm_sq(const PolyGaussField& u, const NormSpec& spec, Exec ex = Exec::parallel,
                     const NormQuadOptions& opt = {});
double plain_norm_sq(const GridField& u, const NormSpec& spec, Exec ex = Exec::parallel);

struct Sandwich {
    double lower = 0.0, value = 0.0, upper = 0.0;
    bool holds(double rel_tol = 1e-12) const;
};
// (d/2 - p - |lambda|) |u|^2 <= ||u||^2 <= (d/2 - p + |lambda|) |u|^2
Sandwich sandwich(const PolyGaussField& u, const NormSpec& spec, Exec ex = Exec::parallel);

struct TraceBound {
    double lhs = 0.0, rhs = 0.0, cprime = 0.0;
    bool holds() const { return lhs <= rhs; }
};
// (|Ru|_nu^2, C' |u|_lambda^2) with nu = lambda + 1/2 and C' = int (1+t^2)^lambda dt.
// Requires lambda < -1/2.
TraceBound trace_norm_bound(const PolyGaussField& u, double lambda, Exec ex = Exec::parallel);
double trace_constant(double lambda);

// fhat = f_I + xihat ^ f_II with i_xi f_I = i_xi f_II = 0. Throws at xi = 0.
struct TangentialParts {
    Multivector f1, f2;
};
TangentialParts tangential_split(const Multivector& fhat, const std::vector<double>& xi);

}  // namespace bgx
