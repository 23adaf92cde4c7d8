#pragma once

#include <vector>

namespace bgx {

struct Rule1D {
    std::vector<double> x, w;
    // tanh_sinh only: distance of each node to the nearer endpoint, free of cancellation
    std::vector<double> gap;
    std::size_t size() const { return x.size(); }
};

// m-point Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int m, double a, double b);
// Composite Gauss-Legendre with equal panels.
Rule1D composite_gl(int panels, int m, double a, double b);
// Tanh-sinh rule on [a, b] with step h; robust against algebraic endpoint singularities.
// Nodes never coincide with the endpoints. tmax bounds the transformed variable; raise it
// (up to ~6.1, where gaps reach 1e-300) for integrands that blow up at an endpoint.
Rule1D tanh_sinh(double a, double b, double h = 1.0 / 16, double tmax = 3.2);

// Product rule on the unit sphere S^{d-1} in R^d; weights sum to its area.
// m controls resolution (points per polar angle; azimuth uses 2m).
struct SphereRule {
    int d = 0;
    std::vector<double> pts;  // size d * count
    std::vector<double> w;
    std::size_t size() const { return w.size(); }
    const double* point(std::size_t i) const { return pts.data() + i * d; }
};
SphereRule sphere_rule(int d, int m);

double sphere_area(int d);

// Nodes and weights on R^d: radial rule times sphere rule (r^{d-1} folded into w).
struct NodeSet {
    int d = 0;
    std::vector<double> pts;
    std::vector<double> w;
    std::size_t size() const { return w.size(); }
    const double* point(std::size_t i) const { return pts.data() + i * d; }
};
NodeSet polar_nodes(int d, const Rule1D& radial, const SphereRule& sphere);
// Radial tanh-sinh on [0, R] times sphere_rule(d, m).
NodeSet polar_nodes(int d, double R, int m, double h = 1.0 / 16);

}  // namespace bgx
