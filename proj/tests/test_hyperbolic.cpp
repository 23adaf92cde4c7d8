#include "doctest.h"

#include <cmath>
#include <random>

#include "bgx/hyperbolic.hpp"

using namespace bgx;

namespace {

std::vector<double> upper_points(int n, int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.5, 1.5), V(0.1, 2.0);
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) {
        for (int k = 0; k < n - 1; ++k) xs.push_back(U(rng));
        xs.push_back(V(rng));
    }
    return xs;
}

}  // namespace

TEST_CASE("hyperbolic codifferential by hand") {
    // n = 2, p = 1, u = x_2 e^{-|x|^2/2} e_2: delta u = -d_2(x_2 g) = -(1 - x_2^2) g, and the
    // i_{e_n} term drops since 2p = n
    const auto g = PolyGaussField::gaussian(Multivector::basis(2, 2));
    const auto ds = hyp_codiff(coordinate_mul(g, 2));
    for (double x1 : {-0.5, 0.7})
        for (double x2 : {0.3, 1.2}) {
            const double e = std::exp(-(x1 * x1 + x2 * x2) / 2);
            CHECK(std::abs(ds.eval({x1, x2}).coeff(Blade(0)) + x2 * x2 * (1 - x2 * x2) * e) < 1e-14);
        }
    // no e_n component and no x_n dependence apart from the envelope: the i_{e_n} term vanishes
    const auto h = PolyGaussField::gaussian(Multivector::basis(3, 1));
    const auto dh = hyp_codiff(h);
    const auto ref = coordinate_mul(coordinate_mul(delta(h), 3), 3);
    CHECK((dh - ref).max_coeff() == 0.0);
    CHECK_THROWS(hyp_codiff(PolyGaussField::gaussian(Multivector::scalar(3, 1.0))));
}

TEST_CASE("Laplace-Beltrami operator equals Delta_{2(p+1)-n,p}") {
    std::mt19937_64 rng(41);
    RandomFieldOptions opt;
    opt.shift = 0.5;
    opt.complex_coeffs = true;
    for (int n = 2; n <= 5; ++n)
        for (int p = 0; p <= n; ++p) {
            const auto u = random_polygauss(n, p, rng, opt);
            CHECK(hyp_identity_residual(u) < 1e-12);
        }
    // scalar case: x_n^2 Lap + (2 - n) x_n d_n
    const auto u = random_polygauss(3, 0, rng);
    const auto ref = coordinate_mul(coordinate_mul(laplacian(u), 3), 3) - cplx(1.0) * coordinate_mul(derivative(u, 3), 3);
    CHECK((hyp_laplacian(u) - ref).max_coeff() < 1e-13 * u.max_coeff());
}

TEST_CASE("conjugation by a power of x_n") {
    std::mt19937_64 rng(43);
    for (auto [n, p, a] : {std::tuple{3, 0, 0.0}, {3, 0, 0.5}, {3, 1, -0.5}, {4, 1, 0.3}, {5, 2, 0.0}, {4, 0, -1.5}}) {
        const auto u = random_polygauss(n, p, rng);
        CHECK(conjugation_residual(u, a, upper_points(n, 100, rng)) < 1e-8);
    }
    // beta = 0 at a = 2(p+1) - n, and the constant vanishes
    CHECK(conjugation_beta(4, 1, 0.0) == 0.0);
    CHECK(conjugation_constant(4, 1, 0.0) == 0.0);
    CHECK_THROWS(conjugation_residual(random_polygauss(3, 0, rng), 0.0, {0.1, 0.2, -0.3}));
}

TEST_CASE("conjugation against finite differences") {
    // (n, p, a) = (3, 0, 0): box_0 f = x_3^2 Lap f - x_3 d_3 f on f = x_3^beta u
    std::mt19937_64 rng(47);
    const int n = 3;
    const double a = 0.0, beta = conjugation_beta(3, 0, a), c = conjugation_constant(3, 0, a);
    const auto u = PolyGaussField::gaussian(Multivector::scalar(3, 1.0), 0.8);
    const auto rhs = delta_ap(u, a) + cplx(c) * u;
    const auto f = [&](double x, double y, double z) { return std::pow(z, beta) * u.eval({x, y, z}).coeff(Blade(0)); };
    const double h = 1e-3;
    double num = 0.0, den = 0.0;
    const auto xs = upper_points(n, 100, rng);
    for (std::size_t i = 0; i < xs.size(); i += 3) {
        const double x = xs[i], y = xs[i + 1], z = xs[i + 2] + 0.3;
        auto d2 = [&](int k) {
            double e[3] = {0, 0, 0};
            e[k] = h;
            return (-f(x + 2 * e[0], y + 2 * e[1], z + 2 * e[2]) + 16.0 * f(x + e[0], y + e[1], z + e[2]) -
                    30.0 * f(x, y, z) + 16.0 * f(x - e[0], y - e[1], z - e[2]) -
                    f(x - 2 * e[0], y - 2 * e[1], z - 2 * e[2])) /
                   (12 * h * h);
        };
        const cplx dz = (-f(x, y, z + 2 * h) + 8.0 * f(x, y, z + h) - 8.0 * f(x, y, z - h) + f(x, y, z - 2 * h)) / (12 * h);
        const cplx box = z * z * (d2(0) + d2(1) + d2(2)) - z * dz;
        const cplx expect = std::pow(z, beta) * rhs.eval({x, y, z}).coeff(Blade(0));
        num = std::max(num, std::abs(box - expect));
        den = std::max(den, std::abs(expect));
    }
    CHECK(num / den < 1e-6);
}

TEST_CASE("weighted fields differentiate the weight") {
    const auto g = PolyGaussField::gaussian(Multivector::scalar(2, 1.0));
    const WeightedField w(0.5, g);
    const auto dw = derivative(w, 2);
    for (double y : {0.3, 1.7}) {
        const double e = std::exp(-(0.25 + y * y) / 2);
        const double expect = (0.5 * std::pow(y, -0.5) - std::pow(y, 1.5)) * e;
        CHECK(std::abs(dw.eval({0.5, y}).coeff(Blade(0)) - expect) < 1e-14);
    }
    CHECK_THROWS(w + WeightedField(0.25, g));
    CHECK_THROWS(w.eval({0.0, -1.0}));
}

TEST_CASE("d* is the adjoint of d for the hyperbolic metric") {
    std::mt19937_64 rng(53);
    for (int n : {2, 3})
        for (int p = 1; p <= std::min(n, 2); ++p) {
            // envelopes centred at x_n = 2.5 with width ~ 0.35: negligible on the box boundary
            auto alpha = random_polygauss(n, p - 1, rng);
            auto beta = random_polygauss(n, p, rng);
            std::vector<cplx> c(n, 0.0);
            c[n - 1] = 8.0 * 2.5;
            alpha.set_envelope(8.0, c, -0.5 * 8.0 * 2.5 * 2.5);
            beta.set_envelope(8.0, c, -0.5 * 8.0 * 2.5 * 2.5);
            const auto chk = codiff_adjointness(alpha, beta, 5.0, 0.1, n == 2 ? 24 : 12, 10);
            CHECK(chk.defect < 1e-6);
        }
}
