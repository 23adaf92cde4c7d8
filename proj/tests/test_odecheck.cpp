#include "doctest.h"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "bgx/odecheck.hpp"

using namespace bgx;

namespace {

// all inside 2-n+2p < a < 1
const ModelParams kSweep[] = {{3, 0, 0.0}, {3, 0, 0.5}, {3, 0, -0.5}, {4, 0, 0.0}, {4, 1, 0.5}, {5, 1, -0.5}, {6, 1, -1.5}};

std::vector<double> zgrid() {
    std::vector<double> zs;
    for (double z = -40.0; z <= 40.0; z += 0.37) zs.push_back(z);
    return zs;
}

double ode_rel(const HypProfile& h, double a, double c, double z) {
    double v, d1, d2;
    h.eval(z, v, d1, d2);
    const double r = scalar_ode(a, c, v, d1, d2, z);
    return std::abs(r) / std::max({std::abs((1 + z * z) * d2), std::abs((a - 4) * z * d1), std::abs(c * v)});
}

}  // namespace

TEST_CASE("closed-form profiles solve the coupled system") {
    for (const auto& m : kSweep) {
        if (!m.dirichlet_ok()) continue;
        const auto r = profile_residuals(ProfileSet::closed_form(m), zgrid());
        CHECK(r.max() < 1e-12);
    }
}

TEST_CASE("a wrong profile is detected") {
    ProfileSet s = ProfileSet::closed_form({3, 0, 0.0});
    s.v3 *= 1.01;
    CHECK(profile_residuals(s, zgrid()).max() > 1e-4);
}

TEST_CASE("indicial roots") {
    const ModelParams m{3, 0, 0.0};
    const auto i1 = indicial_roots(Equation::I, m);
    CHECK(i1.roots == std::vector<double>{1.0, 2.0});
    // mu^2 - (3-a) mu - (n-2p+a-2) = 0
    const auto i4 = indicial_roots(Equation::IV, m);
    for (double mu : i4.roots) CHECK(std::abs(mu * mu - 3 * mu - 1) < 1e-13);
    CHECK(i4.roots[0] < 1.5);
    CHECK(i4.roots[1] > 1.5);
    CHECK(indicial_roots(Equation::II_III, m).roots.size() == 4);
    for (const auto& p : kSweep) {
        const auto r = indicial_roots(Equation::IV, p).roots;
        CHECK(r[0] < (3 - p.a) / 2);
        CHECK(r[1] > (3 - p.a) / 2);
        CHECK(indicial_roots(Equation::II_III, p).distinct);
    }
    CHECK_THROWS(indicial_roots(Equation::I, {3, 0, 1.5}));
}

TEST_CASE("hypergeometric branches solve their equations") {
    for (const auto& m : kSweep) {
        const double a = m.a, c1 = a - 2, c3 = m.n - 2.0 * m.p + a - 2;
        const auto b1 = eq1_mu1_branch(m);
        const auto b4r = eq4_mu2_branch_right(m);
        const auto b4g = eq4_mu2_branch_global(m);
        for (double z : {0.3, 1.0, 2.5, 17.0}) {
            CHECK(ode_rel(b1, a, c1, z) < 1e-11);
            CHECK(ode_rel(b4r, a, c3, z) < 1e-11);
        }
        for (double z : {-6.0, -1.2, -0.2, 0.0, 0.4, 3.0}) CHECK(ode_rel(b4g, a, c3, z) < 1e-10);
        // the global form continues the right-hand solution
        for (double z : {0.5, 2.0, 8.0}) CHECK(std::abs(b4g(z) - b4r(z)) < 1e-9 * std::abs(b4r(z)));
    }
}

TEST_CASE("mu4 connection formula") {
    for (const auto& m : kSweep) {
        const Mu4Branch b = mu4_branch(m);
        for (double z : {0.2, 1.0, 4.0}) CHECK(std::abs(b.phi_right(z) - b.connection(z)) < 1e-9 * std::abs(b.phi_right(z)));
        CHECK(b.alpha > 0);
        CHECK(b.gamma - b.beta > 0);
        CHECK(std::abs(b.odd_jump()) > 1e-3);
    }
}

TEST_CASE("admissibility verdicts") {
    for (const auto& m : kSweep) {
        if (!m.dirichlet_ok()) continue;
        const ProfileSet s = ProfileSet::closed_form(m);
        const double a = m.a;
        CHECK(admissibility([&](double z) { return s.v1(z); }, a).admissible);
        CHECK(admissibility([&](double z) { return s.v1(z); }, a, 1e3, -1).admissible);
        CHECK(admissibility([&](double z) { return s.v2(z); }, a).admissible);
        CHECK(admissibility([&](double z) { return s.v3(z); }, a).admissible);
        const auto b1 = eq1_mu1_branch(m);
        const auto f1 = admissibility([&](double z) { return b1(z); }, a);
        CHECK_FALSE(f1.admissible);
        CHECK(std::abs(f1.slope + 1.0) < 0.05);
        const auto b4 = eq4_mu2_branch_global(m);
        const auto f4 = admissibility([&](double z) { return b4(z); }, a, 1e3, -1);
        CHECK_FALSE(f4.admissible);
        CHECK(std::abs(f4.slope + indicial_roots(Equation::IV, m).roots[0]) < 0.05);
        // on the right it decays like z^{-mu_2}; the global form cancels there, so use the right form
        const auto b4r = eq4_mu2_branch_right(m);
        CHECK(admissibility([&](double z) { return b4r(z); }, a).admissible);
    }
    CHECK_FALSE(admissibility([](double) { return 1.0; }, 0.0).admissible);
    CHECK_THROWS(admissibility([](double z) { return std::sin(z); }, 0.0));
}

TEST_CASE("normalization integrals") {
    for (const auto& m : kSweep) {
        if (!m.dirichlet_ok()) continue;
        const auto I = normalization_integrals(m);
        CHECK(std::abs(I.i1 - 1.0) < 1e-9);
        CHECK(std::abs(I.i2 - 1.0) < 1e-9);
        CHECK(std::abs(I.i3) < 1e-10);
    }
    // independent quadrature of v_II at (5, 1, -0.5)
    const ModelParams m{5, 1, -0.5};
    const ProfileSet s = ProfileSet::closed_form(m);
    boost::math::quadrature::tanh_sinh<double> ts;
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(std::abs(ts.integrate([&](double z) { return s.v2(z); }, -inf, inf) - 1.0) < 1e-9);
}

TEST_CASE("assembled multiplier solves the Fourier-side equation") {
    for (const auto& m : kSweep) {
        if (!m.dirichlet_ok()) continue;
        const int nb = static_cast<int>(basis_blades(m.n - 1, m.p).size());
        if (nb == 0) continue;
        std::vector<cplx> f(nb);
        for (int b = 0; b < nb; ++b) f[b] = cplx(0.3 + b, -0.7 * b + 0.2);
        std::vector<double> xi(m.n - 1);
        for (int j = 0; j < m.n - 1; ++j) xi[j] = 0.4 - 0.9 * j;
        for (double z : {-9.0, -1.0, 0.0, 0.6, 3.0, 25.0}) {
            const auto [r, s] = assembled_residual(m, xi, f, z);
            CHECK(r <= 1e-12 * s);
            CHECK(assembled_v(m, xi, f, z).size() == basis_blades(m.n, m.p).size());
        }
    }
}
