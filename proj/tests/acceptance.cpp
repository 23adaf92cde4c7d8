// Acceptance run: one PASS/FAIL line per criterion. Reference values are computed here
// from closed forms (Boost special functions), not taken from the library.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "bgx/conformal.hpp"
#include "bgx/formops.hpp"
#include "bgx/hyperbolic.hpp"
#include "bgx/odecheck.hpp"
#include "bgx/poisson.hpp"
#include "bgx/sobolev.hpp"

using namespace bgx;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt <= budget_s;
    const bool ok = o.ok && in_time;
    if (!ok) ++failures;
    std::printf("CRITERION %d %s  %s  [%s; %.1f s of %.0f s]\n", id, ok ? "PASS" : "FAIL", title, o.detail.c_str(),
                dt, budget_s);
    std::fflush(stdout);
}

std::vector<double> cube_points(int n, int count, std::mt19937_64& rng, double w = 1.5) {
    std::uniform_real_distribution<double> U(-w, w);
    std::vector<double> xs(static_cast<std::size_t>(n) * count);
    for (auto& v : xs) v = U(rng);
    return xs;
}

std::vector<double> upper_points(int n, int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.5, 1.5), V(0.05, 2.5);
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) {
        for (int k = 0; k < n - 1; ++k) xs.push_back(U(rng));
        xs.push_back(V(rng));
    }
    return xs;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

BVPInstance instance(int n, int p, double a, const PolyGaussField& f) {
    BVPInstance b;
    b.params = {n, p, a};
    b.f = f;
    b.data_scale = std::sqrt(f.sigma());
    return b;
}

// ---------------------------------------------------------------------------

Outcome casimir() {
    std::mt19937_64 rng(101);
    RandomFieldOptions opt;
    opt.shift = 0.4;
    opt.complex_coeffs = true;
    double worst = 0.0;
    int fields = 0;
    for (int n : {2, 3, 4})
        for (int p : {0, 1, 2}) {
            if (p > n) continue;
            for (double lam : {-1.5, -1.0, -0.25})
                for (int k = 0; k < 30; ++k) {
                    const auto u = random_polygauss(n, p, rng, opt);
                    const auto xs = cube_points(n, 20, rng);
                    worst = std::max(worst, relative_residual(casimir_basis(u, lam), casimir_closed(u, lam), xs));
                    ++fields;
                }
        }
    return {worst <= 1e-10, std::to_string(fields) + " fields, max residual " + fmt("%.2e", worst)};
}

Outcome hyperbolic() {
    std::mt19937_64 rng(102);
    RandomFieldOptions opt;
    opt.shift = 0.5;
    opt.complex_coeffs = true;
    double box = 0.0, conj = 0.0;
    int cases = 0;
    for (int n = 2; n <= 5; ++n)
        for (int p = 0; p <= n; ++p)
            for (int k = 0; k < 3; ++k) box = std::max(box, hyp_identity_residual(random_polygauss(n, p, rng, opt)));
    for (int n = 2; n <= 5; ++n)
        for (int p = 0; 2 - n + 2 * p < 1; ++p) {
            const double lo = 2.0 - n + 2 * p;
            for (double t : {0.15, 0.5, 0.85}) {
                const ModelParams m{n, p, lo + t * (1.0 - lo)};
                if (!m.dirichlet_ok()) continue;
                for (int k = 0; k < 3; ++k) {
                    conj = std::max(conj, conjugation_residual(random_polygauss(n, p, rng, opt), m.a,
                                                               upper_points(n, 100, rng)));
                    ++cases;
                }
            }
        }
    return {box <= 1e-10 && conj <= 1e-8,
            "box identity " + fmt("%.2e", box) + ", conjugation " + fmt("%.2e", conj) + " over " +
                std::to_string(cases) + " window cases"};
}

Outcome poisson_solution() {
    std::mt19937_64 rng(103);
    RandomFieldOptions opt;
    opt.shift = 0.3;
    opt.complex_coeffs = true;
    double b = 0.0, pde = 0.0, two = 0.0;
    bool finite = true;
    for (auto [n, p, a] : {std::tuple{2, 0, 0.0}, {3, 0, 0.5}, {3, 0, -0.5}, {3, 1, 0.0}, {4, 1, -0.5}}) {
        const Report r = verify_solution(instance(n, p, a, random_polygauss(n - 1, p, rng, opt)), 20, 7);
        b = std::max(b, r.boundary);
        pde = std::max(pde, r.pde);
        two = std::max(two, r.two_path);
        finite = finite && r.finite_norm;
    }
    return {b <= 1e-6 && pde <= 1e-6 && two <= 1e-4 && finite,
            "boundary " + fmt("%.2e", b) + ", pde " + fmt("%.2e", pde) + ", two-path " + fmt("%.2e", two)};
}

double isometry_oracle(int n, int p, double a) {
    using boost::math::tgamma;
    return 2.0 * std::sqrt(std::numbers::pi) * (n - 2 * p - a + 2) * tgamma((2 - a) / 2) /
           ((n - 2 * p - a) * tgamma((1 - a) / 2));
}

Outcome isometry() {
    std::string d;
    double worst = 0.0;
    const auto g = PolyGaussField::gaussian(Multivector::scalar(2, 1.0), 1.2);
    const double r300 = isometry_ratio(instance(3, 0, 0.0, g));
    worst = std::max(worst, std::abs(r300 - 10.0 / 3.0));
    // co-closed datum: f = delta(h e1 ^ e2) has no component along xihat'
    const auto f = delta(PolyGaussField::gaussian(Multivector::from_blade(2, Blade::from_indices({1, 2})), 0.9));
    const double r310 = isometry_ratio(instance(3, 1, 0.0, f));
    worst = std::max(worst, std::abs(r310 - 6.0));
    d = "(3,0,0) " + fmt("%.6f", r300) + " vs 10/3, (3,1,0) " + fmt("%.6f", r310) + " vs 6";
    // checks of the closed form itself at the two quoted points
    const bool closed_ok = std::abs(isometry_oracle(3, 0, 0.0) - 10.0 / 3.0) < 1e-14 &&
                           std::abs(isometry_oracle(3, 1, 0.0) - 6.0) < 1e-14;
    std::mt19937_64 rng(104);
    RandomFieldOptions opt;
    opt.shift = 0.4;
    for (auto [n, p, a] : {std::tuple{3, 0, 0.5}, {3, 0, -0.5}, {4, 1, 0.5}}) {
        const double r = isometry_ratio(instance(n, p, a, random_polygauss(n - 1, p, rng, opt)));
        worst = std::max(worst, rel(r, isometry_oracle(n, p, a)));
    }
    return {worst <= 1e-3 && closed_ok, d + ", worst deviation " + fmt("%.2e", worst)};
}

Outcome dtn() {
    // (3, 0, s = 1/2): a = 0
    const auto g = PolyGaussField::gaussian(Multivector::scalar(2, 1.0));
    const std::vector<double> x0{0.3, -0.2};
    const auto inst = instance(3, 0, 0.0, g);
    const DtNResult r = dtn_limit(inst, x0);
    // the reference again, by principal value quadrature instead of the symbol
    const auto pv = fractional_bg_pv(g, 0.5, x0);
    const double e_pv = std::abs(r.extrapolated[0] - pv[0]) / std::abs(pv[0]);
    // (5, 1, s = 1/4): a = 1/2, p <= (n-3)/2
    std::mt19937_64 rng(105);
    RandomFieldOptions opt;
    opt.shift = 0.3;
    const auto r5 = dtn_limit(instance(5, 1, 0.5, random_polygauss(4, 1, rng, opt)), {0.1, 0.2, -0.1, 0.0});
    std::string t5;
    for (const auto& row : r5.rows) t5 += (t5.empty() ? "" : " > ") + fmt("%.1e", row.rel_err);
    return {r.extrapolated_err <= 1e-2 && e_pv <= 1e-2 && r5.monotone,
            "(3,0,1/2) extrapolated " + fmt("%.1e", r.extrapolated_err) + " (vs PV " + fmt("%.1e", e_pv) +
                "), (5,1,1/4) " + t5 + (r5.monotone ? " monotone" : " NOT monotone")};
}

Outcome ode_suite() {
    const ModelParams sweep[] = {{3, 0, 0.0}, {3, 0, 0.5}, {3, 0, -0.5}, {4, 0, 0.0}, {4, 1, 0.5}, {5, 1, -0.5}, {6, 1, -1.5}};
    std::vector<double> zs;
    for (double z = -40.0; z <= 40.0; z += 0.37) zs.push_back(z);
    double res = 0.0, norm = 0.0, assembled = 0.0;
    bool verdicts = true;
    boost::math::quadrature::tanh_sinh<double> ts;
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& m : sweep) {
        const ProfileSet s = ProfileSet::closed_form(m);
        res = std::max(res, profile_residuals(s, zs).max());
        // rejected branches: z^{-mu_1} branch of the v_I equation on the right, and the mu_2 solution of the v_IV equation,
        // which grows like |z|^{-mu_1} on the left, forcing v_IV = 0
        const auto b1 = eq1_mu1_branch(m);
        const auto b4 = eq4_mu2_branch_global(m);
        verdicts = verdicts && !admissibility([&](double z) { return b1(z); }, m.a).admissible;
        verdicts = verdicts && !admissibility([&](double z) { return b4(z); }, m.a, 1e3, -1).admissible;
        verdicts = verdicts && admissibility([&](double z) { return s.v1(z); }, m.a).admissible;
        verdicts = verdicts && std::abs(mu4_branch(m).odd_jump()) > 1e-3;
        const auto I = normalization_integrals(m);
        norm = std::max({norm, std::abs(I.i1 - 1.0), std::abs(I.i2 - 1.0), std::abs(I.i3)});
        // independent quadrature of the same integrals
        norm = std::max(norm, std::abs(ts.integrate([&](double z) { return s.v1(z); }, -inf, inf) - 1.0));
        norm = std::max(norm, std::abs(ts.integrate([&](double z) { return s.v2(z); }, -inf, inf) - 1.0));
        // assembled profiles against the multiplier formula
        const int nb = static_cast<int>(basis_blades(m.n - 1, m.p).size());
        std::vector<cplx> f(nb);
        for (int b = 0; b < nb; ++b) f[b] = cplx(0.3 + b, -0.7 * b + 0.2);
        std::vector<double> xp(m.n - 1);
        for (int j = 0; j < m.n - 1; ++j) xp[j] = 0.4 - 0.9 * j;
        double kk = 0.0;
        for (double v : xp) kk += v * v;
        kk = std::sqrt(kk);
        for (double z : {-9.0, -1.0, 0.0, 0.6, 3.0, 25.0}) {
            const auto v = assembled_v(m, xp, f, z);
            std::vector<double> xi(xp);
            xi.push_back(z * kk);
            std::vector<cplx> u(v.size());
            poisson_symbol(m, xi.data(), f.data(), u.data());
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                num = std::max(num, std::abs(v[i] - u[i]));
                den = std::max(den, std::abs(u[i]));
            }
            assembled = std::max(assembled, num / den);
        }
    }
    return {res <= 1e-9 && verdicts && norm <= 1e-9 && assembled <= 1e-10,
            "ODE residual " + fmt("%.2e", res) + ", verdicts " + (verdicts ? "reproduced" : "WRONG") +
                ", normalization " + fmt("%.2e", norm) + ", assembled vs multiplier " + fmt("%.2e", assembled)};
}

Outcome norms() {
    std::mt19937_64 rng(107);
    RandomFieldOptions opt;
    opt.shift = 0.4;
    opt.complex_coeffs = true;
    int sw = 0, sw_ok = 0;
    // one in ten fields on R^4, where the quadrature is costly
    const NormSpec specs[] = {{2, 0, -0.6}, {3, 0, 0.4}, {3, 1, -0.3}, {3, 1, 0.2}, {2, 0, 0.2},
                              {3, 0, 0.9}, {2, 0, 0.5}, {3, 0, -1.2}, {3, 1, 0.45}, {4, 1, -0.7}};
    for (int k = 0; k < 100; ++k) {
        const NormSpec& s = specs[k % 10];
        const auto u = random_polygauss(s.d, s.p, rng, opt);
        const Sandwich w = sandwich(u, s);
        // coefficients of the bounds, recomputed here
        const double pl = plain_norm_sq(u, s);
        const double lo = (s.d / 2.0 - s.p - std::abs(s.lambda)) * pl;
        const double hi = (s.d / 2.0 - s.p + std::abs(s.lambda)) * pl;
        ++sw;
        if (w.holds() && w.value >= lo * (1 - 1e-12) && w.value <= hi * (1 + 1e-12)) ++sw_ok;
    }
    int tr = 0, tr_ok = 0;
    double cp_err = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int n = k % 5 == 4 ? 4 : 3, p = k % 3 == 0 ? 0 : 1;
        const double lam = -0.6 - 0.1 * (k % 5);
        const TraceBound t = trace_norm_bound(random_polygauss(n, p, rng, opt), lam);
        // C' = int (1+t^2)^lambda dt = sqrt(pi) Gamma(-lambda - 1/2) / Gamma(-lambda)
        const double cp = std::sqrt(std::numbers::pi) * boost::math::tgamma(-lam - 0.5) / boost::math::tgamma(-lam);
        cp_err = std::max(cp_err, rel(t.cprime, cp));
        ++tr;
        if (t.lhs <= cp * t.rhs / t.cprime) ++tr_ok;
    }
    return {sw_ok == sw && tr_ok == tr && cp_err < 1e-12,
            "sandwich " + std::to_string(sw_ok) + "/" + std::to_string(sw) + ", trace " + std::to_string(tr_ok) +
                "/" + std::to_string(tr) + ", C' error " + fmt("%.1e", cp_err)};
}

Outcome bridging() {
    std::mt19937_64 rng(108);
    RandomFieldOptions opt;
    opt.shift = 0.3;
    double worst = 0.0, worst_const = 0.0;
    for (int d : {2, 3})
        for (int p = 0; p <= 1; ++p) {
            const auto u = random_polygauss(d, p, rng, opt);
            const std::vector<double> xs = cube_points(d, 3, rng, 0.8);
            const double ss[3] = {0.9, 0.99, 0.999};
            std::vector<std::vector<cplx>> vals;
            double cs[3];
            for (int i = 0; i < 3; ++i) {
                vals.push_back(fractional_bg_symbol(u, ss[i], xs));
                cs[i] = fractional_bg_constant(d, ss[i]);
            }
            // Richardson in h = 1 - s with ratio 10: first and second level
            auto rich = [](auto a, auto b, auto c) {
                const auto r1 = (10.0 * b - a) / 9.0, r2 = (10.0 * c - b) / 9.0;
                return (100.0 * r2 - r1) / 99.0;
            };
            const double target = std::pow(std::numbers::pi, d / 2.0) / (4.0 * boost::math::tgamma(d / 2.0 + 2));
            worst_const = std::max(worst_const, rel(rich(cs[0], cs[1], cs[2]), target));
            // D_{1,p} by literal composition of d and delta
            const auto D1 = bg_composition(u, 1);
            const auto nb = static_cast<std::size_t>(basis_blades(d, p).size());
            double num = 0.0, den = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                const auto ref = D1.eval(std::vector<double>(xs.begin() + k * d, xs.begin() + (k + 1) * d)).to_dense();
                for (std::size_t b = 0; b < nb; ++b) {
                    const cplx ex = rich(vals[0][k * nb + b], vals[1][k * nb + b], vals[2][k * nb + b]);
                    num = std::max(num, std::abs(ex - target * ref[b]));
                    den = std::max(den, std::abs(target * ref[b]));
                }
            }
            worst = std::max(worst, num / den);
        }
    return {worst <= 1e-2 && worst_const <= 1e-2,
            "constant " + fmt("%.1e", worst_const) + ", operator " + fmt("%.1e", worst)};
}

Outcome invariance() {
    std::mt19937_64 rng(109);
    RandomFieldOptions opt;
    opt.shift = 0.3;
    opt.complex_coeffs = true;
    double sim = 0.0;
    for (auto [n, p, lam] : {std::tuple{3, 0, -1.0}, {3, 1, 0.3}, {4, 1, -0.6}, {2, 0, 0.5}}) {
        const RepParams r{n, p, lam};
        const NormSpec spec{n, p, lam};
        const auto u = random_polygauss(n, p, rng, opt);
        const double base = invariant_norm_sq(u, spec);
        std::vector<double> b(n);
        for (int i = 0; i < n; ++i) b[i] = 0.35 * (i + 1) - 0.6;
        sim = std::max(sim, rel(invariant_norm_sq(act(GroupElement::translation(b), u, r), spec), base));
        sim = std::max(sim, rel(invariant_norm_sq(act(GroupElement::dilation(0.45), u, r), spec), base));
        sim = std::max(sim, rel(invariant_norm_sq(act(GroupElement::rotation(random_orthogonal(n, rng), -1), u, r), spec), base));
    }
    // inversion: n = 3, p = 0, lambda = -1 on [-4, 4]^3 with 128 points per axis, annulus data
    const RepParams r{3, 0, -1.0};
    const NormSpec spec{3, 0, -1.0};
    const Sampler u = [](const double* x, cplx* out) {
        const double rr = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        const double b = (rr > 0.5 && rr < 2.0) ? std::exp(-3.0 / ((rr - 0.5) * (2.0 - rr))) : 0.0;
        out[0] = b * cplx(1.0 + 0.5 * x[0], 0.3 * x[1] * x[2]);
    };
    const GridField gu = GridField::sample(u, 3, 0, 4.0, 128);
    const GridField gw = GridField::sample(act(GroupElement::inversion(), u, r), 3, 0, 4.0, 128);
    const double inv = rel(invariant_norm_sq(gw, spec), invariant_norm_sq(gu, spec));
    const double near0 = mass_fraction_within(gu, 0.5);
    // symmetry of Delta_{a,p} in the invariant inner product, lambda = (a-2)/2
    double sym = 0.0;
    for (auto [n, p, a] : {std::tuple{3, 0, 1.5}, {3, 1, 1.6}, {4, 1, 1.2}}) {
        const NormSpec s{n, p, (a - 2) / 2};
        const auto f = random_polygauss(n, p, rng), g = random_polygauss(n, p, rng);
        const cplx l = invariant_inner(delta_ap(f, a), g, s);
        const cplx rr = invariant_inner(f, delta_ap(g, a), s);
        sym = std::max(sym, std::abs(l - rr) / std::abs(l));
    }
    std::string d = "similarities " + fmt("%.1e", sim) + ", inversion " + fmt("%.1e", inv) + ", symmetry " + fmt("%.1e", sym);
    if (near0 > 0.0) d += " (warning: mass near the origin)";
    return {sim <= 1e-8 && inv <= 1e-3 && sym <= 1e-6, d};
}

}  // namespace

int main() {
    run(1, "Casimir identity", 60, casimir);
    run(2, "hyperbolic Laplacian identities", 60, hyperbolic);
    run(3, "Poisson solution", 300, poisson_solution);
    run(4, "isometry constant", 120, isometry);
    run(5, "Dirichlet-to-Neumann limit", 300, dtn);
    run(6, "ODE suite", 60, ode_suite);
    run(7, "norm machinery", 60, norms);
    run(8, "fractional to integer bridging", 180, bridging);
    run(9, "conformal invariance", 120, invariance);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
