#include "bgx/poisson.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bgx/sobolev.hpp"

namespace bgx {

namespace {

constexpr int kMaxBlades = 64;
using Buf = std::array<cplx, kMaxBlades>;

double max_abs(const cplx* v, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

// Moves p-forms on R^{n-1} into Lambda^p C^n and splits fhat at a unit tangential xihat:
// A = i eps fhat, B = eps i fhat, C = e_n ^ i fhat (all embedded).
class Embed {
public:
    Embed(int n, int p) : n_(n), p_(p), ops1_(n - 1, p) {
        const auto b1 = basis_blades(n - 1, p);
        nb1_ = static_cast<int>(b1.size());
        nb_ = static_cast<int>(basis_blades(n, p).size());
        if (nb_ > kMaxBlades || nb1_ > kMaxBlades) throw std::invalid_argument("Embed: too many blades");
        const BladeIndex in(n, p);
        for (const Blade& b : b1) emb_.push_back(in[b.mask()]);
        if (p >= 1) {
            const auto bd = basis_blades(n - 1, p - 1);
            nd1_ = static_cast<int>(bd.size());
            const BladeIndex id(n - 1, p - 1);
            io_.assign(static_cast<std::size_t>(nb1_) * (n - 1), {-1, 0});
            for (int b = 0; b < nb1_; ++b)
                for (int j = 1; j <= n - 1; ++j) {
                    Blade t;
                    const int s = iota_e_blade(j, b1[b], t);
                    if (s != 0) io_[b * (n - 1) + j - 1] = {id[t.mask()], s};
                }
            for (const Blade& b : bd) {
                Blade t;
                const int s = eps_e_blade(n, b, t);
                wn_.push_back({in[t.mask()], s});
            }
        }
    }
    int n() const { return n_; }
    int size() const { return nb_; }
    int size_boundary() const { return nb1_; }
    const std::vector<int>& tangential() const { return emb_; }

    void embed(const cplx* f, cplx* out) const {
        std::fill(out, out + nb_, cplx{});
        for (int b = 0; b < nb1_; ++b) out[emb_[b]] = f[b];
    }

    void split(const double* xh, const cplx* f, cplx* A, cplx* B, cplx* C) const {
        Buf a1, b1, f2;
        ops1_.apply(xh, 1.0, 0.0, f, a1.data());
        ops1_.apply(xh, 0.0, 1.0, f, b1.data());
        embed(a1.data(), A);
        embed(b1.data(), B);
        std::fill(C, C + nb_, cplx{});
        if (p_ < 1) return;
        std::fill(f2.begin(), f2.begin() + nd1_, cplx{});
        for (int b = 0; b < nb1_; ++b)
            for (int j = 0; j < n_ - 1; ++j) {
                const auto [t, s] = io_[b * (n_ - 1) + j];
                if (s) f2[t] += double(s) * xh[j] * f[b];
            }
        for (int d = 0; d < nd1_; ++d) C[wn_[d].first] += double(wn_[d].second) * f2[d];
    }

private:
    int n_, p_, nb_ = 0, nb1_ = 0, nd1_ = 0;
    XiOps ops1_;
    std::vector<int> emb_;
    std::vector<std::pair<int, int>> io_;  // i_{e_j} on Lambda^p C^{n-1}
    std::vector<std::pair<int, int>> wn_;  // e_n ^ on Lambda^{p-1} C^{n-1}
};

double k0_constant(const ModelParams& m) {
    const double a = m.a;
    return std::sqrt(2.0) * gamma((2.0 - a) / 2.0) / ((m.n - 2.0 * m.p - a) * gamma((1.0 - a) / 2.0));
}

// uhat at xi from fhat(xi'), given the split operator.
void symbol_eval(const ModelParams& m, double K0, const Embed& E, const double* xi, const cplx* fhat,
                 cplx* out) {
    const int n = m.n, p = m.p, nb = E.size();
    const double a = m.a;
    double k = 0.0;
    for (int j = 0; j < n - 1; ++j) k += xi[j] * xi[j];
    k = std::sqrt(k);
    if (k == 0.0) throw std::domain_error("poisson_symbol: xi' = 0");
    double xh[8];
    for (int j = 0; j < n - 1; ++j) xh[j] = xi[j] / k;
    const double t = xi[n - 1], r2 = k * k + t * t;
    Buf A, B, C;
    E.split(xh, fhat, A.data(), B.data(), C.data());
    const double pre = K0 * std::pow(k, 1.0 - a) * std::pow(r2, (a - 4.0) / 2.0);
    const double cA = pre * (n - 2.0 * p - a) * r2;
    const double cB = pre * ((n - 2.0 * p - a + 2.0) * k * k + (n - 2.0 * p + a - 2.0) * t * t);
    const double cC = pre * 2.0 * (2.0 - a) * t * k;
    for (int b = 0; b < nb; ++b) out[b] = cA * A[b] + cB * B[b] + cC * C[b];
}

// z^nu K_nu(z), continuous at z = 0
double bessel_g(double nu, double z) {
    if (z < 1e-100) return std::pow(2.0, nu - 1.0) * gamma(nu);
    if (z > 700.0) return 0.0;
    return std::pow(z, nu) * boost::math::cyl_bessel_k(nu, z);
}

// cos and sin of a tanh-sinh node on (0, pi/2) or (-pi/2, pi/2), taken from the endpoint gap
struct Angle {
    double s, c;
};
Angle angle_half(const Rule1D& r, std::size_t i) {
    const double g = r.gap[i];
    if (r.x[i] < 0.25 * std::numbers::pi) return {std::sin(g), std::cos(g)};
    return {std::cos(g), std::sin(g)};
}
Angle angle_full(const Rule1D& r, std::size_t i) {
    // gap measured from +-pi/2
    const double g = r.gap[i];
    const double sg = r.x[i] < 0 ? -1.0 : 1.0;
    return {sg * std::cos(g), std::sin(g)};
}

std::vector<cplx> column_sums(const std::vector<cplx>& rows, std::size_t width) {
    const std::size_t items = width == 0 ? 0 : rows.size() / width;
    std::vector<cplx> out(width), col(items);
    for (std::size_t c = 0; c < width; ++c) {
        for (std::size_t i = 0; i < items; ++i) col[i] = rows[i * width + c];
        out[c] = pairwise_sum(col);
    }
    return out;
}

}  // namespace

void check_instance(const BVPInstance& inst) {
    const ModelParams& m = inst.params;
    if (m.n < 2 || m.n > 7) throw std::invalid_argument("BVPInstance: n out of range");
    if (m.p < 0 || m.p > m.n - 1) throw std::invalid_argument("BVPInstance: p out of range");
    if (!m.closed_form_ok()) throw std::domain_error("BVPInstance: requires a < 1 and n - 2p - a > 0");
    if (!inst.f_sampled && (inst.f.dim() != m.n - 1 || inst.f.degree() != m.p))
        throw std::invalid_argument("BVPInstance: datum must be a p-form on R^{n-1}");
}

namespace {

void check_datum(const ModelParams& m, const PolyGaussField& f) {
    BVPInstance inst;
    inst.params = m;
    inst.f = f;
    check_instance(inst);
}

}  // namespace

void poisson_symbol(const ModelParams& m, const double* xi, const cplx* fhat, cplx* out) {
    check_datum(m, PolyGaussField(m.n - 1, m.p));
    const Embed E(m.n, m.p);
    symbol_eval(m, k0_constant(m), E, xi, fhat, out);
}

std::vector<cplx> poisson_kernel_apply(const BVPInstance& inst, const std::vector<double>& xs, Exec ex,
                                       const KernelOptions& opt) {
    check_instance(inst);
    const ModelParams& m = inst.params;
    const int n = m.n, p = m.p;
    const double a = m.a;
    const Embed E(n, p);
    const XiOps K(n, p);
    const int nb = E.size();
    std::optional<PolyGaussField::Evaluator> ev;
    if (!inst.f_sampled) ev.emplace(inst.f);
    auto datum = [&](const double* y, cplx* out) {
        if (inst.f_sampled) (*inst.f_sampled)(y, out);
        else (*ev)(y, out);
    };
    const double scale = inst.f_sampled ? inst.data_scale : std::sqrt(inst.f.sigma());

    // r = |x_n| tan(theta): the kernel becomes sin^{n-2} cos^{-a} times the unit-vector operator
    const Rule1D th = tanh_sinh(0.0, 0.5 * std::numbers::pi, opt.ts_step, opt.tmax);
    std::map<int, SphereRule> spheres;
    const int mlo = n - 1 == 1 ? 1 : opt.angular_base;
    const int mhi = n - 1 == 1 ? 1 : opt.angular_max;
    for (int q = mlo; q <= mhi; ++q) spheres.emplace(q, sphere_rule(n - 1, q));

    const double cp = c_poisson(m);
    const std::size_t npts = xs.size() / n;
    std::vector<cplx> out(npts * nb);
    for (std::size_t k = 0; k < npts; ++k) {
        const double* x = xs.data() + k * n;
        const double xn = x[n - 1];
        if (xn == 0.0) throw std::domain_error("poisson_kernel_apply: x_n = 0");
        const double sg = xn > 0 ? 1.0 : -1.0;
        std::vector<cplx> rows(th.size() * nb);
        for_each_index(ex, th.size(), [&](std::size_t i) {
            const Angle an = angle_half(th, i);
            const double r = std::abs(xn) * an.s / an.c;
            const double w = th.w[i] * std::pow(an.s, n - 2) * std::pow(an.c, -a);
            if (!(w > 0.0) || !std::isfinite(r)) return;
            int q = mlo;
            if (n - 1 > 1)
                q = static_cast<int>(std::min<double>(mhi, opt.angular_base + std::ceil(opt.angular_growth * r * scale)));
            const SphereRule& S = spheres.at(q);
            Buf fy, fe, kv, acc{};
            double y[8], wv[8];
            for (std::size_t j = 0; j < S.size(); ++j) {
                const double* om = S.point(j);
                for (int c = 0; c < n - 1; ++c) {
                    y[c] = x[c] + r * om[c];
                    wv[c] = -an.s * om[c];
                }
                wv[n - 1] = sg * an.c;
                datum(y, fy.data());
                E.embed(fy.data(), fe.data());
                K.apply(wv, 1.0, -1.0, fe.data(), kv.data());
                for (int b = 0; b < nb; ++b) acc[b] += S.w[j] * kv[b];
            }
            for (int b = 0; b < nb; ++b) rows[i * nb + b] = w * acc[b];
        });
        const auto s = column_sums(rows, nb);
        for (int b = 0; b < nb; ++b) out[k * nb + b] = cp * s[b];
    }
    return out;
}

PoissonSpectral::PoissonSpectral(const ModelParams& m, const PolyGaussField& f, const SpectralPathOptions& opt)
    : m_(m) {
    check_datum(m, f);
    fh_ = fourier(f);
    nb_ = static_cast<int>(basis_blades(m.n, m.p).size());
    K0_ = k0_constant(m);
    double shift = 0.0;
    for (const cplx& b : fh_.beta()) shift += b.real() * b.real();
    const double R = opt.radius_scale / std::sqrt(fh_.sigma()) + std::sqrt(shift) / fh_.sigma();
    radial_ = tanh_sinh(0.0, R, opt.ts_step);
    const int d = m.n - 1;
    int q = opt.sphere_m;
    if (q <= 0) q = d == 1 ? 1 : d == 2 ? 64 : d == 3 ? 32 : 14;
    sphere_ = sphere_rule(d, q);
}

void PoissonSpectral::symbol(const double* xi, cplx* out) const {
    const Embed E(m_.n, m_.p);
    const PolyGaussField::Evaluator ev(fh_);
    Buf fh;
    ev(xi, fh.data());
    symbol_eval(m_, K0_, E, xi, fh.data(), out);
}

std::array<cplx, 3> PoissonSpectral::coefficients(double z, double sg) const {
    // partial inverse transform in xi_n of the three terms, with
    // int e^{ixt} (k^2+t^2)^{-mu} dt = 2 sqrt(pi)/Gamma(mu) (|x|/2k)^{mu-1/2} K_{mu-1/2}(k|x|)
    const double a = m_.a, n = m_.n, p = m_.p;
    const double nu1 = (1.0 - a) / 2.0, nu2 = (3.0 - a) / 2.0;
    const double q = K0_ / std::sqrt(2.0 * std::numbers::pi);
    const double sp = 2.0 * std::sqrt(std::numbers::pi);
    const double e1 = sp * rgamma((2.0 - a) / 2.0) * std::pow(2.0, -nu1);
    const double e2 = sp * rgamma((4.0 - a) / 2.0) * std::pow(2.0, -nu2);
    const double g1 = bessel_g(nu1, z), g2 = bessel_g(nu2, z);
    const cplx cA = q * (n - 2 * p - a) * e1 * g1;
    const cplx cB = q * ((n - 2 * p + a - 2.0) * e1 * g1 + (4.0 - 2.0 * a) * e2 * g2);
    const cplx cC = cplx(0.0, sg) * q * 2.0 * (2.0 - a) * e2 * z * g1;
    return {cA, cB, cC};
}

std::vector<cplx> PoissonSpectral::accumulate(const std::vector<double>& xps, const std::vector<double>& xns,
                                              bool subtract, Exec ex) const {
    const int n = m_.n, d = n - 1, nb = nb_;
    const std::size_t npts = xns.size();
    const Embed E(n, m_.p);
    const PolyGaussField::Evaluator ev(fh_);
    std::vector<cplx> rows(radial_.size() * npts * nb);
    for_each_index(ex, radial_.size(), [&](std::size_t i) {
        const double k = radial_.x[i];
        const double wr = radial_.w[i] * std::pow(k, d - 1);
        std::vector<std::array<cplx, 3>> co(npts);
        for (std::size_t t = 0; t < npts; ++t) {
            co[t] = coefficients(k * std::abs(xns[t]), xns[t] < 0 ? -1.0 : 1.0);
            if (subtract) {
                co[t][0] -= 1.0;
                co[t][1] -= 1.0;
            }
        }
        cplx* row = rows.data() + i * npts * nb;
        Buf fh, A, B, C;
        double xi[8];
        for (std::size_t j = 0; j < sphere_.size(); ++j) {
            const double* om = sphere_.point(j);
            for (int c = 0; c < d; ++c) xi[c] = k * om[c];
            ev(xi, fh.data());
            E.split(om, fh.data(), A.data(), B.data(), C.data());
            const double w = wr * sphere_.w[j];
            for (std::size_t t = 0; t < npts; ++t) {
                double ph = 0.0;
                for (int c = 0; c < d; ++c) ph += xps[t * d + c] * xi[c];
                const cplx e = w * cplx(std::cos(ph), std::sin(ph));
                const auto& [cA, cB, cC] = co[t];
                for (int b = 0; b < nb; ++b) row[t * nb + b] += e * (cA * A[b] + cB * B[b] + cC * C[b]);
            }
        }
    });
    auto out = column_sums(rows, npts * nb);
    const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * d);
    for (auto& v : out) v *= norm;
    return out;
}

std::vector<cplx> PoissonSpectral::values(const std::vector<double>& xs, Exec ex) const {
    const int n = m_.n;
    const std::size_t npts = xs.size() / n;
    std::vector<double> xps, xns;
    for (std::size_t k = 0; k < npts; ++k) {
        for (int c = 0; c < n - 1; ++c) xps.push_back(xs[k * n + c]);
        xns.push_back(xs[k * n + n - 1]);
    }
    return accumulate(xps, xns, false, ex);
}

std::vector<std::vector<cplx>> PoissonSpectral::boundary_differences(const std::vector<double>& x_prime,
                                                                     const std::vector<double>& xns,
                                                                     Exec ex) const {
    if (static_cast<int>(x_prime.size()) != m_.n - 1)
        throw std::invalid_argument("boundary_differences: x' has wrong size");
    std::vector<double> xps;
    for (std::size_t t = 0; t < xns.size(); ++t) xps.insert(xps.end(), x_prime.begin(), x_prime.end());
    const auto flat = accumulate(xps, xns, true, ex);
    std::vector<std::vector<cplx>> out(xns.size());
    for (std::size_t t = 0; t < xns.size(); ++t) out[t].assign(flat.begin() + t * nb_, flat.begin() + (t + 1) * nb_);
    return out;
}

SpectralResiduals spectral_residuals(const ModelParams& m, const PolyGaussField& f, Exec ex) {
    check_datum(m, f);
    const int n = m.n, p = m.p, d = n - 1;
    const double a = m.a;
    const Embed E(n, p);
    const int nb = E.size();
    const double K0 = k0_constant(m);
    const PolyGaussField fh = fourier(f);
    const PolyGaussField::Evaluator ev(fh);
    const double w0 = 1.0 / std::sqrt(fh.sigma());
    std::vector<double> centre(d);
    for (int c = 0; c < d; ++c) centre[c] = fh.beta()[c].real() / fh.sigma();

    std::vector<std::vector<double>> samples;
    const SphereRule dirs = sphere_rule(d, d == 1 ? 1 : 3);
    for (double rho : {0.2, 0.6, 1.2, 2.0})
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            std::vector<double> xi(d);
            double k = 0.0;
            for (int c = 0; c < d; ++c) {
                xi[c] = centre[c] + rho * w0 * dirs.point(j)[c];
                k += xi[c] * xi[c];
            }
            if (std::sqrt(k) > 1e-3 * w0) samples.push_back(xi);
        }

    const Rule1D th = tanh_sinh(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi, 1.0 / 32, 5.0);
    std::vector<double> berr(samples.size()), fmax(samples.size()), perr(samples.size());
    for_each_index(ex, samples.size(), [&](std::size_t si) {
        const auto& xp = samples[si];
        double k = 0.0;
        for (double v : xp) k += v * v;
        k = std::sqrt(k);
        Buf fhv, fe, uh;
        ev(xp.data(), fhv.data());
        E.embed(fhv.data(), fe.data());
        fmax[si] = max_abs(fe.data(), nb);
        double xi[8];
        for (int c = 0; c < d; ++c) xi[c] = xp[c];
        // restriction: (2 pi)^{-1/2} int uhat dxi_n with xi_n = k tan(theta)
        std::vector<cplx> acc(th.size() * nb);
        for (std::size_t i = 0; i < th.size(); ++i) {
            const Angle an = angle_full(th, i);
            xi[d] = k * an.s / an.c;
            symbol_eval(m, K0, E, xi, fhv.data(), uh.data());
            const double w = th.w[i] * k / (an.c * an.c);
            for (int b = 0; b < nb; ++b) acc[i * nb + b] = w * uh[b];
        }
        const auto I = column_sums(acc, nb);
        double e = 0.0;
        for (int b = 0; b < nb; ++b) e = std::max(e, std::abs(I[b] / std::sqrt(2.0 * std::numbers::pi) - fe[b]));
        berr[si] = e;

        // Fourier side of Delta_{a,p}: x_n -> i d/dxi_n, d/dx_j -> i xi_j
        std::vector<double> xpn(n, 0.0), en(n, 0.0);
        for (int c = 0; c < d; ++c) xpn[c] = xp[c];
        en[n - 1] = 1.0;
        double worst = 0.0;
        for (double tz : {-3.0, -1.0, -0.3, 0.0, 0.2, 0.8, 2.5, 7.0}) {
            const double t = tz * k;
            const double h = 0.01 * std::sqrt(k * k + t * t);
            std::array<Buf, 7> U;
            for (int j = -3; j <= 3; ++j) {
                xi[d] = t + j * h;
                symbol_eval(m, K0, E, xi, fhv.data(), U[j + 3].data());
            }
            std::vector<cplx> u0(nb), u1(nb), u2(nb);
            for (int b = 0; b < nb; ++b) {
                auto g = [&](int j) { return U[j + 3][b]; };
                u0[b] = g(0);
                u1[b] = (-g(-3) + 9.0 * g(-2) - 45.0 * g(-1) + 45.0 * g(1) - 9.0 * g(2) + g(3)) / (60.0 * h);
                u2[b] = (2.0 * g(-3) - 27.0 * g(-2) + 270.0 * g(-1) - 490.0 * g(0) + 270.0 * g(1) - 27.0 * g(2) +
                         2.0 * g(3)) /
                        (180.0 * h * h);
            }
            const Multivector V0 = Multivector::from_dense(n, p, u0);
            const Multivector V1 = Multivector::from_dense(n, p, u1);
            const Multivector V2 = Multivector::from_dense(n, p, u2);
            const Multivector T1 = cplx(k * k + t * t) * V2;
            const Multivector T2 = cplx(-(a - 4.0) * t) * V1;
            const Multivector T3 = cplx(-2.0) * (iota_e(n, eps(xpn, V1)) + eps_e(n, iota(xpn, V1)));
            const Multivector T4 = cplx(-(a - 2.0)) * V0;
            const Multivector T5 = cplx(-double(n - 2 * p)) * eps_e(n, iota_e(n, V0));
            const double sc = T1.max_abs() + T2.max_abs() + T3.max_abs() + T4.max_abs() + T5.max_abs();
            const double r = (T1 + T2 + T3 + T4 + T5).max_abs();
            if (sc > 0.0) worst = std::max(worst, r / sc);
        }
        perr[si] = worst;
    });
    SpectralResiduals res;
    const double F = samples.empty() ? 0.0 : *std::max_element(fmax.begin(), fmax.end());
    for (std::size_t si = 0; si < samples.size(); ++si) {
        if (F > 0.0) res.boundary = std::max(res.boundary, berr[si] / F);
        res.pde = std::max(res.pde, perr[si]);
    }
    return res;
}

double solution_norm_sq(const ModelParams& m, const PolyGaussField& f, Exec ex) {
    check_datum(m, f);
    const int n = m.n, p = m.p, d = n - 1;
    const double a = m.a, lam = (a - 2.0) / 2.0, h = 0.5 * n - p;
    const Embed E(n, p);
    const XiOps ops(n, p);
    const int nb = E.size();
    const double K0 = k0_constant(m);
    const PolyGaussField fh = fourier(f);
    const PolyGaussField::Evaluator ev(fh);

    double shift = 0.0;
    for (const cplx& b : fh.beta()) shift += b.real() * b.real();
    const double R = 10.0 / std::sqrt(fh.sigma()) + std::sqrt(shift) / fh.sigma();
    const Rule1D radial = tanh_sinh(0.0, R, 1.0 / 24);
    const SphereRule sph = sphere_rule(d, d == 1 ? 1 : d == 2 ? 24 : d == 3 ? 12 : 8);
    const Rule1D th = tanh_sinh(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi, 1.0 / 24, 5.0);

    // <S uhat, uhat> with S = |xi|^{-2 lam - 2} [(h - lam) i eps + (h + lam) eps i] and
    // uhat = alpha A + beta B + gamma C. Since eps i = |xi|^2 - i eps and
    // i_xi eps_xi = P0 + t P1 + t^2 P2 for xi = (xi', t), each xi' needs three Gram matrices.
    std::vector<double> rows(radial.size());
    for_each_index(ex, radial.size(), [&](std::size_t i) {
        const double k = radial.x[i];
        const double wr = radial.w[i] * std::pow(k, d - 1);
        std::vector<double> acc;
        acc.reserve(sph.size() * th.size());
        Buf fhv;
        std::array<Buf, 3> X, P0, P2, Q;
        double xi[8] = {}, en[8] = {}, xe[8] = {};
        en[n - 1] = 1.0;
        for (std::size_t j = 0; j < sph.size(); ++j) {
            for (int c = 0; c < d; ++c) xi[c] = xe[c] = k * sph.point(j)[c];
            xi[d] = 0.0;
            xe[d] = 1.0;
            ev(xi, fhv.data());
            E.split(sph.point(j), fhv.data(), X[0].data(), X[1].data(), X[2].data());
            std::array<std::array<double, 3>, 3> G0{}, G1{}, G2{}, H{};
            for (int u = 0; u < 3; ++u) {
                ops.apply(xi, 1.0, 0.0, X[u].data(), P0[u].data());
                ops.apply(en, 1.0, 0.0, X[u].data(), P2[u].data());
                ops.apply(xe, 1.0, 0.0, X[u].data(), Q[u].data());
            }
            for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v) {
                    cplx g0 = 0.0, g1 = 0.0, g2 = 0.0, hh = 0.0;
                    for (int b = 0; b < nb; ++b) {
                        const cplx xv = std::conj(X[v][b]);
                        g0 += P0[u][b] * xv;
                        g2 += P2[u][b] * xv;
                        g1 += (Q[u][b] - P0[u][b] - P2[u][b]) * xv;
                        hh += X[u][b] * xv;
                    }
                    // coefficients are real, so only the real parts survive the symmetric sum
                    G0[u][v] = g0.real();
                    G1[u][v] = g1.real();
                    G2[u][v] = g2.real();
                    H[u][v] = hh.real();
                }
            for (std::size_t q = 0; q < th.size(); ++q) {
                const Angle an = angle_full(th, q);
                const double t = k * an.s / an.c, r2 = k * k + t * t;
                const double pre = K0 * std::pow(k, 1.0 - a) * std::pow(r2, (a - 4.0) / 2.0);
                const std::array<double, 3> co{pre * (n - 2.0 * p - a) * r2,
                                               pre * ((n - 2.0 * p - a + 2.0) * k * k + (n - 2.0 * p + a - 2.0) * t * t),
                                               pre * 2.0 * (2.0 - a) * t * k};
                double form = 0.0;
                for (int u = 0; u < 3; ++u)
                    for (int v = 0; v < 3; ++v) {
                        const double ie = G0[u][v] + t * G1[u][v] + t * t * G2[u][v];
                        form += co[u] * co[v] * ((h - lam) * ie + (h + lam) * (r2 * H[u][v] - ie));
                    }
                form *= std::pow(r2, -lam - 1.0);
                acc.push_back(wr * sph.w[j] * th.w[q] * k / (an.c * an.c) * form);
            }
        }
        rows[i] = pairwise_sum(acc);
    });
    return pairwise_sum(rows);
}

double boundary_norm_sq(const ModelParams& m, const PolyGaussField& f, Exec ex) {
    check_datum(m, f);
    const InvariantSymbol S({m.n - 1, m.p, (m.a - 1.0) / 2.0});
    return spectral_form(f, f, [&](const double* xi, const cplx* in, cplx* out) { S(xi, in, out); }, ex)
        .real();
}

double isometry_ratio(const BVPInstance& inst, Exec ex) {
    check_instance(inst);
    if (inst.f.zero()) throw std::invalid_argument("isometry_ratio: zero boundary datum");
    return solution_norm_sq(inst.params, inst.f, ex) / boundary_norm_sq(inst.params, inst.f, ex);
}

DtNResult dtn_limit(const BVPInstance& inst, const std::vector<double>& x_prime,
                    const std::vector<double>& xns, bool unchecked, Exec ex) {
    check_instance(inst);
    const ModelParams& m = inst.params;
    if (!unchecked && !m.dtn_ok()) throw std::domain_error("dtn_limit: requires s in (0,1) and p <= (n-3)/2");
    if (xns.size() < 3) throw std::invalid_argument("dtn_limit: need at least three x_n values");
    const double s = m.s();
    // with unchecked set, d_{s,p} is evaluated directly from its formula
    const double dn = unchecked ? 1.0 / (gamma(-s) * c_poisson(m)) : d_dtn(m);
    const Embed E(m.n, m.p);
    const auto& tan_idx = E.tangential();
    const int nt = E.size_boundary();

    DtNResult res;
    res.reference = fractional_bg_symbol(inst.f, s, x_prime, ex);
    const double rnorm = max_abs(res.reference.data(), nt);
    const PoissonSpectral ps(m, inst.f);
    const auto diffs = ps.boundary_differences(x_prime, xns, ex);
    auto rel = [&](const std::vector<cplx>& v) {
        double e = 0.0;
        for (int b = 0; b < nt; ++b) e = std::max(e, std::abs(v[b] - res.reference[b]));
        return rnorm > 0.0 ? e / rnorm : e;
    };
    for (std::size_t t = 0; t < xns.size(); ++t) {
        DtNRow row;
        row.xn = xns[t];
        // tangential part of d x_n^{a-1} (u - f)
        for (int b = 0; b < nt; ++b) row.value.push_back(dn * std::pow(xns[t], m.a - 1.0) * diffs[t][tan_idx[b]]);
        row.rel_err = rel(row.value);
        res.rows.push_back(row);
    }
    const auto& D1 = res.rows[res.rows.size() - 3].value;
    const auto& D2 = res.rows[res.rows.size() - 2].value;
    const auto& D3 = res.rows.back().value;
    double n12 = 0.0, n23 = 0.0;
    for (int b = 0; b < nt; ++b) {
        n12 = std::max(n12, std::abs(D1[b] - D2[b]));
        n23 = std::max(n23, std::abs(D2[b] - D3[b]));
    }
    const double step = std::log10(xns[xns.size() - 2] / xns.back());
    res.extrapolated = D3;
    if (n23 > 0.0 && n12 > 0.0) {
        res.kappa = std::log10(n12 / n23) / step;
        const double fac = std::pow(10.0, res.kappa * step) - 1.0;
        if (fac > 0.0)
            for (int b = 0; b < nt; ++b) res.extrapolated[b] = D3[b] + (D3[b] - D2[b]) / fac;
    }
    res.extrapolated_err = rel(res.extrapolated);
    res.monotone = true;
    for (std::size_t t = 1; t < res.rows.size(); ++t)
        if (!(res.rows[t].rel_err < res.rows[t - 1].rel_err)) res.monotone = false;
    return res;
}

bool Report::passed(double tol_residual, double tol_two_path) const {
    const bool iso = std::abs(isometry_measured - isometry_closed) <= 1e-3 * isometry_closed;
    return boundary <= tol_residual && pde <= tol_residual && two_path <= tol_two_path && finite_norm && iso;
}

Report verify_solution(const BVPInstance& inst, int points, unsigned long long seed, Exec ex) {
    check_instance(inst);
    const ModelParams& m = inst.params;
    Report r;
    r.params = m;
    r.in_window = m.dirichlet_ok();
    if (inst.f.zero()) {
        r.finite_norm = true;
        return r;
    }
    const auto sr = spectral_residuals(m, inst.f, ex);
    r.boundary = sr.boundary;
    r.pde = sr.pde;

    const int n = m.n;
    const double w = 1.0 / std::sqrt(inst.f.sigma());
    std::vector<double> centre(n - 1);
    for (int c = 0; c < n - 1; ++c) centre[c] = inst.f.beta()[c].real() / inst.f.sigma();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0), H(0.2, 1.5);
    std::vector<double> xs;
    for (int k = 0; k < points; ++k) {
        for (int c = 0; c < n - 1; ++c) xs.push_back(centre[c] + w * U(rng));
        xs.push_back((U(rng) < 0 ? -1.0 : 1.0) * w * H(rng));
    }
    BVPInstance kinst = inst;
    kinst.f_sampled.reset();
    const auto kv = poisson_kernel_apply(kinst, xs, ex);
    const auto sv = PoissonSpectral(m, inst.f).values(xs, ex);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < kv.size(); ++i) {
        num = std::max(num, std::abs(kv[i] - sv[i]));
        den = std::max(den, std::abs(sv[i]));
    }
    r.two_path = den > 0.0 ? num / den : num;

    r.solution_norm_sq = solution_norm_sq(m, inst.f, ex);
    // outside the unitary window the form is indefinite, so only finiteness is asked for
    r.finite_norm = std::isfinite(r.solution_norm_sq) && r.solution_norm_sq != 0.0;
    r.isometry_measured = r.solution_norm_sq / boundary_norm_sq(m, inst.f, ex);
    r.isometry_closed = isometry_const(m);
    if (m.dtn_ok()) {
        const auto dt = dtn_limit(inst, centre, {1e-1, 1e-2, 1e-3}, false, ex);
        for (const auto& row : dt.rows) r.dtn_table.emplace_back(row.xn, row.rel_err);
    }
    return r;
}

GridField poisson_spectral(const ModelParams& m, const GridField& f) {
    if (f.dim() != m.n - 1 || f.degree() != m.p) throw std::invalid_argument("poisson_spectral: datum shape");
    if (!m.closed_form_ok()) throw std::domain_error("poisson_spectral: requires a < 1 and n - 2p - a > 0");
    const GridField fh = f.domain() == Domain::physical ? fourier(f) : f;
    const int n = m.n, N = f.points_per_axis();
    GridField out(n, m.p, f.half_width(), N, Domain::spectral);
    const Embed E(n, m.p);
    const double K0 = k0_constant(m);
    for_each_index(Exec::parallel, out.points(), [&](std::size_t pt) {
        double xi[8];
        out.coords(pt, xi);
        double k = 0.0;
        for (int c = 0; c < n - 1; ++c) k += xi[c] * xi[c];
        if (k == 0.0) return;
        symbol_eval(m, K0, E, xi, fh.at(pt / N), out.at(pt));
    });
    return out;
}

double grid_boundary_residual(const ModelParams& m, const GridField& f) {
    const GridField uh = poisson_spectral(m, f);
    const GridField fh = f.domain() == Domain::physical ? fourier(f) : f;
    const int N = f.points_per_axis(), nb = uh.blades();
    const Embed E(m.n, m.p);
    const double dt = uh.dual_spacing() / std::sqrt(2.0 * std::numbers::pi);
    double err = 0.0, scale = 0.0;
    for (std::size_t q = 0; q < fh.points(); ++q) {
        Buf fe;
        E.embed(fh.at(q), fe.data());
        scale = std::max(scale, max_abs(fe.data(), nb));
        double xi[8];
        uh.coords(q * N, xi);
        double k = 0.0;
        for (int c = 0; c < m.n - 1; ++c) k += xi[c] * xi[c];
        if (k == 0.0) continue;
        for (int b = 0; b < nb; ++b) {
            cplx s = 0.0;
            for (int t = 0; t < N; ++t) s += uh.at(q * N + t)[b];
            err = std::max(err, std::abs(s * dt - fe[b]));
        }
    }
    return scale > 0.0 ? err / scale : err;
}

}  // namespace bgx
