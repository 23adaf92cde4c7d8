#include "bgx/formops.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "bgx/special.hpp"

namespace bgx {

namespace {

constexpr int kMaxBlades = 256;

std::vector<cplx> block_sum(const std::vector<cplx>& terms, int width) {
    // terms is [item][component]; sum over items per component in fixed order
    const std::size_t items = width == 0 ? 0 : terms.size() / width;
    std::vector<cplx> out(width);
    std::vector<cplx> col(items);
    for (int c = 0; c < width; ++c) {
        for (std::size_t i = 0; i < items; ++i) col[i] = terms[i * width + c];
        out[c] = pairwise_sum(col);
    }
    return out;
}

}  // namespace

XiOps::XiOps(int n, int p) : n_(n), p_(p) {
    const auto bp = basis_blades(n, p);
    const auto bu = basis_blades(n, p + 1);
    const auto bd = basis_blades(n, p - 1);
    nb_ = static_cast<int>(bp.size());
    nup_ = static_cast<int>(bu.size());
    ndn_ = static_cast<int>(bd.size());
    if (nb_ > kMaxBlades || nup_ > kMaxBlades || ndn_ > kMaxBlades)
        throw std::invalid_argument("XiOps: dimension too large");
    const BladeIndex ip(n, std::clamp(p, 0, n));
    const BladeIndex iu(n, std::clamp(p + 1, 0, n));
    const BladeIndex id(n, std::clamp(p - 1, 0, n));
    auto fill = [n](const std::vector<Blade>& src, const BladeIndex& dst, bool up,
                    std::vector<Entry>& tab) {
        tab.assign(src.size() * n, Entry{-1, 0});
        for (std::size_t b = 0; b < src.size(); ++b)
            for (int j = 1; j <= n; ++j) {
                Blade t;
                const int s = up ? eps_e_blade(j, src[b], t) : iota_e_blade(j, src[b], t);
                if (s != 0) tab[b * n + j - 1] = Entry{dst[t.mask()], s};
            }
    };
    if (nup_ > 0) {
        fill(bp, iu, true, up_);
        fill(bu, ip, false, up_dn_);
    }
    if (ndn_ > 0) {
        fill(bp, id, false, dn_);
        fill(bd, ip, true, dn_up_);
    }
}

void XiOps::apply(const double* xi, double c1, double c2, const cplx* in, cplx* out) const {
    std::fill(out, out + nb_, cplx{});
    std::array<cplx, kMaxBlades> t;
    if (c1 != 0.0 && nup_ > 0) {
        std::fill(t.begin(), t.begin() + nup_, cplx{});
        for (int b = 0; b < nb_; ++b)
            for (int j = 0; j < n_; ++j) {
                const Entry& e = up_[b * n_ + j];
                if (e.sign) t[e.target] += double(e.sign) * xi[j] * in[b];
            }
        for (int b = 0; b < nup_; ++b)
            for (int j = 0; j < n_; ++j) {
                const Entry& e = up_dn_[b * n_ + j];
                if (e.sign) out[e.target] += c1 * double(e.sign) * xi[j] * t[b];
            }
    }
    if (c2 != 0.0 && ndn_ > 0) {
        std::fill(t.begin(), t.begin() + ndn_, cplx{});
        for (int b = 0; b < nb_; ++b)
            for (int j = 0; j < n_; ++j) {
                const Entry& e = dn_[b * n_ + j];
                if (e.sign) t[e.target] += double(e.sign) * xi[j] * in[b];
            }
        for (int b = 0; b < ndn_; ++b)
            for (int j = 0; j < n_; ++j) {
                const Entry& e = dn_up_[b * n_ + j];
                if (e.sign) out[e.target] += c2 * double(e.sign) * xi[j] * t[b];
            }
    }
}

void BGSymbol::operator()(const double* xi, const cplx* in, cplx* out) const {
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) r2 += xi[k] * xi[k];
    const int nb = ops.size();
    if (r2 == 0.0) {
        std::fill(out, out + nb, cplx{});
        return;
    }
    const double h = 0.5 * d - p;
    ops.apply(xi, h + s, h - s, in, out);
    const double w = std::pow(r2, s - 1.0);
    for (int b = 0; b < nb; ++b) out[b] *= w;
}

double fractional_bg_constant(int d, double s) {
    return std::pow(std::numbers::pi, 0.5 * d) / (std::pow(4.0, s) * gamma(0.5 * d + s + 1.0));
}

double knapp_stein_norm_ratio(int d, double lambda) {
    return gamma(lambda) * std::pow(std::numbers::pi, 0.5 * d) * std::pow(4.0, lambda) /
           gamma(0.5 * d - lambda + 1.0);
}

namespace {

// i_xi eps_xi (c1) + eps_xi i_xi (c2) on a spectral PolyGauss field
PolyGaussField xi_form(const PolyGaussField& v, double c1, double c2) {
    const int n = v.dim(), p = v.degree();
    PolyGaussField out = same_envelope(v, p);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            PolyGaussField t = apply_linear(v, p, [=](const Multivector& w) {
                return cplx(c1) * iota_e(j, eps_e(k, w)) + cplx(c2) * eps_e(j, iota_e(k, w));
            });
            out += coordinate_mul(coordinate_mul(t, j), k);
        }
    return out;
}

}  // namespace

PolyGaussField bg_multiplier(const PolyGaussField& u, int N) {
    if (N < 1) throw std::invalid_argument("bg_multiplier: N >= 1 required");
    const double h = 0.5 * u.dim() - u.degree();
    PolyGaussField v = xi_form(fourier(u), h + N, h - N);
    for (int k = 1; k < N; ++k) {
        PolyGaussField r2 = same_envelope(v, v.degree());
        for (int j = 1; j <= u.dim(); ++j) r2 += coordinate_mul(coordinate_mul(v, j), j);
        v = r2;
    }
    return inverse_fourier(v);
}

GridField bg_multiplier(const GridField& u, int N, Exec ex) {
    if (N < 1) throw std::invalid_argument("bg_multiplier: N >= 1 required");
    const BGSymbol sym(u.dim(), u.degree(), N);
    return apply_multiplier(u, u.degree(), [&sym](const double* xi, const cplx* in, cplx* out) { sym(xi, in, out); }, false, ex);
}

std::vector<cplx> apply_symbol_at(const PolyGaussField& u, const Multiplier& m, int q,
                                  const std::vector<double>& xs, Exec ex,
                                  const SpectralQuadOptions& opt) {
    const int d = u.dim();
    const PolyGaussField uh = fourier(u);
    double shift = 0.0;
    for (const cplx& b : uh.beta()) shift += b.real() * b.real();
    shift = std::sqrt(shift) / uh.sigma();
    const double R = opt.radius_scale / std::sqrt(uh.sigma()) + shift;
    int m_sph = opt.sphere_m;
    if (m_sph <= 0) m_sph = d <= 2 ? 48 : (d == 3 ? 32 : 20);
    const NodeSet nodes = polar_nodes(d, R, m_sph, opt.ts_step);
    const PolyGaussField::Evaluator ev(uh);
    const int nb = ev.size();
    const int nq = static_cast<int>(basis_blades(d, q).size());
    if (nb > kMaxBlades) throw std::invalid_argument("apply_symbol_at: too many blades");
    std::vector<cplx> mu(nodes.size() * nq);
    for_each_index(ex, nodes.size(), [&](std::size_t i) {
        std::array<cplx, kMaxBlades> buf;
        ev(nodes.point(i), buf.data());
        m(nodes.point(i), buf.data(), mu.data() + i * nq);
        for (int c = 0; c < nq; ++c) mu[i * nq + c] *= nodes.w[i];
    });
    const std::size_t npts = xs.size() / d;
    std::vector<cplx> out(npts * nq);
    const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * d);
    constexpr std::size_t block = 512;
    const std::size_t nblocks = (nodes.size() + block - 1) / block;
    for (std::size_t k = 0; k < npts; ++k) {
        const double* x = xs.data() + k * d;
        std::vector<cplx> partial(nblocks * nq);
        for_each_index(ex, nblocks, [&](std::size_t bidx) {
            const std::size_t lo = bidx * block, hi = std::min(nodes.size(), lo + block);
            for (std::size_t i = lo; i < hi; ++i) {
                const double* xi = nodes.point(i);
                double ph = 0.0;
                for (int j = 0; j < d; ++j) ph += x[j] * xi[j];
                const cplx e(std::cos(ph), std::sin(ph));
                for (int c = 0; c < nq; ++c) partial[bidx * nq + c] += e * mu[i * nq + c];
            }
        });
        const auto s = block_sum(partial, nq);
        for (int c = 0; c < nq; ++c) out[k * nq + c] = norm * s[c];
    }
    return out;
}

std::vector<cplx> knapp_stein_pv(const PolyGaussField& u, double lambda,
                                 const std::vector<double>& xs, Exec ex, const PVOptions& opt) {
    if (!(lambda > -1.0 && lambda < 0.0))
        throw std::domain_error("knapp_stein_pv: lambda must lie in (-1, 0)");
    const int d = u.dim(), p = u.degree();
    const PolyGaussField::Evaluator ev(u);
    const XiOps K(d, p);
    const int nb = ev.size();
    const double sq = std::sqrt(u.sigma());
    std::vector<double> centre(d);
    for (int k = 0; k < d; ++k) centre[k] = u.beta()[k].real() / u.sigma();

    // inner fit radii and outer log-panel radii are shared by all points
    const std::array<double, 4> fit_r{0.25 * opt.r0, 0.5 * opt.r0, 0.75 * opt.r0, opt.r0};
    // inverse of the 4x4 matrix V_ik = r_i^{2k}, k = 1..4
    std::array<std::array<double, 4>, 4> Vinv{};
    {
        std::array<std::array<double, 8>, 4> A{};
        for (int i = 0; i < 4; ++i) {
            for (int k = 0; k < 4; ++k) A[i][k] = std::pow(fit_r[i], 2.0 * (k + 1));
            A[i][4 + i] = 1.0;
        }
        for (int c = 0; c < 4; ++c) {
            int piv = c;
            for (int r = c + 1; r < 4; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            std::swap(A[c], A[piv]);
            const double inv = 1.0 / A[c][c];
            for (auto& v : A[c]) v *= inv;
            for (int r = 0; r < 4; ++r) {
                if (r == c) continue;
                const double f = A[r][c];
                for (int k = 0; k < 8; ++k) A[r][k] -= f * A[c][k];
            }
        }
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) Vinv[i][k] = A[i][4 + k];
    }

    const std::size_t npts = xs.size() / d;
    std::vector<cplx> out(npts * nb);
    const double kbar = sphere_area(d) * (1.0 - 2.0 * p / double(d));

    for (std::size_t k = 0; k < npts; ++k) {
        const double* x = xs.data() + k * d;
        double dist = 0.0;
        for (int j = 0; j < d; ++j) dist += (x[j] - centre[j]) * (x[j] - centre[j]);
        const double R = std::sqrt(dist) + opt.reach / sq;
        const Rule1D lr = composite_gl(opt.panels, opt.order, std::log(opt.r0), std::log(R));
        std::vector<double> radii(fit_r.begin(), fit_r.end());
        for (double t : lr.x) radii.push_back(std::exp(t));
        std::map<int, SphereRule> rules;
        std::vector<int> mres(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            mres[i] = opt.angular_base + static_cast<int>(std::ceil(6.0 * radii[i] * sq));
            if (!rules.count(mres[i])) rules.emplace(mres[i], sphere_rule(d, mres[i]));
        }
        std::vector<cplx> ux(nb);
        ev(x, ux.data());
        std::vector<cplx> g(radii.size() * nb);
        for_each_index(ex, radii.size(), [&](std::size_t i) {
            const SphereRule& S = rules.at(mres[i]);
            const double r = radii[i];
            std::vector<cplx> terms(S.size() * nb);
            std::array<cplx, kMaxBlades> a, b, v, kv;
            double y[8];
            for (std::size_t q = 0; q < S.size(); ++q) {
                const double* w = S.point(q);
                for (int j = 0; j < d; ++j) y[j] = x[j] + r * w[j];
                ev(y, a.data());
                for (int j = 0; j < d; ++j) y[j] = x[j] - r * w[j];
                ev(y, b.data());
                for (int c = 0; c < nb; ++c) v[c] = 0.5 * (a[c] + b[c]) - ux[c];
                K.apply(w, 1.0, -1.0, v.data(), kv.data());
                for (int c = 0; c < nb; ++c) terms[q * nb + c] = S.w[q] * kv[c];
            }
            const auto s = block_sum(terms, nb);
            for (int c = 0; c < nb; ++c) g[i * nb + c] = s[c];
        });
        for (int c = 0; c < nb; ++c) {
            // polynomial fit on [0, r0]
            cplx inner = 0.0;
            for (int kk = 0; kk < 4; ++kk) {
                cplx coef = 0.0;
                for (int i = 0; i < 4; ++i) coef += Vinv[kk][i] * g[i * nb + c];
                const double e = 2.0 * lambda + 2.0 * (kk + 1);
                inner += coef * std::pow(opt.r0, e) / e;
            }
            std::vector<cplx> outer(lr.size());
            for (std::size_t i = 0; i < lr.size(); ++i) {
                const double r = radii[4 + i];
                outer[i] = lr.w[i] * std::pow(r, 2.0 * lambda) * g[(4 + i) * nb + c];
            }
            const cplx tail = -kbar * ux[c] * std::pow(R, 2.0 * lambda) / (-2.0 * lambda);
            out[k * nb + c] = inner + pairwise_sum(outer) + tail;
        }
    }
    return out;
}

std::vector<cplx> knapp_stein_symbol(const PolyGaussField& u, double lambda,
                                     const std::vector<double>& xs, Exec ex) {
    const BGSymbol sym(u.dim(), u.degree(), -lambda);
    const double c = knapp_stein_norm_ratio(u.dim(), lambda);
    return apply_symbol_at(
        u, [&](const double* xi, const cplx* in, cplx* out) {
            sym(xi, in, out);
            for (int b = 0; b < sym.ops.size(); ++b) out[b] *= c;
        },
        u.degree(), xs, ex);
}

std::vector<cplx> fractional_bg_pv(const PolyGaussField& u, double s, const std::vector<double>& xs,
                                   Exec ex, const PVOptions& opt) {
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("fractional_bg_pv: s must lie in (0, 1)");
    auto v = knapp_stein_pv(u, -s, xs, ex, opt);
    const double g = gamma(-s);
    for (auto& c : v) c /= g;
    return v;
}

std::vector<cplx> fractional_bg_symbol(const PolyGaussField& u, double s,
                                       const std::vector<double>& xs, Exec ex,
                                       const SpectralQuadOptions& opt) {
    const BGSymbol sym(u.dim(), u.degree(), s);
    const double c = fractional_bg_constant(u.dim(), s);
    return apply_symbol_at(
        u, [&](const double* xi, const cplx* in, cplx* out) {
            sym(xi, in, out);
            for (int b = 0; b < sym.ops.size(); ++b) out[b] *= c;
        },
        u.degree(), xs, ex, opt);
}

}  // namespace bgx
