#include "bgx/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bgx {

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// In-place unnormalized c2c transform over the n spatial axes of every blade.
void fft_inplace(std::vector<cplx>& d, int n, int N, int nb, int sign) {
    if (nb == 0) return;
    std::vector<int> dims(n, N);
    auto* buf = reinterpret_cast<fftw_complex*>(d.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(plan_mutex());
        plan = fftw_plan_many_dft(n, dims.data(), nb, buf, nullptr, nb, 1, buf, nullptr, nb, 1,
                                  sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lk(plan_mutex());
    fftw_destroy_plan(plan);
}

bool is_pow2(int v) { return v >= 4 && (v & (v - 1)) == 0; }

// (-1)^{sum of multi-index}
double parity(std::size_t pt, int n, int N) {
    int s = 0;
    for (int k = 0; k < n; ++k) {
        s += static_cast<int>(pt % N);
        pt /= N;
    }
    return (s & 1) ? -1.0 : 1.0;
}

// Multiplies every point by (-1)^{sum of multi-index}; moves index N/2 to the origin.
template <class G>
void modulate(G& g, int n, int N, int nb) {
    for (std::size_t pt = 0; pt < g.points(); ++pt)
        if (parity(pt, n, N) < 0)
            for (int b = 0; b < nb; ++b) g.at(pt)[b] = -g.at(pt)[b];
}

}  // namespace

GridField::GridField(int n, int p, double L, int N, Domain dom)
    : n_(n), p_(p), N_(N), L_(L), dom_(dom) {
    if (n < 1 || n > 6) throw std::invalid_argument("GridField: dimension out of range");
    if (!is_pow2(N)) throw std::invalid_argument("GridField: N must be a power of two >= 4");
    if (!(L > 0.0)) throw std::invalid_argument("GridField: L must be positive");
    nb_ = static_cast<int>(basis_blades(n, p).size());
    npts_ = 1;
    for (int k = 0; k < n; ++k) npts_ *= static_cast<std::size_t>(N);
    data_.assign(npts_ * nb_, cplx{});
}

double GridField::dual_spacing() const { return std::numbers::pi / L_; }

void GridField::coords(std::size_t pt, double* out) const {
    const double h = dom_ == Domain::physical ? spacing() : dual_spacing();
    const double o = dom_ == Domain::physical ? -L_ : -(N_ / 2) * dual_spacing();
    for (int k = n_ - 1; k >= 0; --k) {
        out[k] = o + h * static_cast<double>(pt % N_);
        pt /= N_;
    }
}

bool GridField::compatible(const GridField& o) const {
    return n_ == o.n_ && p_ == o.p_ && N_ == o.N_ && L_ == o.L_ && dom_ == o.dom_;
}

GridField& GridField::operator+=(const GridField& o) {
    if (!compatible(o)) throw std::invalid_argument("GridField: incompatible operands");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

GridField& GridField::operator-=(const GridField& o) {
    if (!compatible(o)) throw std::invalid_argument("GridField: incompatible operands");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

GridField& GridField::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(cplx s, GridField a) { return a *= s; }

GridField GridField::sample(const Sampler& f, int n, int p, double L, int N, Exec ex) {
    GridField g(n, p, L, N);
    for_each_index(ex, g.npts_, [&](std::size_t pt) {
        double x[8];
        g.coords(pt, x);
        f(x, g.at(pt));
    });
    return g;
}

GridField GridField::sample(const PolyGaussField& u, double L, int N, Exec ex) {
    const PolyGaussField::Evaluator ev(u);
    return sample([&ev](const double* x, cplx* out) { ev(x, out); }, u.dim(), u.degree(), L, N,
                  ex);
}

GridField GridField::sample_fourier(const PolyGaussField& u, double L, int N, Exec ex) {
    GridField s(u.dim(), u.degree(), L, N, Domain::spectral);
    const PolyGaussField::Evaluator ev(fourier(u));
    for_each_index(ex, s.npts_, [&](std::size_t pt) {
        double xi[8];
        s.coords(pt, xi);
        ev(xi, s.at(pt));
    });
    return s;
}

GridField fourier(const GridField& u) {
    if (u.domain() != Domain::physical) throw std::invalid_argument("fourier: expects physical data");
    GridField out = u;
    const int n = u.dim(), N = u.points_per_axis(), nb = u.blades();
    modulate(out, n, N, nb);
    fft_inplace(out.data(), n, N, nb, FFTW_FORWARD);
    const double scale =
        std::pow(u.spacing() / std::sqrt(2.0 * std::numbers::pi), static_cast<double>(n));
    for (std::size_t pt = 0; pt < u.points(); ++pt) {
        const double s = scale * parity(pt, n, N);
        for (int b = 0; b < nb; ++b) out.at(pt)[b] *= s;
    }
    GridField res(n, u.degree(), u.half_width(), N, Domain::spectral);
    res.data() = std::move(out.data());
    return res;
}

GridField inverse_fourier(const GridField& u) {
    if (u.domain() != Domain::spectral) throw std::invalid_argument("inverse_fourier: expects spectral data");
    const int n = u.dim(), N = u.points_per_axis(), nb = u.blades();
    GridField res(n, u.degree(), u.half_width(), N, Domain::physical);
    res.data() = u.data();
    const double scale =
        std::pow(u.spacing() / std::sqrt(2.0 * std::numbers::pi), static_cast<double>(n)) *
        static_cast<double>(u.points());
    for (std::size_t pt = 0; pt < u.points(); ++pt) {
        const double s = parity(pt, n, N) / scale;
        for (int b = 0; b < nb; ++b) res.at(pt)[b] *= s;
    }
    fft_inplace(res.data(), n, N, nb, FFTW_BACKWARD);
    modulate(res, n, N, nb);
    return res;
}

GridField apply_multiplier(const GridField& u, int q, const Multiplier& m, bool skip_zero, Exec ex) {
    const bool phys = u.domain() == Domain::physical;
    const GridField s = phys ? fourier(u) : u;
    GridField out(u.dim(), q, u.half_width(), u.points_per_axis(), Domain::spectral);
    const std::size_t zero = [&] {
        std::size_t z = 0;
        for (int k = 0; k < u.dim(); ++k) z = z * u.points_per_axis() + u.points_per_axis() / 2;
        return z;
    }();
    for_each_index(ex, s.points(), [&](std::size_t pt) {
        if (skip_zero && pt == zero) return;
        double xi[8];
        s.coords(pt, xi);
        m(xi, s.at(pt), out.at(pt));
    });
    return phys ? inverse_fourier(out) : out;
}

GridField derivative(const GridField& u, int j) {
    if (j < 1 || j > u.dim()) throw std::invalid_argument("derivative: axis out of range");
    const int nb = u.blades();
    // the Nyquist frequency -N/2 * pi/L is the most negative lattice value
    const double nyq = -(u.points_per_axis() / 2) * u.dual_spacing();
    const double u_h = u.dual_spacing();
    return apply_multiplier(
        u, u.degree(),
        [=](const double* xi, const cplx* in, cplx* out) {
            const double v = xi[j - 1] < 0.5 * (nyq + nyq + u_h) ? 0.0 : xi[j - 1];
            const cplx f(0.0, v);
            for (int b = 0; b < nb; ++b) out[b] = f * in[b];
        },
        false);
}

GridField coordinate_mul(const GridField& u, int j) {
    if (j < 1 || j > u.dim()) throw std::invalid_argument("coordinate_mul: axis out of range");
    GridField out = u;
    for (std::size_t pt = 0; pt < u.points(); ++pt) {
        double x[8];
        u.coords(pt, x);
        for (int b = 0; b < u.blades(); ++b) out.at(pt)[b] *= x[j - 1];
    }
    return out;
}

GridField euler(const GridField& u) {
    GridField out(u.dim(), u.degree(), u.half_width(), u.points_per_axis(), u.domain());
    for (int j = 1; j <= u.dim(); ++j) out += coordinate_mul(derivative(u, j), j);
    return out;
}

GridField apply_linear(const GridField& u, int q, const LinOp& op, Exec ex) {
    const DenseOp D = dense_op(u.dim(), u.degree(), q, op);
    GridField out(u.dim(), q, u.half_width(), u.points_per_axis(), u.domain());
    if (out.blades() == 0 || u.blades() == 0) return out;
    for_each_index(ex, u.points(), [&](std::size_t pt) { D.apply(u.at(pt), out.at(pt)); });
    return out;
}

GridField restrict_to_boundary(const GridField& u) {
    if (u.domain() != Domain::physical) throw std::invalid_argument("restrict_to_boundary: physical data expected");
    const int n = u.dim(), N = u.points_per_axis();
    if (n < 2) throw std::invalid_argument("restrict_to_boundary: need n >= 2");
    const int q = std::min(u.degree(), n - 1);
    GridField out(n - 1, q, u.half_width(), N);
    const BladeIndex in_idx(n, std::clamp(u.degree(), 0, n));
    const auto out_blades = basis_blades(n - 1, q);
    std::vector<int> src;
    for (const Blade& b : out_blades) src.push_back(in_idx[b.mask()]);
    for (std::size_t pt = 0; pt < out.points(); ++pt) {
        const std::size_t full = pt * N + N / 2;  // x_n index N/2 is x_n = 0
        for (std::size_t k = 0; k < src.size(); ++k) out.at(pt)[k] = u.at(full)[src[k]];
    }
    return out;
}

cplx grid_inner(const GridField& u, const GridField& v) {
    if (!u.compatible(v)) throw std::invalid_argument("grid_inner: incompatible operands");
    std::vector<cplx> acc(u.points());
    for (std::size_t pt = 0; pt < u.points(); ++pt) {
        cplx s = 0.0;
        for (int b = 0; b < u.blades(); ++b) s += u.at(pt)[b] * std::conj(v.at(pt)[b]);
        acc[pt] = s;
    }
    const double h = u.domain() == Domain::physical ? u.spacing() : u.dual_spacing();
    return pairwise_sum(acc) * std::pow(h, u.dim());
}

double grid_norm_sq(const GridField& u) { return grid_inner(u, u).real(); }

void interpolate(const GridField& u, const double* x, cplx* out) {
    constexpr int K = 6;
    const int n = u.dim(), N = u.points_per_axis(), nb = u.blades();
    const double h = u.spacing(), L = u.half_width();
    int base[8];
    double w[8][K];
    for (int k = 0; k < n; ++k) {
        const double t = (x[k] + L) / h;
        const int i0 = static_cast<int>(std::floor(t)) - K / 2 + 1;
        base[k] = i0;
        for (int a = 0; a < K; ++a) {
            double l = 1.0;
            for (int b = 0; b < K; ++b)
                if (b != a) l *= (t - (i0 + b)) / double(a - b);
            w[k][a] = l;
        }
    }
    std::fill(out, out + nb, cplx{});
    int total = 1;
    for (int k = 0; k < n; ++k) total *= K;
    for (int c = 0; c < total; ++c) {
        int r = c;
        std::size_t pt = 0;
        double wt = 1.0;
        for (int k = 0; k < n; ++k) {
            const int a = r % K;
            r /= K;
            const int idx = ((base[k] + a) % N + N) % N;
            pt = pt * N + idx;
            wt *= w[k][a];
        }
        for (int b = 0; b < nb; ++b) out[b] += wt * u.at(pt)[b];
    }
}

}  // namespace bgx
