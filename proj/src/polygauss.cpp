#include "bgx/polygauss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bgx {

PolyGaussField::PolyGaussField(int n, int p, double sigma)
    : n_(n), p_(p), sigma_(sigma), beta_(n, 0.0) {
    if (n < 1 || n > kMaxVars) throw std::invalid_argument("PolyGaussField: dimension out of range");
    if (p < -1 || p > n + 1) throw std::invalid_argument("PolyGaussField: degree out of range");
    if (!(sigma > 0.0)) throw std::invalid_argument("PolyGaussField: sigma must be positive");
}

PolyGaussField PolyGaussField::gaussian(const Multivector& w, double sigma) {
    PolyGaussField f(w.dim(), w.degree(), sigma);
    for (const auto& [b, c] : w.coeffs()) f.add(b, Poly::constant(w.dim(), c));
    return f;
}

void PolyGaussField::set_envelope(double sigma, std::vector<cplx> beta, cplx gamma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("PolyGaussField: sigma must be positive");
    if (static_cast<int>(beta.size()) != n_) throw std::invalid_argument("beta size mismatch");
    sigma_ = sigma;
    beta_ = std::move(beta);
    gamma_ = gamma;
}

Poly PolyGaussField::component(Blade b) const {
    auto it = comps_.find(b);
    return it == comps_.end() ? Poly(n_) : it->second;
}

void PolyGaussField::add(Blade b, const Poly& q) {
    if (b.degree() != p_ || b.max_index() > n_)
        throw std::invalid_argument("PolyGaussField: blade of wrong degree");
    if (q.nvars() != n_) throw std::invalid_argument("PolyGaussField: polynomial arity mismatch");
    if (q.empty()) return;
    auto it = comps_.find(b);
    if (it == comps_.end()) {
        comps_.emplace(b, q);
    } else {
        it->second += q;
        if (it->second.empty()) comps_.erase(it);
    }
}

double PolyGaussField::max_coeff() const {
    double m = 0.0;
    for (const auto& kv : comps_) m = std::max(m, kv.second.max_abs());
    return m * std::exp(gamma_.real());
}

int PolyGaussField::poly_degree() const {
    int d = -1;
    for (const auto& kv : comps_) d = std::max(d, kv.second.degree());
    return d;
}

void PolyGaussField::prune(double tol) {
    for (auto it = comps_.begin(); it != comps_.end();) {
        it->second.prune(tol);
        it = it->second.empty() ? comps_.erase(it) : std::next(it);
    }
}

bool PolyGaussField::same_shape(const PolyGaussField& o) const {
    if (o.n_ != n_) return false;
    if (std::abs(o.sigma_ - sigma_) > 1e-14 * sigma_) return false;
    for (int k = 0; k < n_; ++k)
        if (std::abs(o.beta_[k] - beta_[k]) > 1e-14 * (1.0 + std::abs(beta_[k]))) return false;
    return true;
}

PolyGaussField& PolyGaussField::operator+=(const PolyGaussField& o) {
    if (o.n_ != n_) throw std::invalid_argument("PolyGaussField: dimension mismatch");
    if (o.comps_.empty()) return *this;
    if (comps_.empty()) {
        const int keep = p_;
        *this = o;
        if (keep != o.p_ && !o.comps_.empty()) p_ = o.p_;
        return *this;
    }
    if (o.p_ != p_) throw std::invalid_argument("PolyGaussField: degree mismatch in sum");
    if (!same_shape(o)) throw std::invalid_argument("PolyGaussField: incompatible Gaussian envelopes");
    const cplx scale = std::exp(o.gamma_ - gamma_);
    for (const auto& [b, q] : o.comps_) add(b, scale * q);
    return *this;
}

PolyGaussField& PolyGaussField::operator-=(const PolyGaussField& o) {
    return *this += cplx(-1.0) * o;
}

PolyGaussField& PolyGaussField::operator*=(cplx s) {
    if (s == cplx{}) {
        comps_.clear();
        return *this;
    }
    for (auto& kv : comps_) kv.second *= s;
    return *this;
}

PolyGaussField operator+(PolyGaussField a, const PolyGaussField& b) { return a += b; }
PolyGaussField operator-(PolyGaussField a, const PolyGaussField& b) { return a -= b; }
PolyGaussField operator*(cplx s, PolyGaussField a) { return a *= s; }

Multivector PolyGaussField::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("eval: point dimension");
    Multivector out(n_, p_);
    if (comps_.empty()) return out;
    cplx phi = gamma_;
    double r2 = 0.0;
    for (int k = 0; k < n_; ++k) {
        r2 += x[k] * x[k];
        phi += beta_[k] * x[k];
    }
    const cplx env = std::exp(phi - 0.5 * sigma_ * r2);
    for (const auto& [b, q] : comps_) out.add(b, env * q.eval(x.data()));
    return out;
}

PolyGaussField::Evaluator::Evaluator(const PolyGaussField& f)
    : n_(f.n_), sigma_(f.sigma_), beta_(f.beta_), gamma_(f.gamma_) {
    const BladeIndex idx(f.n_, std::clamp(f.p_, 0, f.n_));
    nb_ = (f.p_ < 0 || f.p_ > f.n_) ? 0 : idx.size();
    for (const auto& [b, q] : f.comps_) {
        for (const auto& [m, c] : q.terms()) {
            terms_.push_back({idx[b.mask()], c, m.e});
            for (int k = 0; k < n_; ++k) {
                lo_ = std::min<int>(lo_, m.e[k]);
                hi_ = std::max<int>(hi_, m.e[k]);
            }
        }
    }
    if (hi_ - lo_ + 1 > 64) throw std::overflow_error("Evaluator: exponent span exceeds 64");
}

void PolyGaussField::Evaluator::operator()(const double* x, cplx* out) const {
    std::fill(out, out + nb_, cplx{});
    if (terms_.empty()) return;
    const int span = hi_ - lo_ + 1;
    double pw[kMaxVars * 64];
    cplx phi = gamma_;
    double r2 = 0.0;
    for (int k = 0; k < n_; ++k) {
        r2 += x[k] * x[k];
        phi += beta_[k] * x[k];
        double* row = pw + k * span;
        row[-lo_] = 1.0;
        for (int e = 1; e <= hi_; ++e) row[-lo_ + e] = row[-lo_ + e - 1] * x[k];
        for (int e = -1; e >= lo_; --e) row[-lo_ + e] = row[-lo_ + e + 1] / x[k];
    }
    for (const auto& t : terms_) {
        double v = 1.0;
        for (int k = 0; k < n_; ++k) v *= pw[k * span + t.e[k] - lo_];
        out[t.comp] += t.c * v;
    }
    const cplx env = std::exp(phi - 0.5 * sigma_ * r2);
    for (int i = 0; i < nb_; ++i) out[i] *= env;
}

PolyGaussField same_envelope(const PolyGaussField& like, int p) {
    PolyGaussField f(like.n_, p, like.sigma_);
    f.beta_ = like.beta_;
    f.gamma_ = like.gamma_;
    return f;
}

namespace {

// d/dx_j of q * exp(phi) expressed as a polynomial factor
Poly envelope_derivative(const Poly& q, int j, double sigma, cplx beta_j) {
    Poly r = q.derivative(j);
    r += (-sigma) * q.mul_var(j, 1);
    if (beta_j != cplx{}) r += beta_j * q;
    return r;
}

}  // namespace

PolyGaussField derivative(const PolyGaussField& u, int j) {
    if (j < 1 || j > u.dim()) throw std::invalid_argument("derivative: axis out of range");
    PolyGaussField out = same_envelope(u, u.degree());
    for (const auto& [b, q] : u.components())
        out.add(b, envelope_derivative(q, j, u.sigma(), u.beta()[j - 1]));
    return out;
}

PolyGaussField coordinate_mul(const PolyGaussField& u, int j) {
    if (j < 1 || j > u.dim()) throw std::invalid_argument("coordinate_mul: axis out of range");
    PolyGaussField out = same_envelope(u, u.degree());
    for (const auto& [b, q] : u.components()) out.add(b, q.mul_var(j, 1));
    return out;
}

PolyGaussField euler(const PolyGaussField& u) {
    PolyGaussField out = same_envelope(u, u.degree());
    for (int j = 1; j <= u.dim(); ++j) out += coordinate_mul(derivative(u, j), j);
    return out;
}

PolyGaussField apply_linear(const PolyGaussField& u, int q, const LinOp& op) {
    PolyGaussField out = same_envelope(u, q);
    for (const auto& [b, poly] : u.components()) {
        const Multivector img = op(Multivector::from_blade(u.dim(), b));
        if (img.coeffs().empty()) continue;
        if (img.degree() != q) throw std::invalid_argument("apply_linear: unexpected output degree");
        for (const auto& [c, v] : img.coeffs()) out.add(c, v * poly);
    }
    return out;
}

PolyGaussField fourier(const PolyGaussField& u) {
    const int n = u.dim();
    const double s = u.sigma();
    const double s2 = 1.0 / s;
    std::vector<cplx> b2(n);
    cplx bb = 0.0;
    for (int k = 0; k < n; ++k) {
        b2[k] = cplx(0.0, -1.0) * u.beta()[k] / s;
        bb += u.beta()[k] * u.beta()[k];
    }
    const cplx g2 = u.gamma() + bb / (2.0 * s) - 0.5 * n * std::log(s);
    PolyGaussField out(n, u.degree(), s2);
    out.set_envelope(s2, b2, g2);

    // x^alpha u -> (i d/dxi)^alpha u^, computed recursively with memoization
    std::map<Mono, Poly> memo;
    memo.emplace(Mono{}, Poly::constant(n, 1.0));
    std::function<const Poly&(const Mono&)> T = [&](const Mono& m) -> const Poly& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        int j = 0;
        while (m.e[j] == 0) ++j;
        Mono prev = m;
        prev.e[j] = static_cast<std::int8_t>(prev.e[j] - 1);
        const Poly& base = T(prev);
        Poly r = cplx(0.0, 1.0) * envelope_derivative(base, j + 1, s2, b2[j]);
        return memo.emplace(m, std::move(r)).first->second;
    };
    for (const auto& [b, q] : u.components()) {
        if (q.laurent()) throw std::invalid_argument("fourier: Laurent polynomial component");
        Poly acc(n);
        for (const auto& [m, c] : q.terms()) acc += c * T(m);
        out.add(b, acc);
    }
    return out;
}

PolyGaussField pullback_similarity(const PolyGaussField& u, const std::vector<double>& A,
                                   const std::vector<double>& b) {
    const int n = u.dim();
    if (static_cast<int>(A.size()) != n * n) throw std::invalid_argument("pullback: matrix size");
    // A^T A = c^2 I
    double c2 = 0.0;
    for (int i = 0; i < n; ++i) c2 += A[i * n] * A[i * n];
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += A[i * n + j] * A[i * n + k];
            const double want = j == k ? c2 : 0.0;
            if (std::abs(s - want) > 1e-12 * (1.0 + c2))
                throw std::invalid_argument("pullback: matrix is not a similarity");
        }
    std::vector<double> bb = b.empty() ? std::vector<double>(n, 0.0) : b;
    std::vector<cplx> beta2(n, 0.0);
    cplx g2 = u.gamma();
    double b2 = 0.0;
    for (int i = 0; i < n; ++i) {
        b2 += bb[i] * bb[i];
        g2 += u.beta()[i] * bb[i];
    }
    g2 -= 0.5 * u.sigma() * b2;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) beta2[j] += A[i * n + j] * (u.beta()[i] - u.sigma() * bb[i]);
    PolyGaussField out(n, u.degree(), u.sigma() * c2);
    out.set_envelope(u.sigma() * c2, beta2, g2);
    for (const auto& [bl, q] : u.components()) out.add(bl, q.affine(A, bb));
    return out;
}

PolyGaussField inverse_fourier(const PolyGaussField& u) {
    const int n = u.dim();
    std::vector<double> A(n * n, 0.0);
    for (int k = 0; k < n; ++k) A[k * n + k] = -1.0;
    return pullback_similarity(fourier(u), A, {});
}

PolyGaussField restrict_to_boundary(const PolyGaussField& u) {
    const int n = u.dim();
    if (n < 2) throw std::invalid_argument("restrict_to_boundary: need n >= 2");
    const int p = std::min(u.degree(), n);
    PolyGaussField out(n - 1, p, u.sigma());
    std::vector<cplx> beta(u.beta().begin(), u.beta().end() - 1);
    out.set_envelope(u.sigma(), beta, u.gamma());
    for (const auto& [b, q] : u.components()) {
        if (b.contains(n)) continue;
        out.add(b, q.drop_last_at_zero());
    }
    return out;
}

PolyGaussField random_polygauss(int n, int p, std::mt19937_64& rng, const RandomFieldOptions& opt) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> S(opt.sigma_min, opt.sigma_max);
    PolyGaussField f(n, p, S(rng));
    std::vector<cplx> beta(n, 0.0);
    if (opt.shift > 0.0)
        for (auto& b : beta) b = opt.shift * U(rng);
    f.set_envelope(f.sigma(), beta, 0.0);
    // all monomials of total degree <= max_degree
    std::vector<Mono> monos{Mono{}};
    for (int d = 1; d <= opt.max_degree; ++d) {
        std::vector<Mono> next;
        for (const Mono& m : monos) {
            if (m.total() != d - 1) continue;
            int last = 0;
            for (int k = 0; k < n; ++k)
                if (m.e[k]) last = k;
            for (int k = last; k < n; ++k) {
                Mono mm = m;
                ++mm.e[k];
                next.push_back(mm);
            }
        }
        monos.insert(monos.end(), next.begin(), next.end());
    }
    for (const Blade& b : basis_blades(n, p)) {
        Poly q(n);
        for (const Mono& m : monos) {
            const cplx c = opt.complex_coeffs ? cplx(U(rng), U(rng)) : cplx(U(rng));
            q.add_term(m, c);
        }
        f.add(b, q);
    }
    return f;
}

}  // namespace bgx
