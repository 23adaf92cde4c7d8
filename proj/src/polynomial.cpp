#include "bgx/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bgx {

int Mono::total() const {
    int s = 0;
    for (auto v : e) s += v;
    return s;
}

bool Mono::laurent() const {
    return std::any_of(e.begin(), e.end(), [](std::int8_t v) { return v < 0; });
}

Poly Poly::constant(int nvars, cplx c) {
    Poly p(nvars);
    p.add_term(Mono{}, c);
    return p;
}

Poly Poly::variable(int nvars, int j) {
    if (j < 1 || j > nvars) throw std::invalid_argument("Poly::variable: index out of range");
    Mono m;
    m.e[j - 1] = 1;
    return monomial(nvars, m, 1.0);
}

Poly Poly::monomial(int nvars, const Mono& m, cplx c) {
    Poly p(nvars);
    p.add_term(m, c);
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& kv : t_) d = std::max(d, kv.first.total());
    return d;
}

bool Poly::laurent() const {
    return std::any_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.first.laurent(); });
}

double Poly::max_abs() const {
    double m = 0.0;
    for (const auto& kv : t_) m = std::max(m, std::abs(kv.second));
    return m;
}

void Poly::add_term(const Mono& m, cplx c) {
    if (c == cplx{}) return;
    for (int k = n_; k < kMaxVars; ++k)
        if (m.e[k] != 0) throw std::invalid_argument("monomial uses a variable beyond nvars");
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == cplx{}) t_.erase(it);
    }
}

void Poly::prune(double tol) {
    std::erase_if(t_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.n_ != n_) throw std::invalid_argument("Poly: variable count mismatch");
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.n_ != n_) throw std::invalid_argument("Poly: variable count mismatch");
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(cplx s) {
    if (s == cplx{}) {
        t_.clear();
        return *this;
    }
    for (auto& kv : t_) kv.second *= s;
    return *this;
}

cplx Poly::eval(const double* x) const {
    cplx s = 0.0;
    for (const auto& [m, c] : t_) {
        double v = 1.0;
        for (int k = 0; k < n_; ++k)
            if (m.e[k] != 0) v *= std::pow(x[k], m.e[k]);
        s += c * v;
    }
    return s;
}

Poly Poly::derivative(int j) const {
    Poly out(n_);
    for (const auto& [m, c] : t_) {
        const int e = m.e[j - 1];
        if (e == 0) continue;
        Mono mm = m;
        mm.e[j - 1] = static_cast<std::int8_t>(e - 1);
        out.add_term(mm, c * double(e));
    }
    return out;
}

Poly Poly::mul_var(int j, int k) const {
    Poly out(n_);
    for (const auto& [m, c] : t_) {
        Mono mm = m;
        const int e = m.e[j - 1] + k;
        if (e > 127 || e < -127) throw std::overflow_error("Poly: exponent overflow");
        mm.e[j - 1] = static_cast<std::int8_t>(e);
        out.add_term(mm, c);
    }
    return out;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(cplx s, Poly a) { return a *= s; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("Poly: variable count mismatch");
    Poly out(a.nvars());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            Mono m;
            for (int k = 0; k < kMaxVars; ++k) m.e[k] = static_cast<std::int8_t>(ma.e[k] + mb.e[k]);
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Poly Poly::affine(const std::vector<double>& A, const std::vector<double>& b) const {
    if (laurent()) throw std::invalid_argument("Poly::affine: Laurent terms not supported");
    // linear forms l_k(x) = sum_j A_kj x_j + b_k, with cached powers
    std::vector<std::vector<Poly>> pw(n_);
    for (int k = 0; k < n_; ++k) {
        Poly l = Poly::constant(n_, b.empty() ? 0.0 : b[k]);
        for (int j = 0; j < n_; ++j)
            if (A[k * n_ + j] != 0.0) l += A[k * n_ + j] * Poly::variable(n_, j + 1);
        pw[k].push_back(Poly::constant(n_, 1.0));
        pw[k].push_back(l);
    }
    Poly out(n_);
    for (const auto& [m, c] : t_) {
        Poly term = Poly::constant(n_, c);
        for (int k = 0; k < n_; ++k) {
            const int e = m.e[k];
            while (static_cast<int>(pw[k].size()) <= e) pw[k].push_back(pw[k].back() * pw[k][1]);
            if (e > 0) term = term * pw[k][e];
        }
        out += term;
    }
    return out;
}

Poly Poly::drop_last_at_zero() const {
    Poly out(n_ - 1);
    for (const auto& [m, c] : t_) {
        if (m.e[n_ - 1] > 0) continue;
        if (m.e[n_ - 1] < 0) throw std::domain_error("Poly: negative power at restriction");
        out.add_term(m, c);
    }
    return out;
}

}  // namespace bgx
